#pragma once

#include <array>

namespace difftop {

template <class T>
struct Mat2 {
    std::array<std::array<T, 2>, 2> e{};

    Mat2() = default;
    Mat2(T a, T b, T c, T d) : e{{{std::move(a), std::move(b)}, {std::move(c), std::move(d)}}} {}
    static Mat2 identity() { return Mat2(T(1), T(0), T(0), T(1)); }
    static Mat2 zero() { return Mat2(T(0), T(0), T(0), T(0)); }

    T& operator()(int i, int j) { return e[i][j]; }
    const T& operator()(int i, int j) const { return e[i][j]; }

    friend Mat2 operator+(const Mat2& a, const Mat2& b) {
        return Mat2(a(0, 0) + b(0, 0), a(0, 1) + b(0, 1), a(1, 0) + b(1, 0), a(1, 1) + b(1, 1));
    }
    friend Mat2 operator-(const Mat2& a, const Mat2& b) {
        return Mat2(a(0, 0) - b(0, 0), a(0, 1) - b(0, 1), a(1, 0) - b(1, 0), a(1, 1) - b(1, 1));
    }
    Mat2 operator-() const { return Mat2(-e[0][0], -e[0][1], -e[1][0], -e[1][1]); }
    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return Mat2(a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
                    a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1));
    }
    template <class S>
    Mat2 scaled(const S& s) const {
        return Mat2(e[0][0] * s, e[0][1] * s, e[1][0] * s, e[1][1] * s);
    }
    Mat2& operator+=(const Mat2& o) { return *this = *this + o; }
    Mat2& operator-=(const Mat2& o) { return *this = *this - o; }
    friend bool operator==(const Mat2& a, const Mat2& b) { return a.e == b.e; }
    friend bool operator!=(const Mat2& a, const Mat2& b) { return !(a == b); }

    T trace() const { return e[0][0] + e[1][1]; }
    T det() const { return e[0][0] * e[1][1] - e[0][1] * e[1][0]; }
    Mat2 transpose() const { return Mat2(e[0][0], e[1][0], e[0][1], e[1][1]); }

    template <class F>
    auto map(F f) const -> Mat2<decltype(f(e[0][0]))> {
        return {f(e[0][0]), f(e[0][1]), f(e[1][0]), f(e[1][1])};
    }
};

}  // namespace difftop
