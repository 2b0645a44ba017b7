#include "difftop/dy.hpp"

#include "difftop/curve.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

namespace difftop {

Q DySeries::at(int h, int n) const {
    auto it = c.find({h, n});
    return it == c.end() ? Q(0) : it->second;
}

namespace dy {
namespace {

Q fact(long n) { return Q(factorial(static_cast<unsigned>(n))); }
Q bin(long n, long k) { return Q(binom(n, k)); }
Q odd_pow(long base, long e) { return qpow(Q(base), e); }

void put(Cells& c, int h, int n, const Q& v) {
    if (v == 0) return;
    Q& slot = c[{h, n}];
    slot += v;
    if (slot == 0) c.erase({h, n});
}

Q cell(const Cells& c, int h, int n) {
    if (h < 0) return 0;
    auto it = c.find({h, n});
    return it == c.end() ? Q(0) : it->second;
}

// sum_{l <= i} (-1)^l (2i+1-2l)^e [binom(2i, l) - binom(2i, l-1)]
Q bracket_sum(int i, int e) {
    Q s = 0;
    for (int l = 0; l <= i; ++l) s += sign_pow(l) * odd_pow(2 * i + 1 - 2 * l, e) * (bin(2 * i, l) - bin(2 * i, l - 1));
    return s;
}

// sum_{l <= s} (-1)^l (2s+1-2l)^e binom(2s+1, l)
Q alt_sum(int s, int e) {
    Q r = 0;
    for (int l = 0; l <= s; ++l) r += sign_pow(l) * odd_pow(2 * s + 1 - 2 * l, e) * bin(2 * s + 1, l);
    return r;
}

std::string cell_name(int h, int n) { return "hbar^" + std::to_string(h) + " x^-" + std::to_string(n); }

}  // namespace

DyKind parse_kind(const std::string& s) {
    if (s == "alpha" || s == "α" || s == "a") return DyKind::alpha;
    if (s == "P" || s == "p") return DyKind::P;
    if (s == "Q" || s == "q") return DyKind::Q;
    throw std::invalid_argument("unknown series kind: " + s);
}

std::string kind_name(DyKind k) {
    switch (k) {
        case DyKind::alpha: return "alpha";
        case DyKind::P: return "P";
        default: return "Q";
    }
}

DySeries generate(DyKind kind, int K, int N) {
    DySeries r{kind, K, N, {}};
    for (int j = 0; 2 * j + 1 <= N; ++j) {
        Q inv4 = Q(1) / Q(Z(1) << (2 * j));
        for (int i = 0; i <= j; ++i) {
            int h = 2 * (j - i);
            switch (kind) {
                case DyKind::alpha:
                    if (h > K || 2 * j + 2 > N) break;
                    put(r.c, h, 2 * j + 2, inv4 / (fact(i) * fact(i + 1)) * alt_sum(i, 2 * j + 1));
                    break;
                case DyKind::P:
                    if (h > K) break;
                    put(r.c, h, 2 * j + 1, inv4 / (fact(i) * fact(i)) * bracket_sum(i, 2 * j));
                    break;
                case DyKind::Q:
                    if (h + 1 > K || 2 * j + 2 > N) break;
                    put(r.c, h + 1, 2 * j + 2,
                        Q(1, 2) * inv4 * Q(2 * i + 1) / (fact(i) * fact(i)) * bracket_sum(i, 2 * j));
                    break;
            }
        }
    }
    return r;
}

DySeries generate_rewritten(DyKind kind, int K, int N) {
    DySeries r{kind, K, N, {}};
    for (int m = 0; 2 * m <= K; ++m) {
        for (int s = 0; 2 * s + 2 * m + 1 <= N; ++s) {
            Q base = alt_sum(s, 2 * s + 2 * m + 1) / Q(Z(1) << (2 * (s + m)));
            switch (kind) {
                case DyKind::alpha:
                    if (2 * s + 2 * m + 2 <= N) put(r.c, 2 * m, 2 * s + 2 * m + 2, base / (fact(s) * fact(s + 1)));
                    break;
                case DyKind::P:
                    put(r.c, 2 * m, 2 * s + 2 * m + 1, base / (fact(s) * fact(s) * Q(2 * s + 1)));
                    break;
                case DyKind::Q:
                    if (2 * m + 1 <= K && 2 * s + 2 * m + 2 <= N)
                        put(r.c, 2 * m + 1, 2 * s + 2 * m + 2, Q(1, 2) * base / (fact(s) * fact(s)));
                    break;
            }
        }
    }
    return r;
}

std::vector<Mat2<std::vector<Q>>> assemble(int K, int N) {
    DySeries a = generate(DyKind::alpha, K, N), p = generate(DyKind::P, K, N), q = generate(DyKind::Q, K, N);
    std::vector<Mat2<std::vector<Q>>> out;
    for (int k = 0; k <= K; ++k) {
        Mat2<std::vector<Q>> m;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m(i, j).assign(N + 1, Q(0));
        if (k == 0) m(0, 0)[0] = 1;
        for (int n = 0; n <= N; ++n) {
            m(0, 0)[n] += a.at(k, n);
            m(0, 1)[n] = q.at(k, n) - p.at(k, n);
            m(1, 0)[n] = q.at(k, n) + p.at(k, n);
            m(1, 1)[n] = -a.at(k, n);
        }
        out.push_back(std::move(m));
    }
    return out;
}

Cells taylor_shift(const DySeries& f) {
    Cells out;
    for (const auto& [key, c] : f.c) {
        auto [h, n] = key;
        // d^j/dx^j x^-n = (-1)^j (n+j-1)!/(n-1)! x^-(n+j)
        for (int j = 0; h + j <= f.K && n + j <= f.N; ++j) put(out, h + j, n + j, c * sign_pow(j) * bin(n + j - 1, j));
    }
    return out;
}

Cells printed_shift(DyKind kind, int K, int N) {
    Cells out;
    auto term = [&](int h, int n, const Q& v) {
        if (h <= K && n <= N) put(out, h, n, v);
    };
    for (int p = 0; 2 * p <= K; ++p) {
        for (int s = 0; 2 * s + 2 * p + 1 <= N; ++s) {
            Q sf = fact(s);
            for (int l = 0; l <= s; ++l) {
                Q sg = sign_pow(l) * bin(2 * s + 1, l);
                long b = 2 * s + 1 - 2 * l;
                for (int m = 0; m <= p; ++m) {
                    Q w = sg * odd_pow(b, 2 * s + 1 + 2 * p - 2 * m) / Q(Z(1) << (2 * (s + p - m)));
                    switch (kind) {
                        case DyKind::alpha: {
                            Q d = sf * fact(s + 1);
                            term(2 * p, 2 * s + 2 * p + 2, w / d * bin(2 * s + 1 + 2 * p, 2 * m));
                            term(2 * p + 1, 2 * s + 2 * p + 3, -w / d * bin(2 * s + 2 + 2 * p, 2 * m + 1));
                            break;
                        }
                        case DyKind::P: {
                            Q d = sf * sf * Q(2 * s + 1);
                            term(2 * p, 2 * s + 2 * p + 1, w / d * bin(2 * s + 2 * p, 2 * m));
                            term(2 * p + 1, 2 * s + 2 * p + 2, -w / d * bin(2 * s + 1 + 2 * p, 2 * m + 1));
                            break;
                        }
                        case DyKind::Q: {
                            Q d = sf * sf;
                            term(2 * p + 1, 2 * s + 2 * p + 2, Q(1, 2) * w / d * bin(2 * s + 2 * p + 1, 2 * m));
                            if (m <= p - 1) {
                                Q w2 = sg * odd_pow(b, 2 * s - 1 + 2 * p - 2 * m) /
                                       Q(Z(1) << (2 * (s + p - m - 1)));
                                term(2 * p, 2 * s + 2 * p + 1, -Q(1, 2) * w2 / d * bin(2 * s + 2 * p, 2 * m + 1));
                            }
                            break;
                        }
                    }
                }
            }
        }
    }
    return out;
}

Report shift_check(int K, int N) {
    Report r;
    r.suite = "dy-shift";
    for (DyKind k : {DyKind::alpha, DyKind::P, DyKind::Q}) {
        std::string id = kind_name(k) + "(x+hbar)";
        Cells oracle = taylor_shift(generate(k, K, N));
        Cells printed = printed_shift(k, K, N);
        r.clause(id);
        for (int h = 0; h <= K; ++h)
            for (int n = 0; n <= N; ++n)
                if (cell(oracle, h, n) != cell(printed, h, n)) {
                    r.fail(id, cell_name(h, n) + ": oracle " + to_str(cell(oracle, h, n)) + ", printed " +
                                   to_str(cell(printed, h, n)));
                    h = K + 1;
                    break;
                }
    }
    return r;
}

Q coefficient_sum(int j) {
    Q s = 0;
    for (int l = 0; l <= j; ++l)
        s += sign_pow(l) * odd_pow(2 * j + 1 - 2 * l, 2 * j + 1) * fact(2 * j) / (fact(l) * fact(2 * j - l + 1));
    return s;
}

Q printed_identity_residual(int which, int s, int p) {
    auto dsum = [](int lmax, int mmax, const std::function<Q(int, int)>& f) {
        Q r = 0;
        for (int l = 0; l <= lmax; ++l)
            for (int m = 0; m <= mmax; ++m) r += f(l, m);
        return r;
    };
    auto p4 = [](int m) { return Q(Z(1) << (2 * m)); };
    auto b1 = [&](int l) { return Q(2 * s + 1 - 2 * l); };
    auto b0 = [&](int l) { return Q(2 * s - 1 - 2 * l); };
    Q S = alt_sum(s, 2 * s + 2 * p + 1);
    switch (which) {
        case 1: {
            Q lhs = dsum(s - 1, p, [&](int l, int m) -> Q {
                return sign_pow(l) * p4(m + 1) * qpow(b0(l), 2 * s + 2 * p - 2 * m - 1) * bin(2 * s - 1, l) *
                       bin(2 * s + 2 * p, 2 * m + 1);
            });
            return lhs - S / Q(2 * s + 1);
        }
        case 2: {
            Q lhs = dsum(s, p, [&](int l, int m) -> Q {
                return sign_pow(l) * p4(m) * qpow(b1(l), 2 * s + 1 + 2 * p - 2 * m) * bin(2 * s + 1, l) *
                       bin(2 * s + 1 + 2 * p, 2 * m);
            });
            Q rhs = 0;
            for (int l = 0; l <= s + 1; ++l) {
                Q b = Q(2 * s + 3 - 2 * l);
                rhs += sign_pow(l) * qpow(b, 2 * s + 2 * p + 1) / Q(4 * (s + 1)) * (b * b / Q(2 * s + 3) - 1) *
                       bin(2 * s + 3, l);
            }
            return lhs - (rhs - S);
        }
        case 3: {
            Q rhs = -2 * dsum(s, p - 1, [&](int l, int m) -> Q {
                        return sign_pow(l) * p4(m) * qpow(b1(l), 2 * s - 1 + 2 * p - 2 * m) * Q(2 * s + 1) *
                               bin(2 * s + 1, l) * bin(2 * s + 2 * p, 2 * m + 1);
                    }) +
                    dsum(s, p, [&](int l, int m) -> Q {
                        return sign_pow(l) * p4(m) * qpow(b1(l), 2 * s + 1 + 2 * p - 2 * m) * bin(2 * s + 1, l) *
                               bin(2 * s + 2 * p, 2 * m);
                    });
            return S - rhs;
        }
        case 4: {
            Q rhs = -dsum(s, p, [&](int l, int m) -> Q {
                        return sign_pow(l) * p4(m) * qpow(b1(l), 2 * s + 1 + 2 * p - 2 * m) * bin(2 * s + 1, l) *
                               bin(2 * s + 2 * p + 1, 2 * m);
                    }) +
                    2 * dsum(s, p, [&](int l, int m) -> Q {
                        return sign_pow(l) * p4(m) * qpow(b1(l), 2 * s - 1 + 2 * p - 2 * m) / Q(2 * s + 1) *
                               bin(2 * s + 1, l) * bin(2 * s + 2 * p + 1, 2 * m + 1);
                    });
            return S - rhs;
        }
        case 5: {
            Q lhs = 0;
            for (int l = 0; l <= s - 1; ++l)
                lhs += Q(4 * s) * sign_pow(l) * qpow(b0(l), 2 * s + 2 * p - 1) * bin(2 * s - 1, l);
            Q rhs = -2 * dsum(s, p - 1, [&](int l, int m) -> Q {
                        return sign_pow(l) * p4(m) * qpow(b1(l), 2 * s - 1 + 2 * p - 2 * m) * bin(2 * s + 1, l) *
                               bin(2 * s + 2 * p, 2 * m + 1);
                    }) +
                    dsum(s, p, [&](int l, int m) -> Q {
                        return sign_pow(l) * p4(m) * qpow(b1(l), 2 * s + 1 + 2 * p - 2 * m) / Q(2 * s + 1) *
                               bin(2 * s + 1, l) * bin(2 * s + 2 * p, 2 * m);
                    }) +
                    dsum(s, p - 1, [&](int l, int m) -> Q {
                        return sign_pow(l) * p4(m) * qpow(b1(l), 2 * s - 1 + 2 * p + 2 * m) * bin(2 * s + 1, l) *
                               bin(2 * s + 2 * p - 1, 2 * m);
                    }) -
                    2 * dsum(s, p - 1, [&](int l, int m) -> Q {
                        return sign_pow(l) * p4(m) * qpow(b1(l), 2 * s - 1 + 2 * p + 2 * m) / Q(2 * s + 1) *
                               bin(2 * s + 1, l) * bin(2 * s + 2 * p - 1, 2 * m + 1);
                    }) -
                    Q(4 * s) * dsum(s - 1, p, [&](int l, int m) -> Q {
                        return sign_pow(l) * p4(m) * qpow(b0(l), 2 * s + 2 * p - 2 * m - 1) * bin(2 * s - 1, l) *
                               bin(2 * s + 2 * p - 1, 2 * m);
                    });
            return lhs - rhs;
        }
        case 6: {
            return Q(1, 2) * dsum(s, p, [&](int l, int m) -> Q {
                       return sign_pow(l) * p4(m) * qpow(b1(l), 2 * s + 1 + 2 * p - 2 * m) * bin(2 * s + 1, l) *
                              bin(2 * s + 2 * p + 1, 2 * m);
                   }) -
                   dsum(s, p, [&](int l, int m) -> Q {
                       return sign_pow(l) * p4(m) * qpow(b1(l), 2 * s + 1 + 2 * p - 2 * m) / Q(2 * s + 1) *
                              bin(2 * s + 1, l) * bin(2 * s + 1 + 2 * p, 2 * m + 1);
                   }) -
                   dsum(s, p - 1, [&](int l, int m) -> Q {
                       return sign_pow(l) * p4(m) * qpow(b1(l), 2 * s - 1 + 2 * p - 2 * m) * bin(2 * s + 1, l) *
                              bin(2 * s + 2 * p, 2 * m + 1);
                   }) +
                   Q(1, 2) * dsum(s, p, [&](int l, int m) -> Q {
                       return sign_pow(l) * p4(m) * qpow(b1(l), 2 * s + 1 + 2 * p - 2 * m) / Q(2 * s + 1) *
                              bin(2 * s + 1, l) * bin(2 * s + 2 * p, 2 * m);
                   }) +
                   Q(4 * s) * dsum(s - 1, p, [&](int l, int m) -> Q {
                       return sign_pow(l) * p4(m) * qpow(b0(l), 2 * s - 1 + 2 * p - 2 * m) * bin(2 * s - 1, l) *
                              bin(2 * s + 2 * p, 2 * m + 1);
                   });
        }
        default: throw std::invalid_argument("identity index must be 1..6");
    }
}

Report reduced_system(int smax, int pmax, bool corrected) {
    Report r;
    r.suite = corrected ? "dy-reduced-system" : "dy-reduced-system-printed";
    int K = 2 * pmax + 1;
    int N = 2 * smax + 2 * pmax + 4;
    DySeries a = generate(DyKind::alpha, K, N), P = generate(DyKind::P, K, N), Qs = generate(DyKind::Q, K, N);
    Cells as = taylor_shift(a), ps = taylor_shift(P), qs = taylor_shift(Qs);
    auto A = [&](int h, int n) { return cell(a.c, h, n); };
    auto Pc = [&](int h, int n) { return cell(P.c, h, n); };
    auto Qc = [&](int h, int n) { return cell(Qs.c, h, n); };
    auto As = [&](int h, int n) { return cell(as, h, n); };
    auto Ps = [&](int h, int n) { return cell(ps, h, n); };
    auto Qss = [&](int h, int n) { return cell(qs, h, n); };
    // x f has coefficient f(n + 1) at x^-n
    for (int p = 0; p <= pmax; ++p) {
        int e = 2 * p, o = 2 * p + 1;
        for (int n = 0; n < N; ++n) {
            Q one = (corrected && p == 0 && n == 0) ? Q(1) : Q(0);
            std::string at = "p=" + std::to_string(p) + " x^-" + std::to_string(n);
            Q r1 = As(o, n) - (-Qc(corrected ? o : e, n + 1) + Q(1, 2) * Pc(e, n));
            Q r2 = As(e, n) - (-Q(1, 2) * Qc(e - 1, n) + Pc(e, n + 1) - A(e, n) - one);
            Q r3 = Pc(e, n) - (Qss(e, n) + Ps(e, n));
            Q r4 = -Qc(o, n) - (Qss(o, n) + Ps(o, n));
            Q r5 = A(e, n) + one -
                   (Qss(e, n + 1) + Ps(e, n + 1) + Q(1, 2) * Qss(e - 1, n) + Q(1, 2) * Ps(e - 1, n) - As(e, n));
            Q r6 = A(o, n) -
                   (Qss(o, n + 1) + Ps(o, n + 1) + Q(1, 2) * Qss(e, n) + Q(1, 2) * Ps(e, n) - As(o, n));
            const Q* rs[] = {&r1, &r2, &r3, &r4, &r5, &r6};
            for (int i = 0; i < 6; ++i) r.check("relation-" + std::to_string(i + 1), *rs[i] == 0, at);
        }
    }
    return r;
}

Report identity_battery(int smax, int pmax) {
    Report r;
    r.suite = "dy-identities";
    r.merge(reduced_system(smax, pmax, true));
    // P0 = 1/sqrt(x^2 - 4): coefficient sum = 4^j (2j)!
    for (int j = 0; j <= 30; ++j) {
        Q lhs = coefficient_sum(j);
        Q pw = Q(Z(1) << (2 * j));
        r.check("coefficient-identity", lhs == pw * fact(2 * j), "j=" + std::to_string(j));
    }
    DySeries p0 = generate(DyKind::P, 0, 61), a0 = generate(DyKind::alpha, 0, 61);
    for (int k = 0; 2 * k + 1 <= 61; ++k)
        r.check("P0-expansion", p0.at(0, 2 * k + 1) == fact(2 * k) / (fact(k) * fact(k)), "k=" + std::to_string(k));
    // alpha0 = (x P0 - 1)/2
    for (int n = 1; n <= 60; ++n)
        r.check("alpha0=(xP0-1)/2", a0.at(0, n) == Q(1, 2) * p0.at(0, n + 1), "x^-" + std::to_string(n));
    for (DyKind k : {DyKind::alpha, DyKind::P, DyKind::Q}) {
        DySeries g = generate(k, 8, 24), w = generate_rewritten(k, 8, 24);
        r.check("rewriting-" + kind_name(k), g.c == w.c, "hbar<=8, x^-24");
    }
    return r;
}

Report printed_finite_sums(int smax, int pmax) {
    Report r;
    r.suite = "dy-finite-sums-printed";
    for (int w = 1; w <= 6; ++w)
        for (int s = 0; s <= smax; ++s)
            for (int p = 0; p <= pmax; ++p)
                r.check("identity-" + std::to_string(w), printed_identity_residual(w, s, p) == 0,
                        "s=" + std::to_string(s) + " p=" + std::to_string(p));
    return r;
}

Report compare(const MTower& m, int Kmax, int N) {
    Report r;
    r.suite = "dy-compare";
    auto tilde = assemble(Kmax, N);
    const char* names[2][2] = {{"11", "12"}, {"21", "22"}};
    for (int k = 0; k <= Kmax && k < static_cast<int>(m.M.size()); ++k) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Laurent s = curve::expand_at_infinity(m.M[k](i, j), N);
                bool ok = true;
                std::string where;
                if (s.valuation() < 0 && !s.is_zero()) {
                    ok = false;
                    where = "k=" + std::to_string(k) + " entry " + names[i][j] + " grows at infinity";
                }
                for (int n = 0; ok && n <= N; ++n)
                    if (s.coeff(n) != tilde[k](i, j)[n]) {
                        ok = false;
                        where = "k=" + std::to_string(k) + " entry " + names[i][j] + " x^-" + std::to_string(n) +
                                ": M " + to_str(s.coeff(n)) + ", DY " + to_str(tilde[k](i, j)[n]);
                    }
                r.check("M_k = M~_k", ok, where);
            }
    }
    if (static_cast<int>(m.M.size()) <= Kmax) r.fail("M_k = M~_k", "tower shorter than requested order");
    return r;
}

std::string to_csv(const DySeries& s) {
    std::ostringstream o;
    o << "hbar";
    for (int n = 0; n <= s.N; ++n) o << ",x^-" << n;
    o << "\n";
    for (int h = 0; h <= s.K; ++h) {
        o << h;
        for (int n = 0; n <= s.N; ++n) o << "," << to_str(s.at(h, n));
        o << "\n";
    }
    return o.str();
}

}  // namespace dy
}  // namespace difftop
