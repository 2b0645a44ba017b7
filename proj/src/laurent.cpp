#include "difftop/laurent.hpp"

#include <algorithm>

namespace difftop {

Laurent::Laurent(int val, int prec, std::vector<Q> c, Point p)
    : val_(val), prec_(prec), c_(std::move(c)), pt_(p) {
    if (prec_ < val_) val_ = prec_;
    c_.resize(prec_ - val_);
}

Laurent Laurent::zero(int prec, Point p) { return Laurent(prec, prec, {}, p); }

Laurent Laurent::monomial(const Q& c, int power, int prec, Point p) {
    if (power >= prec) return zero(prec, p);
    std::vector<Q> cs(prec - power);
    cs[0] = c;
    return Laurent(power, prec, std::move(cs), p);
}

Laurent Laurent::from_poly(const Poly& p, int prec, Point pt) {
    std::vector<Q> cs(std::max(prec, 0));
    for (int i = 0; i < prec; ++i) cs[i] = p.coeff(i);
    return Laurent(0, prec, std::move(cs), pt);
}

Laurent Laurent::log1p(const Q& s, int prec) {
    std::vector<Q> cs(std::max(prec, 0));
    Q sp = 1;
    for (int i = 1; i < prec; ++i) {
        sp *= s;
        cs[i] = (i % 2 ? sp : -sp) / i;
    }
    return Laurent(0, prec, std::move(cs));
}

Laurent Laurent::geometric(const Q& s, int prec) {
    std::vector<Q> cs(std::max(prec, 0));
    Q sp = 1;
    for (int i = 0; i < prec; ++i) {
        cs[i] = sp;
        sp *= s;
    }
    return Laurent(0, prec, std::move(cs));
}

Q Laurent::coeff(int i) const {
    if (i >= prec_)
        throw TruncationError("coefficient t^" + std::to_string(i) + " beyond precision " +
                              std::to_string(prec_));
    if (i < val_) return 0;
    return c_[i - val_];
}

bool Laurent::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Q& q) { return q == 0; });
}

int Laurent::valuation() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return val_ + static_cast<int>(i);
    return prec_;
}

Laurent Laurent::normalized() const {
    int v = valuation();
    if (v == val_) return *this;
    return Laurent(v, prec_, std::vector<Q>(c_.begin() + (v - val_), c_.end()), pt_);
}

Laurent Laurent::truncated(int prec) const {
    if (prec >= prec_) return *this;
    if (prec <= val_) return zero(prec, pt_);
    return Laurent(val_, prec, std::vector<Q>(c_.begin(), c_.begin() + (prec - val_)), pt_);
}

Laurent Laurent::operator-() const {
    Laurent r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
}

Laurent operator+(const Laurent& a, const Laurent& b) {
    int v = std::min(a.val_, b.val_), p = std::min(a.prec_, b.prec_);
    if (p <= v) return Laurent::zero(p, a.pt_);
    std::vector<Q> cs(p - v);
    for (int i = a.val_; i < std::min(a.prec_, p); ++i) cs[i - v] += a.c_[i - a.val_];
    for (int i = b.val_; i < std::min(b.prec_, p); ++i) cs[i - v] += b.c_[i - b.val_];
    return Laurent(v, p, std::move(cs), a.pt_);
}

Laurent operator*(const Laurent& a0, const Laurent& b0) {
    Laurent a = a0.normalized(), b = b0.normalized();
    int p = std::min(a.prec_ + b.val_, b.prec_ + a.val_);
    int v = a.val_ + b.val_;
    if (p <= v) return Laurent::zero(p, a.pt_);
    std::vector<Q> cs(p - v);
    const int n = p - v;
    for (int i = 0; i < n && i < static_cast<int>(a.c_.size()); ++i) {
        if (a.c_[i] == 0) continue;
        for (int j = 0; i + j < n && j < static_cast<int>(b.c_.size()); ++j)
            cs[i + j] += a.c_[i] * b.c_[j];
    }
    return Laurent(v, p, std::move(cs), a.pt_);
}

Laurent operator*(const Laurent& a, const Q& s) {
    Laurent r = a;
    for (auto& q : r.c_) q *= s;
    return r;
}

Laurent Laurent::inverse() const {
    Laurent a = normalized();
    if (a.val_ >= a.prec_) throw TruncationError("inverse of a series with no known nonzero term");
    const int n = a.prec_ - a.val_;
    std::vector<Q> r(n);
    Q inv0 = 1 / a.c_[0];
    r[0] = inv0;
    for (int k = 1; k < n; ++k) {
        Q s = 0;
        for (int j = 1; j <= k; ++j)
            if (a.c_[j] != 0) s += a.c_[j] * r[k - j];
        r[k] = -s * inv0;
    }
    return Laurent(-a.val_, -a.val_ + n, std::move(r), pt_);
}

Laurent Laurent::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    Laurent a = normalized();
    if (e == 0) return monomial(1, 0, a.prec_ - a.val_, pt_);
    Laurent r = a, b = a;
    --e;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

Laurent Laurent::derivative() const {
    std::vector<Q> cs(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) cs[i] = c_[i] * (val_ + static_cast<int>(i));
    Laurent r(val_ - 1, prec_ - 1, std::move(cs), pt_);
    return r;
}

Laurent Laurent::shifted(int k) const {
    Laurent r = *this;
    r.val_ += k;
    r.prec_ += k;
    return r;
}

std::string Laurent::str() const {
    std::string s;
    for (int i = val_; i < prec_; ++i) {
        const Q& q = c_[i - val_];
        if (q == 0) continue;
        if (!s.empty()) s += q > 0 ? " + " : " - ";
        else if (q < 0) s += "-";
        s += to_str(abs(q));
        if (i != 0) s += "*t^" + std::to_string(i);
    }
    if (s.empty()) s = "0";
    return s + " + O(t^" + std::to_string(prec_) + ")";
}

namespace {

// n/d as a power series through t^(n_terms - 1), d(0) != 0
std::vector<Q> series_div(const Poly& n, const Poly& d, int n_terms) {
    std::vector<Q> r(std::max(n_terms, 0));
    Q inv0 = 1 / d.coeff(0);
    const int dd = d.deg();
    for (int k = 0; k < n_terms; ++k) {
        Q s = n.coeff(k);
        for (int j = 1; j <= std::min(k, dd); ++j) s -= d.coeff(j) * r[k - j];
        r[k] = s * inv0;
    }
    return r;
}

}  // namespace

Laurent laurent_expand(const RatFunc& f, const Point& p, int order) {
    const int prec = order + 1;
    if (f.is_zero()) return Laurent::zero(prec, p);
    if (p.infinite) {
        // f(1/u) = u^(dd - dn) rev(num)(u)/rev(den)(u)
        int dn = f.num().deg(), dd = f.den().deg();
        Poly rn = f.num().reversed(dn), rd = f.den().reversed(dd);
        int v = dd - dn;
        return Laurent(v, prec, series_div(rn, rd, prec - v), p);
    }
    Poly n = f.num().taylor_shift(p.a), d = f.den().taylor_shift(p.a);
    auto [m, d1] = d.strip_root(0);
    int v = -m;
    return Laurent(v, prec, series_div(n, d1, prec - v), p);
}

Laurent rf_at_series(const RatFunc& f, const Laurent& s) {
    auto horner = [&](const Poly& q) {
        if (q.deg() == 0) return Laurent::monomial(q.coeff(0), 0, s.prec() - std::min(s.valuation(), 0), s.point());
        Laurent r = s * q.lead();
        for (int i = q.deg() - 1; i >= 0; --i) {
            r = r + Laurent::monomial(q.coeff(i), 0, r.prec(), s.point());
            if (i > 0) r = r * s;
        }
        return r;
    };
    if (f.is_zero()) return Laurent::zero(s.prec(), s.point());
    Laurent n = horner(f.num());
    if (f.den().deg() == 0) return n;
    return n / horner(f.den());
}

}  // namespace difftop
