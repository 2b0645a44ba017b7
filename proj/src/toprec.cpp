#include "difftop/toprec.hpp"

#include "difftop/curve.hpp"
#include "difftop/laurent.hpp"

#include "json.hpp"

#include <mutex>
#include <stdexcept>
#include <tuple>

namespace difftop {

namespace {

unsigned slot_byte(const Slot& s) { return (static_cast<unsigned>(s.k) << 1) | (s.a == -1 ? 1u : 0u); }
BasisKey placed(unsigned byte, int pos) { return static_cast<BasisKey>(byte) << (8 * pos); }

}  // namespace

BasisKey pack(const std::vector<Slot>& slots) {
    if (slots.size() > 8) throw std::invalid_argument("pack: at most 8 slots");
    BasisKey k = 0;
    for (size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].k < 0 || slots[i].k > 127) throw std::invalid_argument("pack: pole order out of range");
        k |= placed(slot_byte(slots[i]), static_cast<int>(i));
    }
    return k;
}

std::vector<Slot> unpack(BasisKey key, int n) {
    std::vector<Slot> s(n);
    for (int i = 0; i < n; ++i) s[i] = slot_of(key, i);
    return s;
}

void PoleBasisForm::add(BasisKey k, const Q& c) {
    if (c == 0) return;
    auto [it, fresh] = coeffs.try_emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) coeffs.erase(it);
    }
}

Q PoleBasisForm::eval(const std::vector<Q>& zs) const {
    if (static_cast<int>(zs.size()) != n) throw std::invalid_argument("PoleBasisForm::eval: arity");
    // cache 1/(z_i - a)^k
    std::map<std::tuple<int, int, int>, Q> pw;
    auto factor = [&](int i, const Slot& s) -> Q {
        if (s.k == 0) return 1;
        auto key = std::make_tuple(i, s.a, s.k);
        auto it = pw.find(key);
        if (it != pw.end()) return it->second;
        Q v = qpow(zs[i] - s.a, -s.k);
        pw.emplace(key, v);
        return v;
    };
    Q r = 0;
    for (const auto& [key, c] : coeffs) {
        Q t = c;
        for (int i = 0; i < n; ++i) t *= factor(i, slot_of(key, i));
        r += t;
    }
    return r;
}

namespace {

// sum over (a, k) of c/(z - a)^k (k = 0 means a constant) as one rational function
RatFunc sum_poles(const std::map<std::pair<int, int>, Q>& terms) {
    int kp = 0, km = 0;
    for (const auto& [ak, c] : terms) {
        if (ak.first == 1) kp = std::max(kp, ak.second);
        else km = std::max(km, ak.second);
    }
    Poly zp({-1, 1}), zm({1, 1});
    Poly num;
    for (const auto& [ak, c] : terms) {
        auto [a, k] = ak;
        Poly t = Poly::constant(c);
        if (a == 1) t = t * zp.pow(kp - k) * zm.pow(km);
        else t = t * zm.pow(km - k) * zp.pow(kp);
        num += t;
    }
    return RatFunc(num, zp.pow(kp) * zm.pow(km));
}

}  // namespace

RatFunc PoleBasisForm::as_ratfunc() const {
    if (n != 1) throw std::invalid_argument("as_ratfunc: arity must be 1");
    std::map<std::pair<int, int>, Q> terms;
    for (const auto& [key, c] : coeffs) {
        Slot s = slot_of(key, 0);
        terms[{s.k == 0 ? 1 : s.a, s.k}] += c;
    }
    return sum_poles(terms);
}

RatFunc PoleBasisForm::partial(int i, const std::vector<Q>& zs) const {
    std::map<std::pair<int, int>, Q> terms;
    for (const auto& [key, c] : coeffs) {
        Q t = c;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            Slot s = slot_of(key, j);
            if (s.k) t *= qpow(zs[j] - s.a, -s.k);
        }
        Slot s = slot_of(key, i);
        terms[{s.k == 0 ? 1 : s.a, s.k}] += t;
    }
    return sum_poles(terms);
}

PoleBasisForm PoleBasisForm::permuted(const std::vector<int>& perm) const {
    PoleBasisForm r;
    r.n = n;
    for (const auto& [key, c] : coeffs) {
        BasisKey k = 0;
        for (int i = 0; i < n; ++i) k |= placed(slot_byte(slot_of(key, perm[i])), i);
        r.add(k, c);
    }
    return r;
}

int PoleBasisForm::max_k() const {
    int m = 0;
    for (const auto& [key, c] : coeffs)
        for (int i = 0; i < n; ++i) m = std::max(m, slot_of(key, i).k);
    return m;
}

std::string PoleBasisForm::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [key, c] : coeffs) {
        nlohmann::json vars = nlohmann::json::array();
        for (int i = 0; i < n; ++i) {
            Slot s = slot_of(key, i);
            vars.push_back({{"bp", s.a == 1 ? "+1" : "-1"}, {"k", s.k}});
        }
        arr.push_back({{"vars", vars}, {"coeff", to_str(c)}});
    }
    return arr.dump();
}

namespace toprec {

namespace {

// Local density codes at a branchpoint: > 0 is a pole slot byte, < 0 is -(m+1) for t^m
int pow_code(int m) { return -(m + 1); }

class Engine {
public:
    static Engine& get() {
        static Engine e;
        return e;
    }

    // Res_t K_m d1(t) d2(t) for m = 0.. (index m; entry 0 unused)
    const std::vector<Q>& table(int a, int c1, int c2) {
        auto key = std::make_tuple(a, c1, c2);
        {
            std::lock_guard<std::mutex> lk(mu_);
            auto it = r_.find(key);
            if (it != r_.end()) return it->second;
        }
        std::vector<Q> v = compute(a, c1, c2);
        std::lock_guard<std::mutex> lk(mu_);
        return r_.try_emplace(key, std::move(v)).first->second;
    }

    // residues against the omega_2^(0)(z, zbar) density
    const std::vector<Q>& diag_table(int a) {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = diag_.find(a);
        if (it != diag_.end()) return it->second;
        // dz dzbar/(z - zbar)^2 = -1/(t^2 (2 + a t)^2) dt^2
        Laurent d = laurent_expand(RatFunc(Poly::constant(-1, Var::t),
                                           Poly(std::vector<Q>{0, 0, 4, Q(4 * a), 1}, Var::t)),
                                   Point::at(0), 1);
        std::vector<Q> v = residues_locked(a, d);
        return diag_.emplace(a, std::move(v)).first->second;
    }

    std::mutex memo_mu;
    std::map<std::pair<int, int>, std::shared_ptr<const PoleBasisForm>> memo;

private:
    static int val_bound(int a, int code) {
        if (code < 0) return -code - 1;
        Slot s = slot_of(code, 0);
        return s.a == a ? -s.k : 0;
    }

    static Laurent tbar(int a, int prec) {
        return (Laurent::monomial(-1, 1, prec) * Laurent::geometric(Q(-a), prec)).truncated(prec);
    }

    static Laurent dens_z(int a, int code, int prec) {
        if (code < 0) return Laurent::monomial(1, -code - 1, prec);
        Slot s = slot_of(code, 0);
        Poly lin({Q(-s.a), 1});
        Laurent r = laurent_expand(RatFunc(Poly::constant(1), lin.pow(s.k)), Point::at(a), prec - 1);
        return r;
    }

    static Laurent dens_zbar(int a, int code, int prec) {
        // dtbar/dt = -1/(1 + a t)^2
        Laurent dtb = Laurent::geometric(Q(-a), prec + 2).pow(2) * Q(-1);
        if (code < 0) {
            int m = -code - 1;
            return (tbar(a, prec + 2).pow(m) * dtb).truncated(prec);
        }
        Slot s = slot_of(code, 0);
        // -(-a')^k z^(k-2)/(z - a')^k
        Poly lin({Q(-s.a), 1});
        Q c = -sign_pow(s.k) * qpow(Q(s.a), s.k);
        RatFunc f(Poly::monomial(c, s.k - 2), lin.pow(s.k));
        return laurent_expand(f, Point::at(a), prec - 1);
    }

    // K_m = (1/2)(tbar^m - t^m)/(ydiff x'(t)), exact through t^(prec-1)
    const Laurent& kernel_locked(int a, int m, int prec) {
        auto& ks = kern_[a];
        if (kprec_[a] < prec || static_cast<int>(ks.size()) <= m) {
            int p = std::max({prec, kprec_[a], 8}) + 4;
            int mm = std::max<int>(m + 4, static_cast<int>(ks.size()));
            Laurent yd = curve::ydiff_local(a, p + 4);
            Laurent xp = laurent_expand(curve::dx_dz(), Point::at(a), p + 4);
            Laurent inv = (yd * xp).inverse();
            Laurent tb = tbar(a, p + mm + 4);
            ks.assign(mm + 1, Laurent());
            Laurent tbm = Laurent::monomial(1, 0, p + mm + 4);
            for (int j = 1; j <= mm; ++j) {
                tbm = (tbm * tb).truncated(p + mm + 4);
                Laurent diff = tbm - Laurent::monomial(1, j, tbm.prec());
                ks[j] = (diff * inv * Q(1, 2)).truncated(p);
            }
            kprec_[a] = p;
        }
        return ks[m];
    }

    std::vector<Q> residues_locked(int a, const Laurent& p12) {
        // p12 known through t^0 at least
        int v = p12.valuation();
        std::vector<Q> out;
        if (v > 0) return out;
        int top = -1 - v;  // highest K index needed
        int mmax = 1 - v;
        out.assign(mmax + 1, Q(0));
        for (int m = 1; m <= mmax; ++m) {
            const Laurent& k = kernel_locked(a, m, top + 1);
            Q s = 0;
            for (int i = m - 2; i <= top; ++i) {
                Q kc = k.coeff(i);
                if (kc == 0) continue;
                s += kc * p12.coeff(-1 - i);
            }
            out[m] = s;
        }
        return out;
    }

    std::vector<Q> compute(int a, int c1, int c2) {
        int v1 = val_bound(a, c1), v2 = val_bound(a, c2);
        Laurent d1 = dens_z(a, c1, std::max(1 - v2, v1 + 1));
        Laurent d2 = dens_zbar(a, c2, std::max(1 - v1, v2 + 1));
        Laurent p12 = d1 * d2;
        if (p12.prec() < 1) throw TruncationError("recursion integrand truncated below t^0");
        std::lock_guard<std::mutex> lk(mu_);
        return residues_locked(a, p12);
    }

    std::mutex mu_;
    std::map<std::tuple<int, int, int>, std::vector<Q>> r_;
    std::map<int, std::vector<Q>> diag_;
    std::map<int, std::vector<Laurent>> kern_;
    std::map<int, int> kprec_;
};

struct Entry {
    BasisKey bits;
    Q c;
};
using Group = std::map<int, std::vector<Entry>>;

// first slot code -> spectator entries placed at target positions
Group group_first(const PoleBasisForm& w, const std::vector<int>& targets) {
    Group g;
    for (const auto& [key, c] : w.coeffs) {
        int code = static_cast<int>(key & 0xff);
        BasisKey bits = 0;
        for (int i = 1; i < w.n; ++i) bits |= placed((key >> (8 * i)) & 0xff, targets[i - 1]);
        g[code].push_back({bits, c});
    }
    return g;
}

// omega_2^(0)(z, z_j) near a: sum (m+1) t^m dz_j/(z_j - a)^(m+2)
Group group_bergman(int a, int target, int mmax) {
    Group g;
    for (int m = 0; m <= mmax; ++m)
        g[pow_code(m)].push_back({placed(slot_byte(Slot{a, m + 2}), target), Q(m + 1)});
    return g;
}

int max_pole(const Group& g, int a) {
    int m = 0;
    for (const auto& [code, es] : g)
        if (code > 0 && slot_of(code, 0).a == a) m = std::max(m, slot_of(code, 0).k);
    return m;
}

PoleBasisForm compute_omega(int g, int n) {
    Engine& eng = Engine::get();
    PoleBasisForm out;
    out.n = n;
    const int ns = n - 1;  // spectators at result positions 1..n-1

    for (int a : {1, -1}) {
        auto emit = [&](const std::vector<Q>& rv, BasisKey bits, const Q& c) {
            for (size_t m = 1; m < rv.size(); ++m)
                if (rv[m] != 0) out.add(bits | placed(slot_byte(Slot{a, static_cast<int>(m) + 1}), 0), rv[m] * c);
        };

        // omega_{n+1}^{(g-1)}(z, zbar, J)
        if (g >= 1) {
            if (g == 1 && n == 1) {
                emit(eng.diag_table(a), 0, 1);
            } else {
                auto w = omega(g - 1, n + 1);
                for (const auto& [key, c] : w->coeffs) {
                    int c1 = static_cast<int>(key & 0xff), c2 = static_cast<int>((key >> 8) & 0xff);
                    BasisKey bits = 0;
                    for (int i = 2; i <= n; ++i) bits |= placed((key >> (8 * i)) & 0xff, i - 1);
                    emit(eng.table(a, c1, c2), bits, c);
                }
            }
        }

        // primed sum over h and I
        for (int h = 0; h <= g; ++h) {
            for (unsigned mask = 0; mask < (1u << ns); ++mask) {
                std::vector<int> in, out_;
                for (int j = 0; j < ns; ++j) ((mask >> j) & 1 ? in : out_).push_back(j + 1);
                int g1 = h, n1 = static_cast<int>(in.size()) + 1;
                int g2 = g - h, n2 = static_cast<int>(out_.size()) + 1;
                if ((g1 == 0 && n1 == 1) || (g2 == 0 && n2 == 1)) continue;
                bool b1 = (g1 == 0 && n1 == 2), b2 = (g2 == 0 && n2 == 2);
                Group G1, G2;
                if (!b1) G1 = group_first(*omega(g1, n1), in);
                if (!b2) G2 = group_first(*omega(g2, n2), out_);
                if (b1) G1 = group_bergman(a, in[0], b2 ? 0 : max_pole(G2, a));
                if (b2) G2 = group_bergman(a, out_[0], b1 ? 0 : max_pole(G1, a));
                for (const auto& [c1, l1] : G1)
                    for (const auto& [c2, l2] : G2) {
                        const std::vector<Q>& rv = eng.table(a, c1, c2);
                        for (size_t m = 1; m < rv.size(); ++m) {
                            if (rv[m] == 0) continue;
                            BasisKey head = placed(slot_byte(Slot{a, static_cast<int>(m) + 1}), 0);
                            for (const Entry& e1 : l1)
                                for (const Entry& e2 : l2) out.add(head | e1.bits | e2.bits, rv[m] * e1.c * e2.c);
                        }
                    }
            }
        }
    }
    return out;
}

}  // namespace

std::shared_ptr<const PoleBasisForm> omega(int g, int n) {
    if (g < 0 || n < 1 || 2 * g - 2 + n <= 0) throw std::invalid_argument("omega: unstable (g, n)");
    if (n > 8) throw std::invalid_argument("omega: at most 8 slots");
    Engine& eng = Engine::get();
    {
        std::lock_guard<std::mutex> lk(eng.memo_mu);
        auto it = eng.memo.find({g, n});
        if (it != eng.memo.end()) return it->second;
    }
    auto w = std::make_shared<const PoleBasisForm>(compute_omega(g, n));
    std::lock_guard<std::mutex> lk(eng.memo_mu);
    return eng.memo.try_emplace({g, n}, w).first->second;
}

void clear_memo() {
    Engine& eng = Engine::get();
    std::lock_guard<std::mutex> lk(eng.memo_mu);
    eng.memo.clear();
}

LogElement omega_01() { return LogElement::lambda_pow(1, -curve::dx_dz()); }

Q omega_02(const Q& z1, const Q& z2) {
    if (z1 == z2) throw std::domain_error("omega_02 on the diagonal");
    Q d = z1 - z2;
    return 1 / (d * d);
}

Q residue(const Laurent& s) { return s.coeff(-1); }

PoleBasisForm primitive(const PoleBasisForm& w) {
    // int_0^z dz/(z-a)^k = -1/((k-1)(z-a)^(k-1)) + 1/((k-1)(-a)^(k-1))
    PoleBasisForm r;
    r.n = w.n;
    for (const auto& [key, c] : w.coeffs) {
        std::vector<std::pair<BasisKey, Q>> acc{{0, c}};
        for (int i = 0; i < w.n; ++i) {
            Slot s = slot_of(key, i);
            if (s.k < 2) throw std::invalid_argument("primitive: pole order below 2");
            std::vector<std::pair<BasisKey, Q>> nxt;
            Q k1 = s.k - 1;
            Q pole = -1 / k1;
            Q cst = 1 / (k1 * qpow(Q(-s.a), s.k - 1));
            for (const auto& [b, q] : acc) {
                nxt.push_back({b | placed(slot_byte(Slot{s.a, s.k - 1}), i), q * pole});
                nxt.push_back({b | placed(slot_byte(Slot{1, 0}), i), q * cst});
            }
            acc.swap(nxt);
        }
        for (const auto& [b, q] : acc) r.add(b, q);
    }
    return r;
}

PoleBasisForm f_gn(int g, int n) { return primitive(*omega(g, n)); }

}  // namespace toprec
}  // namespace difftop
