#pragma once

#include "difftop/logelem.hpp"
#include "difftop/ratfunc.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace difftop {

// One slot of the pole basis: dz/(z - a)^k. k = 0 is used by primitives for a constant factor.
struct Slot {
    int a;  // +1 or -1
    int k;
    bool operator==(const Slot& o) const { return a == o.a && k == o.k; }
};

// Up to 8 slots packed into 8 bits each: (k << 1) | (a == -1)
using BasisKey = std::uint64_t;
BasisKey pack(const std::vector<Slot>& slots);
std::vector<Slot> unpack(BasisKey key, int n);
inline Slot slot_of(BasisKey key, int i) {
    unsigned b = (key >> (8 * i)) & 0xff;
    return Slot{(b & 1) ? -1 : 1, static_cast<int>(b >> 1)};
}

// sum coeff * prod dz_i/(z_i - a_i)^(k_i)
struct PoleBasisForm {
    int n = 0;
    std::map<BasisKey, Q> coeffs;

    void add(BasisKey k, const Q& c);
    // value of the density at rational points (no dz factors)
    Q eval(const std::vector<Q>& zs) const;
    // n == 1: summed to a single rational function in z
    RatFunc as_ratfunc() const;
    // density with slot i treated symbolically and the others evaluated
    RatFunc partial(int i, const std::vector<Q>& zs) const;
    PoleBasisForm permuted(const std::vector<int>& perm) const;  // slot i <- slot perm[i]
    std::string to_json() const;
    int max_k() const;
    friend bool operator==(const PoleBasisForm& a, const PoleBasisForm& b) {
        return a.n == b.n && a.coeffs == b.coeffs;
    }
};

namespace toprec {

// omega_n^(g), 2g - 2 + n > 0; memoized and thread-safe
std::shared_ptr<const PoleBasisForm> omega(int g, int n);
// drops the memo table (used to compare cold and warm runs)
void clear_memo();

// omega_1^(0) = -ln z (1 - 1/z^2) dz as a LogElement density
LogElement omega_01();
// omega_2^(0) density 1/(z1 - z2)^2 at a point pair
Q omega_02(const Q& z1, const Q& z2);

// residue of a Laurent series (coefficient of t^-1)
Q residue(const Laurent& s);

// termwise primitive from base point 0; k = 0 slots stand for constants
PoleBasisForm f_gn(int g, int n);
PoleBasisForm primitive(const PoleBasisForm& w);

}  // namespace toprec
}  // namespace difftop
