#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace difftop {

using Q = mpq_class;
using Z = mpz_class;

// "p/q", or "p" when q == 1
std::string to_str(const Q& q);
Q parse_q(const std::string& s);

// canonical p/q
inline Q frac(const Z& p, const Z& q) {
    Q r(p, q);
    r.canonicalize();
    return r;
}

Z factorial(unsigned n);
Z binom(long n, long k);  // 0 outside 0 <= k <= n
Q qpow(const Q& b, long e);
inline Q sign_pow(long e) { return (e % 2 == 0) ? Q(1) : Q(-1); }

}  // namespace difftop
