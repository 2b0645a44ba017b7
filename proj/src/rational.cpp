#include "difftop/rational.hpp"

#include <stdexcept>

namespace difftop {

std::string to_str(const Q& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Q parse_q(const std::string& s) {
    Q r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    return r;
}

Z factorial(unsigned n) {
    Z r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Z binom(long n, long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    Z r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Q qpow(const Q& b, long e) {
    if (e < 0) {
        if (b == 0) throw std::domain_error("0 to a negative power");
        Q inv = 1 / b;
        return qpow(inv, -e);
    }
    Q r;
    mpz_pow_ui(r.get_num_mpz_t(), b.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(r.get_den_mpz_t(), b.get_den_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

}  // namespace difftop
