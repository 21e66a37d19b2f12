#include "lamprob/rat.hpp"

#include <mpfr.h>

#include <stdexcept>

namespace lp {

Rat::Rat(long num, long den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat Rat::parse(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rat: cannot parse '" + s + "'");
    if (q.get_den() == 0) throw std::domain_error("Rat: zero denominator");
    q.canonicalize();
    return Rat(q);
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    v_ /= o.v_;
    return *this;
}

Rat Rat::inv() const {
    if (is_zero()) throw std::domain_error("Rat: inverse of zero");
    Rat r;
    r.v_ = 1 / v_;
    return r;
}

Rat Rat::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    Rat r(1), b(*this);
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

long double Rat::to_ld(int precision_bits) const {
    mpfr_t x;
    mpfr_init2(x, precision_bits);
    mpfr_set_q(x, v_.get_mpq_t(), MPFR_RNDN);
    long double r = mpfr_get_ld(x, MPFR_RNDN);
    mpfr_clear(x);
    return r;
}

int mobius(long n) {
    int m = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        m = -m;
    }
    if (n > 1) m = -m;
    return m;
}

long ipow(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

mpz_class zpow(long b, long e) {
    mpz_class r;
    mpz_class base(b);
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

Rat falling(const Rat& x, int k) {
    Rat r(1);
    for (int j = 0; j < k; ++j) r *= x - Rat(j);
    return r;
}

mpz_class factorial(int n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

mpz_class binom(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

} // namespace lp
