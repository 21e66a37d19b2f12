#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace lp {

// Arbitrary precision rational, always canonical.
class Rat {
public:
    Rat() = default;
    Rat(int v) : v_(v) {}
    Rat(long v) : v_(v) {}
    Rat(long long v) : v_(static_cast<long>(v)) {}
    Rat(long num, long den);
    explicit Rat(const mpz_class& z) : v_(z) {}
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    static Rat parse(const std::string& s);

    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    Rat operator-() const { Rat r; r.v_ = -v_; return r; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    Rat inv() const;
    Rat pow(long e) const;
    Rat abs() const { Rat r; r.v_ = ::abs(v_); return r; }

    std::string str() const { return v_.get_str(); }
    // Rounded through MPFR at the given mantissa precision.
    long double to_ld(int precision_bits = 80) const;

private:
    mpq_class v_;
};

inline Rat adams(int, const Rat& x) { return x; }
inline bool is_exact_zero(const Rat& x) { return x.is_zero(); }
inline std::string to_string(const Rat& x) { return x.str(); }

// Integers, the one coefficient ring here that is not a Q-algebra.
class Integer {
public:
    Integer() = default;
    Integer(long v) : v_(v) {}
    explicit Integer(const mpz_class& z) : v_(z) {}

    Integer& operator+=(const Integer& o) { v_ += o.v_; return *this; }
    Integer& operator-=(const Integer& o) { v_ -= o.v_; return *this; }
    Integer& operator*=(const Integer& o) { v_ *= o.v_; return *this; }
    friend Integer operator+(Integer a, const Integer& b) { return a += b; }
    friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
    friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
    Integer operator-() const { return Integer(mpz_class(-v_)); }
    friend bool operator==(const Integer& a, const Integer& b) { return a.v_ == b.v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    const mpz_class& raw() const { return v_; }
    std::string str() const { return v_.get_str(); }

private:
    mpz_class v_;
};

inline Integer adams(int, const Integer& x) { return x; }
inline bool is_exact_zero(const Integer& x) { return x.is_zero(); }
inline std::string to_string(const Integer& x) { return x.str(); }

template <class S> struct scalar_traits {
    static constexpr bool is_q_algebra = true;
};
template <> struct scalar_traits<Integer> {
    static constexpr bool is_q_algebra = false;
};

// Small number theory shared by several modules.
int mobius(long n);
long ipow(long b, int e);
mpz_class zpow(long b, long e);
Rat falling(const Rat& x, int k);
mpz_class factorial(int n);
mpz_class binom(int n, int k);

} // namespace lp
