#pragma once

#include "lamprob/rat.hpp"

#include <complex>
#include <string>
#include <vector>

namespace lp {

// Q(zeta_ell)[u]/(u^2 - q). Stored densely on the basis z^a u^b with
// 0 <= a <= ell-2, b in {0,1}. A value built from a bare rational carries
// no field (ell == 0) and is promoted on first contact with a field value.
class CycloHalf {
public:
    CycloHalf() : c_(1) {}
    CycloHalf(int v) : c_(1, Rat(v)) {}
    CycloHalf(long v) : c_(1, Rat(v)) {}
    CycloHalf(const Rat& r) : c_(1, r) {}

    static CycloHalf from_rat(int ell, long q, const Rat& r);
    static CycloHalf zeta(int ell, long q, long power = 1);
    static CycloHalf u_pow(int ell, long q, long power);
    static CycloHalf u(int ell, long q) { return u_pow(ell, q, 1); }
    // Coefficient vector of sum_j c_j zeta^j with j taken mod ell.
    static CycloHalf from_zeta_coeffs(int ell, long q, const std::vector<Rat>& c);

    int ell() const { return ell_; }
    long q() const { return q_; }
    bool has_field() const { return ell_ != 0; }
    const Rat& coeff(int a, int b) const;

    CycloHalf& operator+=(const CycloHalf& o);
    CycloHalf& operator-=(const CycloHalf& o);
    CycloHalf& operator*=(const CycloHalf& o);
    CycloHalf& operator*=(const Rat& r);
    CycloHalf& operator/=(const CycloHalf& o) { return *this *= o.inv(); }
    friend CycloHalf operator+(CycloHalf a, const CycloHalf& b) { return a += b; }
    friend CycloHalf operator-(CycloHalf a, const CycloHalf& b) { return a -= b; }
    friend CycloHalf operator*(CycloHalf a, const CycloHalf& b) { return a *= b; }
    friend CycloHalf operator*(CycloHalf a, const Rat& r) { return a *= r; }
    friend CycloHalf operator*(const Rat& r, CycloHalf a) { return a *= r; }
    friend CycloHalf operator/(CycloHalf a, const CycloHalf& b) { return a /= b; }
    CycloHalf operator-() const;
    friend bool operator==(const CycloHalf& a, const CycloHalf& b);

    bool is_zero() const;
    bool is_rational() const;
    Rat rational_part() const { return coeff(0, 0); }

    // Throws std::domain_error when the element is not invertible.
    CycloHalf inv() const;
    CycloHalf pow(long e) const;
    CycloHalf conj() const;
    CycloHalf adams(int k) const;

    std::string str() const;
    std::complex<long double> embed(int precision_bits = 64) const;

private:
    int ell_ = 0;
    long q_ = 0;
    std::vector<Rat> c_;

    int dim() const { return ell_ == 0 ? 1 : 2 * (ell_ - 1); }
    void promote(int ell, long q);
    void unify(CycloHalf& o);
    static void check_field(int ell, long q);
};

inline CycloHalf adams(int k, const CycloHalf& x) { return x.adams(k); }
inline bool is_exact_zero(const CycloHalf& x) { return x.is_zero(); }
inline std::string to_string(const CycloHalf& x) { return x.str(); }

std::complex<long double> embed_complex(const CycloHalf& x, int precision_bits);

} // namespace lp
