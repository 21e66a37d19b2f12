#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lp {

// GF(p^n). Elements are encoded as sum_j c_j p^j where c_j is the
// coefficient of x^j in F_p[x]/(m), m the smallest primitive polynomial of
// degree n (coefficient vectors compared as base-p integers). The class x of
// the generator is primitive, so log/exp tables are indexed by its powers.
class GF {
public:
    using Elt = std::uint32_t;

    GF(long p, int n);
    // Shared instance for a prime power q.
    static const GF& get(long q);

    long p() const { return p_; }
    int degree() const { return n_; }
    long size() const { return q_; }
    const std::vector<int>& modulus() const { return mod_; }
    Elt generator() const { return exp_[1 % (q_ - 1)]; }

    Elt add(Elt a, Elt b) const;
    Elt neg(Elt a) const;
    Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
    Elt mul(Elt a, Elt b) const {
        if (!a || !b) return 0;
        std::uint32_t s = log_[a] + log_[b];
        return exp_[s >= q_ - 1 ? s - (q_ - 1) : s];
    }
    Elt inv(Elt a) const;
    Elt pow(Elt a, long long e) const;
    // Discrete log to the base generator(); a != 0.
    std::uint32_t log(Elt a) const { return log_[a]; }
    Elt exp(long long k) const;
    Elt from_int(long v) const; // image of an integer in the prime field

    std::string str(Elt a) const;

private:
    long p_;
    int n_;
    long q_;
    std::vector<int> mod_; // monic, low to high, size n+1
    std::vector<Elt> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<Elt> add_table_; // q*q entries when small
    bool xor_add_ = false;

    Elt add_digits(Elt a, Elt b) const;
};

// Prime power decomposition q = p^n; throws if q is not a prime power.
void prime_power(long q, long& p, int& n);

// Dense polynomials over a GF, low to high, no trailing zeros (zero = empty).
using FqPoly = std::vector<GF::Elt>;

int deg(const FqPoly& f);
void poly_trim(FqPoly& f);
FqPoly poly_mul(const GF& F, const FqPoly& a, const FqPoly& b);
FqPoly poly_mod(const GF& F, const FqPoly& a, const FqPoly& b);
FqPoly poly_divexact(const GF& F, const FqPoly& a, const FqPoly& b);
FqPoly poly_gcd(const GF& F, FqPoly a, FqPoly b);
FqPoly poly_deriv(const GF& F, const FqPoly& a);
GF::Elt poly_eval(const GF& F, const FqPoly& f, GF::Elt x);
GF::Elt resultant(const GF& F, const FqPoly& a, const FqPoly& b);

// Monic polynomial of degree d with index idx in 0..Q^d-1 (base-Q digits are
// the lower coefficients).
FqPoly monic_from_index(const GF& F, int d, std::uint64_t idx);

// All monic irreducibles of degree e, in index order.
std::vector<FqPoly> monic_irreducibles(const GF& F, int e);
// Number of monic irreducibles of degree e over F_Q.
long long count_irreducibles(long long Q, int e);

// Smallest-encoding root in F of a polynomial with coefficients in the prime
// field given as integers; throws if none.
GF::Elt smallest_root(const GF& F, const std::vector<int>& poly);

// Field embedding small -> big (small.size()^k == big.size()) sending the class
// of x to the smallest root of small's modulus. Entry e is the image of e.
std::vector<GF::Elt> subfield_embedding(const GF& small, const GF& big);

} // namespace lp
