#pragma once

#include "lamprob/cyclo.hpp"
#include "lamprob/ffield.hpp"
#include "lamprob/symfunc.hpp"
#include "lamprob/witt.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace lp {

// Exponent vectors of the degree-d monomials in nvars variables, in
// lexicographically decreasing order (x0^d first).
const std::vector<std::vector<int>>& monomials(int nvars, int d);
int monomial_index(const std::vector<int>& alpha);

// Degree-d form in x0..xm over F_Q, one coefficient per entry of monomials(m+1, d).
struct HomogForm {
    int m = 1;
    int d = 1;
    std::vector<GF::Elt> c;

    static HomogForm from_index(const GF& F, int m, int d, std::uint64_t idx);
    // Monomials given as (coefficient, exponents).
    static HomogForm from_terms(int m, int d, const std::vector<std::pair<GF::Elt, std::vector<int>>>& terms);
    bool is_zero() const;
    std::string str() const;
};

// Normalized representatives (first nonzero coordinate 1) of P^m(F).
std::vector<std::vector<GF::Elt>> projective_points(const GF& F, int m);

// Value of a form with coefficients in `small` at a point of P^m(big).
GF::Elt eval_form(const GF& small, const GF& big, const HomogForm& f, const std::vector<GF::Elt>& pt);

// True iff V(F) in P^m is smooth: Macaulay rank test at s = (m+1)(d-1)+1 on
// (F, dF/dx_0, ..., dF/dx_m); binary forms use the squarefree test.
bool smoothness_test(const GF& F, const HomogForm& f);
// Exhaustive search for a common zero of F and its partials over F_{Q^e}, e <= max_ext.
bool has_singular_point(const GF& F, const HomogForm& f, int max_ext);

// #V(F)(F_{Q^k}) for k = 1..N.
std::vector<long long> point_counts(const GF& F, const HomogForm& f, int N);
// [V(F)] with ghosts the point counts; throws on singular input.
WittTrunc<Rat> zeta_of_section(const GF& F, const HomogForm& f, int N);

// Classes [H^j(P^{n+1})] as Witt vectors over Q(u), u^2 = q.
struct CohomTable {
    long q;
    int n; // Y = P^{n+1}
    int length;
    WittTrunc<CycloHalf> H(int j) const;
    // [H^{2n+2-j}] == [q^{n+1-j}] [H^j] on the stored length
    bool poincare_symmetric() const;
};

// Histogram of point-count vectors (N_1..N_D) over the smooth nonzero forms of
// degree d in P^m over F_Q, Q = q^i.
struct SmoothCensus {
    long q;
    int i, m, d, D;
    long long total_forms = 0;
    long long smooth_forms = 0;
    std::map<std::vector<long long>, long long> counts;
};
SmoothCensus smooth_census(long q, int i, int m, int d, int D, int threads = 0);

// Size in forms of a census request; requests above 2^25 are rejected.
long double census_size(long q, int i, int m, int d);

enum class Sign { plus, minus };
Sign parse_sign(const std::string& s);

// One series per ghost component 1..N.
std::vector<SymSeries<Rat>> empirical_geo_mgf(long q, int m, int d, int D, int N, Sign sign, int threads = 0);
SymSeries<Rat> empirical_geo_mgf_from(const SmoothCensus& c, Sign sign);
std::vector<SymSeries<Rat>> limit_geo_mgf(long q, int m, int D, int N, Sign sign);

// mu = -eps sum_{j<n} (-1)^j ([q^{-n/2}] + [q^{(n-2j)/2}]) [H^j] - [q^{-n/2}] [H^n]
WittTrunc<CycloHalf> vanishing_mu(long q, int n, int length);
// X(F) = eps [q^{-n/2}] [Z] + mu after base change to F_{q^i}, from point counts.
WittTrunc<CycloHalf> vanishing_class(long q, int n, int i, const std::vector<long long>& counts);

std::vector<SymSeries<CycloHalf>> empirical_vanishing_mgf(long q, int n, int d, int D, int N, int threads = 0);
SymSeries<CycloHalf> empirical_vanishing_mgf_from(const SmoothCensus& c, int n);
std::vector<SymSeries<CycloHalf>> limit_vanishing_mgf(long q, int n, int D, int N);

} // namespace lp
