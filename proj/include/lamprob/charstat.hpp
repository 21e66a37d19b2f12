#pragma once

#include "lamprob/cyclo.hpp"
#include "lamprob/ffield.hpp"
#include "lamprob/symfunc.hpp"
#include "lamprob/witt.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lp {

// Base field F_q and working field F_{q^i}.
struct FqCtx {
    long q = 3;
    int i = 1;
    long Q() const { return ipow(q, i); }
    const GF& field() const { return GF::get(Q()); }
};

// Order-ell character of mu_ell(F_q), sending the canonical root of unity to
// zeta^chi_exp. The canonical root is g^{(q-1)/ell} for the generator g of F_q.
struct CharCtx {
    int ell = 2;
    int chi_exp = 1;
};

void validate(const FqCtx& ctx, const CharCtx& ch);

bool is_ellfree(const GF& F, const FqPoly& f, int ell);
std::vector<FqPoly> enumerate_ellfree(const FqCtx& ctx, int ell, int d);
// Count of the above, Q^d - Q^{d-ell+1} for d >= ell.
long long count_ellfree(long long Q, int ell, int d);

// Exponent j with chi(f(P)) = zeta^j, or -1 when P divides f.
int char_index(const FqCtx& ctx, const CharCtx& ch, const FqPoly& f, const FqPoly& P);
CycloHalf char_value(const FqCtx& ctx, const CharCtx& ch, const FqPoly& f, const FqPoly& P);

// Element of Z[zeta_ell] as coefficients of zeta^0..zeta^{ell-1} (not reduced).
using ZZeta = std::vector<long long>;

// Closed points of A^1 over the working field, degrees 1..N.
const std::vector<FqPoly>& closed_points(const FqCtx& ctx, int N);

// Coefficients E_0..E_N of prod_{deg P <= N} (1 - chi_f(P) T^{deg P}).
std::vector<ZZeta> euler_product_coeffs(const FqCtx& ctx, const CharCtx& ch, const FqPoly& f, int N);

// Normalized X(f) = L(chi_f, t u^{-i})^{-1} truncated at t^N.
std::vector<CycloHalf> l_inverse_series(const FqCtx& ctx, const CharCtx& ch, const FqPoly& f, int N);
WittTrunc<CycloHalf> l_inverse_normalized(const FqCtx& ctx, const CharCtx& ch, const FqPoly& f, int N);

// Unnormalized L-series coefficients through T^N, and its degree on that
// range (largest k <= N with a nonzero coefficient).
std::vector<ZZeta> l_series_coeffs(const FqCtx& ctx, const CharCtx& ch, const FqPoly& f, int N);
int l_series_degree(const FqCtx& ctx, const CharCtx& ch, const FqPoly& f, int N);

// One series per ghost component 1..N. Single alphabet for ell = 2, the joint
// (tau | taubar) alphabet for ell > 2.
struct CharMgf {
    int ell = 2;
    std::vector<SymSeries<CycloHalf>> single;
    std::vector<BiSymSeries<CycloHalf>> joint;
    int length() const { return static_cast<int>(ell == 2 ? single.size() : joint.size()); }
    // Coefficient of m_tau m-bar_taubar at ghost i (taubar ignored for ell = 2).
    CycloHalf coeff(int i, const Partition& tau, const Partition& taubar = {}) const;
    bool operator==(const CharMgf& o) const { return ell == o.ell && single == o.single && joint == o.joint; }
};

// Average over U_{d,ell}(F_{q^i}) of prod_j [t^{tau_j}] X(f) (times conjugates for ell > 2).
CharMgf empirical_mgf_chars(long q, const CharCtx& ch, int d, int D, int N, int threads = 0);
// Single ghost i, exposed for tests of the base-change identity.
CharMgf empirical_mgf_chars_ghost(const FqCtx& ctx, const CharCtx& ch, int d, int D, int threads = 0);

enum class LimitMode { euler, power };
LimitMode parse_limit_mode(const std::string& s);
CharMgf limit_mgf_chars(long q, const CharCtx& ch, int D, int N, LimitMode mode);

// (c_ell)_j = q^{j(ell-1)} / sum_{m<ell} q^{jm}
Rat c_ell_ghost(long q, int ell, int j);

// sum_{i<=k} (-1)^i (e_i o X)_1(f), i.e. the partial sum of the normalized L-series at t = 1.
CycloHalf truncated_central_value(const FqCtx& ctx, const CharCtx& ch, const FqPoly& f, int k);

} // namespace lp
