#pragma once

#include "lamprob/symfunc.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lp {

// Sym: permutation representation of S_n. SymStd: its standard (n-1)-dim piece.
enum class Group { Sym, SymStd, U, O, SO, Sp };
Group parse_group(const std::string& s);
std::string group_name(Group g);

// Exact E[h_tau] over S_n acting by permutation matrices, via cycle types.
SymSeries<Rat> sym_group_mgf(int n, int D);

// The stable closed forms: Exp(h_2), Exp(e_2), Exp(sum_{k>=1} h_k), Exp(sum_{k>=2} h_k).
SymSeries<Rat> limit_mgf(Group g, int D);
// Exp(h_1 hbar_1)
BiSymSeries<Rat> limit_mgf_unitary(int D);

// Coefficients of prod 1/(1 - m) over nonconstant monomials m, by counting
// vector partitions of tau. Independent of every series routine.
mpz_class vector_partition_count(const Partition& tau);

// dim (Sym^tau V (x) Sym^taubar V*)^{U(n)}
mpz_class unitary_inv_dim(int n, const Partition& tau, const Partition& taubar);
// dim (Sym^tau C^n)^G for G in {SO, Sp, O}; Weyl integration constant terms.
mpz_class so_sp_inv_dim(Group g, int n, const Partition& tau);
mpz_class orthogonal_inv_dim(int n, const Partition& tau);
// Finite-n MGF: coefficient of m_tau is the invariant dimension.
SymSeries<Rat> finite_mgf(Group g, int n, int D);
BiSymSeries<Rat> finite_unitary_mgf(int n, int D);

struct McEstimate {
    double mean = 0;
    double stderr_ = 0;
};
// Monte Carlo estimate of E[h_tau(M) conj(h_taubar(M))] under Haar measure;
// taubar is ignored outside U. Deterministic in (seed, samples, threads).
std::vector<McEstimate> haar_mc_oracle(Group g, int n, const std::vector<std::pair<Partition, Partition>>& taus,
                                       long samples, std::uint64_t seed, int threads = 0);

// g_j(a) = E[(sqrt(j) Z + [j even])^a]
mpz_class g_table(int j, int a);

// Stable joint trace moment <limit MGF, prod p_i^{a_i}> (and conj p^{b} for U).
Rat ds_trace_moment(Group g, const std::vector<int>& a, const std::vector<int>& b = {});
// Same moment for finite n through the invariant-dimension engine.
Rat ds_trace_moment_finite(Group g, int n, const std::vector<int>& a, const std::vector<int>& b = {});

// E[prod_i C_i (C_i - 1) ... (C_i - k_i + 1)] over S_n, C_i = number of i-cycles.
Rat cycle_falling_moments(int n, const std::vector<int>& k);

} // namespace lp
