#pragma once

#include "lamprob/symfunc.hpp"

#include <stdexcept>

namespace lp {

// Classical exponential and logarithm of graded series (no plethysm involved).
template <class Key, class S> Series<Key, S> classical_exp(const Series<Key, S>& y) {
    const int D = y.trunc();
    if (!is_exact_zero(y.constant_term())) throw std::domain_error("exp: nonzero constant term");
    std::vector<Series<Key, S>> yk(D + 1, Series<Key, S>(D)), E(D + 1, Series<Key, S>(D));
    for (int k = 1; k <= D; ++k) yk[k] = y.degree_part(k).scaled_rat(Rat(k));
    E[0] = Series<Key, S>::one(D);
    Series<Key, S> out = E[0];
    // n E_n = sum_k k y_k E_{n-k}
    for (int n = 1; n <= D; ++n) {
        Series<Key, S> acc(D);
        for (int k = 1; k <= n; ++k)
            if (!yk[k].terms().empty() && !E[n - k].terms().empty()) acc += yk[k] * E[n - k];
        E[n] = acc.scaled_rat(Rat(1, n));
        out += E[n];
    }
    return out;
}

template <class Key, class S> Series<Key, S> classical_log(const Series<Key, S>& F) {
    const int D = F.trunc();
    if (!(F.constant_term() == S(1))) throw std::domain_error("log: constant term must be 1");
    std::vector<Series<Key, S>> Fk(D + 1, Series<Key, S>(D)), L(D + 1, Series<Key, S>(D));
    for (int k = 1; k <= D; ++k) Fk[k] = F.degree_part(k);
    Series<Key, S> out(D);
    // n L_n = n F_n - sum_{k<n} k L_k F_{n-k}
    for (int n = 1; n <= D; ++n) {
        Series<Key, S> acc = Fk[n].scaled_rat(Rat(n));
        for (int k = 1; k < n; ++k)
            if (!L[k].terms().empty() && !Fk[n - k].terms().empty())
                acc -= L[k].scaled_rat(Rat(k)) * Fk[n - k];
        L[n] = acc.scaled_rat(Rat(1, n));
        out += L[n];
    }
    return out;
}

// Integer power by classical exp(n log F); n may be negative.
template <class Key, class S> Series<Key, S> classical_pow(const Series<Key, S>& F, const Rat& n) {
    return classical_exp(classical_log(F).scaled_rat(n));
}

template <class Key, class S> void require_zero_constant(const Series<Key, S>& x) {
    if (!is_exact_zero(x.constant_term()))
        throw std::domain_error("plethystic exponential: argument must have zero constant term");
}

// Exp_sigma(x) = prod_i exp(p_i o x / i)
template <class Key, class S> Series<Key, S> exp_sigma(const Series<Key, S>& x) {
    require_zero_constant(x);
    const int D = x.trunc();
    Series<Key, S> y(D);
    for (int i = 1; i <= D; ++i) y += x.adams_op(i).scaled_rat(Rat(1, i));
    return classical_exp(y);
}

// Exp_sigma(-x) through the e-expansion sum_i (-1)^i e_i o x.
template <class Key, class S> Series<Key, S> exp_sigma_neg(const Series<Key, S>& x);

// Log_sigma via the plethystic inverse of Stanley, sum_i l_i o (F - 1).
template <class Key, class S> Series<Key, S> log_sigma(const Series<Key, S>& F) {
    const int D = F.trunc();
    if (!(F.constant_term() == S(1))) throw std::domain_error("log_sigma: constant term must be 1");
    Series<Key, S> x = F - Series<Key, S>::one(D);
    std::vector<Series<Key, S>> px(D + 1);
    for (int d = 1; d <= D; ++d) px[d] = -x.adams_op(d);
    Series<Key, S> out(D);
    for (int i = 1; i <= D; ++i) {
        Series<Key, S> li(D);
        for (int d = 1; d <= i; ++d) {
            if (i % d) continue;
            int mu = mobius(d);
            if (!mu) continue;
            Series<Key, S> pw = Series<Key, S>::one(D);
            for (int r = 0; r < i / d; ++r) pw *= px[d];
            li += pw.scaled_rat(Rat(mu));
        }
        out += li.scaled_rat(Rat(-1, i));
    }
    return out;
}

// Log_sigma by degree-by-degree inversion of exp_sigma.
template <class Key, class S> Series<Key, S> log_sigma_newton(const Series<Key, S>& F) {
    const int D = F.trunc();
    if (!(F.constant_term() == S(1))) throw std::domain_error("log_sigma: constant term must be 1");
    Series<Key, S> L(D);
    for (int n = 1; n <= D; ++n) {
        Series<Key, S> E = exp_sigma(L);
        L += (F - E).degree_part(n);
    }
    return L;
}

template <class Key, class S> Series<Key, S> power(const Series<Key, S>& f, const S& N) {
    return exp_sigma(log_sigma(f).scaled(N));
}

template <class Key, class S> Series<Key, S> exp_sigma_neg(const Series<Key, S>& x) {
    require_zero_constant(x);
    const int D = x.trunc();
    // e_i o x from the power-sum expansion e_i = sum_{lam |- i} eps_lam p_lam / z_lam.
    std::vector<Series<Key, S>> px(D + 1);
    for (int d = 1; d <= D; ++d) px[d] = x.adams_op(d);
    Series<Key, S> out = Series<Key, S>::one(D);
    for (int i = 1; i <= D; ++i) {
        const auto& coeffs = inverse_transition(Basis::p, i);
        // Row of e_i in the p-basis equals (m-row of e_i) * inverse(p).
        const auto& erow = transition(Basis::e, i)[partition_index(Partition{i})];
        const auto& ps = partitions_of(i);
        for (size_t j = 0; j < ps.size(); ++j) {
            Rat c(0);
            for (size_t k = 0; k < ps.size(); ++k)
                if (!erow[k].is_zero()) c += erow[k] * coeffs[k][j];
            if (c.is_zero()) continue;
            Series<Key, S> term = Series<Key, S>::one(D);
            for (int part : ps[j].parts()) term *= px[part];
            out += term.scaled_rat((i % 2 ? Rat(-1) : Rat(1)) * c);
        }
    }
    return out;
}

// f o g with f over Q, routed through the p-basis of f.
template <class Key, class S> Series<Key, S> plethysm(const SymSeries<Rat>& f, const Series<Key, S>& g) {
    const int D = g.trunc();
    if (!is_exact_zero(g.constant_term()) && f.max_degree() >= f.trunc())
        throw std::domain_error("plethysm: g has a constant term and f is not known to be a polynomial");
    auto fp = to_basis(f, Basis::p);
    int top = 0;
    for (const auto& [lam, c] : fp) top = std::max(top, lam.length() ? lam[0] : 0);
    std::vector<Series<Key, S>> pg(top + 1);
    for (int k = 1; k <= top; ++k) pg[k] = g.adams_op(k);
    Series<Key, S> out(D);
    for (const auto& [lam, c] : fp) {
        Series<Key, S> term = Series<Key, S>::one(D);
        for (int part : lam.parts()) term *= pg[part];
        out += term.scaled_rat(c);
    }
    return out;
}

// sum over the given degrees of the basis elements, lifted to scalars S.
template <class S> SymSeries<S> sum_series(Basis b, const std::vector<int>& degrees, int D) {
    return sum_of(b, degrees, D).map_coeffs([](const Rat& r) { return scale(S(1), r); });
}

inline std::vector<int> degrees_from(int lo, int D) {
    std::vector<int> v;
    for (int k = lo; k <= D; ++k) v.push_back(k);
    return v;
}

// (1 + h_1)^N; its m-coefficients are the values c_tau o N.
template <class S> SymSeries<S> falling_mgf_coeffs(const S& N, int D) {
    return power(sum_series<S>(Basis::h, {0, 1}, D), N);
}

// (1 + p (h_1 + h_2 + ...))^N
template <class S> SymSeries<S> binomial_mgf(const S& p, const S& N, int D) {
    SymSeries<S> f = SymSeries<S>::one(D) + sum_series<S>(Basis::h, degrees_from(1, D), D).scaled(p);
    return power(f, N);
}

// Exp_sigma(mu (h_1 + h_2 + ...))
template <class S> SymSeries<S> poisson_mgf(const S& mu, int D) {
    return exp_sigma(sum_series<S>(Basis::h, degrees_from(1, D), D).scaled(mu));
}

} // namespace lp
