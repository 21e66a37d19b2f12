#pragma once

#include "lamprob/partition.hpp"
#include "lamprob/rat.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lp {

enum class Basis { m, h, e, p, s };
Basis parse_basis(const std::string& s);
std::string basis_name(Basis b);

using RatMatrix = std::vector<std::vector<Rat>>;

// Rows indexed by partitions_of(n); row lambda is b_lambda expanded in m.
const RatMatrix& transition(Basis b, int n);
// Inverse of transition(b, n); row mu is m_mu expanded in b.
const RatMatrix& inverse_transition(Basis b, int n);
// Row mu is omega(m_mu) expanded in m.
const RatMatrix& omega_matrix(int n);
int partition_index(const Partition& t);

long kostka(const Partition& lambda, const Partition& mu);

// m_a * m_b = sum_nu c * m_nu
const std::vector<std::pair<Partition, long>>& mono_product(const Partition& a, const Partition& b);

inline int key_size(const Partition& k) { return k.size(); }
inline int key_size(const PartPair& k) { return k.size(); }
inline Partition key_scaled(const Partition& k, int j) { return k.scaled(j); }
inline PartPair key_scaled(const PartPair& k, int j) { return {k.a.scaled(j), k.b.scaled(j)}; }

template <class Key> Key empty_key() { return Key{}; }

// Multiplies two monomial keys, calling emit(key, count) per term of degree <= D.
template <class F> void key_product(const Partition& a, const Partition& b, int D, F&& emit) {
    if (a.size() + b.size() > D) return;
    for (const auto& [nu, c] : mono_product(a, b)) emit(nu, c);
}
template <class F> void key_product(const PartPair& a, const PartPair& b, int D, F&& emit) {
    if (a.size() + b.size() > D) return;
    const auto& l = mono_product(a.a, b.a);
    const auto& r = mono_product(a.b, b.b);
    for (const auto& [x, cx] : l)
        for (const auto& [y, cy] : r) emit(PartPair{x, y}, cx * cy);
}

// Scalar times a rational, rejecting fractions for non-Q-algebras.
template <class S> S scale(const S& x, const Rat& r) {
    if constexpr (scalar_traits<S>::is_q_algebra) {
        return x * S(r);
    } else {
        if (!r.is_integer()) throw std::domain_error("coefficient ring is not a Q-algebra");
        return x * S(r.num());
    }
}

// Degree-truncated symmetric series, stored in the monomial basis.
template <class Key, class S> class Series {
public:
    using key_type = Key;
    using scalar_type = S;

    Series() = default;
    explicit Series(int D) : D_(D) {
        if (D < 0) throw std::invalid_argument("Series: negative truncation");
    }

    static Series constant(const S& c, int D) {
        Series r(D);
        r.add(empty_key<Key>(), c);
        return r;
    }
    static Series one(int D) { return constant(S(1), D); }
    static Series monomial(const Key& k, const S& c, int D) {
        Series r(D);
        r.add(k, c);
        return r;
    }

    int trunc() const { return D_; }
    const std::map<Key, S>& terms() const { return t_; }
    S coeff(const Key& k) const {
        auto it = t_.find(k);
        return it == t_.end() ? S(0) : it->second;
    }
    S constant_term() const { return coeff(empty_key<Key>()); }
    bool has_key(const Key& k) const { return t_.count(k) > 0; }
    int max_degree() const {
        int m = -1;
        for (const auto& kv : t_) m = std::max(m, key_size(kv.first));
        return m;
    }

    void add(const Key& k, const S& c) {
        if (key_size(k) > D_) return;
        auto it = t_.find(k);
        if (it == t_.end()) {
            if (!is_exact_zero(c)) t_.emplace(k, c);
            return;
        }
        it->second += c;
        if (is_exact_zero(it->second)) t_.erase(it);
    }
    void set(const Key& k, const S& c) {
        if (key_size(k) > D_) throw std::invalid_argument("Series: key exceeds truncation");
        t_.erase(k);
        add(k, c);
    }

    Series& operator+=(const Series& o) {
        check(o);
        for (const auto& [k, c] : o.t_) add(k, c);
        return *this;
    }
    Series& operator-=(const Series& o) {
        check(o);
        for (const auto& [k, c] : o.t_) add(k, -c);
        return *this;
    }
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    Series operator-() const {
        Series r(D_);
        for (const auto& [k, c] : t_) r.t_.emplace(k, -c);
        return r;
    }
    Series scaled(const S& s) const {
        Series r(D_);
        for (const auto& [k, c] : t_) r.add(k, c * s);
        return r;
    }
    Series scaled_rat(const Rat& s) const {
        Series r(D_);
        for (const auto& [k, c] : t_) r.add(k, scale(c, s));
        return r;
    }
    friend Series operator*(const Series& a, const Series& b) {
        a.check(b);
        Series r(a.D_);
        for (const auto& [ka, ca] : a.t_) {
            int da = key_size(ka);
            for (const auto& [kb, cb] : b.t_) {
                if (da + key_size(kb) > a.D_) continue;
                S prod = ca * cb;
                key_product(ka, kb, a.D_, [&](const Key& k, long c) { r.add(k, scale(prod, Rat(c))); });
            }
        }
        return r;
    }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    Series degree_part(int n) const {
        Series r(D_);
        for (const auto& [k, c] : t_)
            if (key_size(k) == n) r.t_.emplace(k, c);
        return r;
    }
    Series with_trunc(int D) const {
        Series r(D);
        for (const auto& [k, c] : t_) r.add(k, c);
        return r;
    }
    template <class F> auto map_coeffs(F&& f) const {
        using T = decltype(f(std::declval<const S&>()));
        Series<Key, T> r(D_);
        for (const auto& [k, c] : t_) r.add(k, f(c));
        return r;
    }

    // p_j applied to the variables only: m_tau -> m_{j tau}.
    Series dilate(int j) const {
        Series r(D_);
        for (const auto& [k, c] : t_)
            if (key_size(k) * j <= D_) r.add(key_scaled(k, j), c);
        return r;
    }
    // The full Adams operation p_j o f.
    Series adams_op(int j) const {
        Series r(D_);
        for (const auto& [k, c] : t_)
            if (key_size(k) * j <= D_) r.add(key_scaled(k, j), adams(j, c));
        return r;
    }

    friend bool operator==(const Series& a, const Series& b) {
        return a.D_ == b.D_ && a.t_ == b.t_;
    }

    void check(const Series& o) const {
        if (o.D_ != D_) throw std::invalid_argument("Series: mismatched truncation");
    }

private:
    int D_ = 0;
    std::map<Key, S> t_;
};

template <class S> using SymSeries = Series<Partition, S>;
template <class S> using BiSymSeries = Series<PartPair, S>;

// Basis element expanded in m, over Q.
SymSeries<Rat> basis_element(Basis b, const Partition& t, int D);

template <class S> SymSeries<S> basis_element_as(Basis b, const Partition& t, int D) {
    return basis_element(b, t, D).map_coeffs([](const Rat& r) { return scale(S(1), r); });
}

// sum_k h_k (or e_k, p_k) over the given degrees.
SymSeries<Rat> sum_of(Basis b, const std::vector<int>& degrees, int D);

// Lifts a one-alphabet series to the first or second alphabet.
template <class S> BiSymSeries<S> lift_first(const SymSeries<S>& f) {
    BiSymSeries<S> r(f.trunc());
    for (const auto& [k, c] : f.terms()) r.add(PartPair{k, Partition{}}, c);
    return r;
}
template <class S> BiSymSeries<S> lift_second(const SymSeries<S>& f) {
    BiSymSeries<S> r(f.trunc());
    for (const auto& [k, c] : f.terms()) r.add(PartPair{Partition{}, k}, c);
    return r;
}

namespace detail {
template <class S>
std::map<Partition, S> apply_rows(const std::map<Partition, S>& in, bool inverse, Basis b) {
    std::map<Partition, S> out;
    for (const auto& [mu, c] : in) {
        int n = mu.size();
        const RatMatrix& M = inverse ? inverse_transition(b, n) : transition(b, n);
        const auto& ps = partitions_of(n);
        const auto& row = M[partition_index(mu)];
        for (size_t j = 0; j < ps.size(); ++j) {
            if (row[j].is_zero()) continue;
            S v = scale(c, row[j]);
            auto it = out.find(ps[j]);
            if (it == out.end()) out.emplace(ps[j], v);
            else it->second += v;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = is_exact_zero(it->second) ? out.erase(it) : std::next(it);
    return out;
}
template <class S> void require_q(Basis b) {
    if constexpr (!scalar_traits<S>::is_q_algebra) {
        if (b == Basis::p || b == Basis::s)
            throw std::domain_error("to_basis: p and s bases need a Q-algebra of coefficients");
    }
}
} // namespace detail

// Coefficients of f in the requested basis.
template <class S> std::map<Partition, S> to_basis(const SymSeries<S>& f, Basis b) {
    detail::require_q<S>(b);
    if (b == Basis::m) return f.terms();
    return detail::apply_rows(f.terms(), true, b);
}

template <class S> SymSeries<S> from_basis(const std::map<Partition, S>& coeffs, Basis b, int D) {
    detail::require_q<S>(b);
    SymSeries<S> r(D);
    auto m = b == Basis::m ? coeffs : detail::apply_rows(coeffs, false, b);
    for (const auto& [k, c] : m) r.add(k, c);
    return r;
}

// Pair version: both alphabets converted.
template <class S> std::map<PartPair, S> to_basis(const BiSymSeries<S>& f, Basis b) {
    detail::require_q<S>(b);
    if (b == Basis::m) return f.terms();
    std::map<PartPair, S> out;
    for (const auto& [k, c] : f.terms()) {
        const auto& ra = inverse_transition(b, k.a.size())[partition_index(k.a)];
        const auto& rb = inverse_transition(b, k.b.size())[partition_index(k.b)];
        const auto& pa = partitions_of(k.a.size());
        const auto& pb = partitions_of(k.b.size());
        for (size_t i = 0; i < pa.size(); ++i) {
            if (ra[i].is_zero()) continue;
            for (size_t j = 0; j < pb.size(); ++j) {
                if (rb[j].is_zero()) continue;
                S v = scale(c, ra[i] * rb[j]);
                PartPair key{pa[i], pb[j]};
                auto it = out.find(key);
                if (it == out.end()) out.emplace(key, v);
                else it->second += v;
            }
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = is_exact_zero(it->second) ? out.erase(it) : std::next(it);
    return out;
}

// Hall pairing: <m_tau, h_mu> = delta.
template <class Key, class S> S hall(const Series<Key, S>& f, const Series<Key, S>& g) {
    f.check(g);
    auto gh = to_basis(g, Basis::h);
    S acc(0);
    for (const auto& [k, c] : f.terms()) {
        auto it = gh.find(k);
        if (it != gh.end()) acc += c * it->second;
    }
    return acc;
}

template <class S> SymSeries<S> omega(const SymSeries<S>& f) {
    SymSeries<S> r(f.trunc());
    for (const auto& [mu, c] : f.terms()) {
        const auto& row = omega_matrix(mu.size())[partition_index(mu)];
        const auto& ps = partitions_of(mu.size());
        for (size_t j = 0; j < ps.size(); ++j)
            if (!row[j].is_zero()) r.add(ps[j], scale(c, row[j]));
    }
    return r;
}

template <class S> BiSymSeries<S> omega(const BiSymSeries<S>& f) {
    BiSymSeries<S> r(f.trunc());
    for (const auto& [k, c] : f.terms()) {
        const auto& ra = omega_matrix(k.a.size())[partition_index(k.a)];
        const auto& rb = omega_matrix(k.b.size())[partition_index(k.b)];
        const auto& pa = partitions_of(k.a.size());
        const auto& pb = partitions_of(k.b.size());
        for (size_t i = 0; i < pa.size(); ++i) {
            if (ra[i].is_zero()) continue;
            for (size_t j = 0; j < pb.size(); ++j)
                if (!rb[j].is_zero()) r.add(PartPair{pa[i], pb[j]}, scale(c, ra[i] * rb[j]));
        }
    }
    return r;
}

} // namespace lp
