#pragma once

#include "lamprob/plethy.hpp"
#include "lamprob/rat.hpp"
#include "lamprob/symfunc.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lp {

// Truncated big Witt vector in ghost coordinates over a Q-algebra K.
//
// A vector is either finite (ghosts a_1..a_N) or diagonal: the image of a
// scalar c under K -> W(K), with every ghost equal to c and no length limit.
// Binary operations on two finite vectors keep the shorter length.
template <class K> class WittTrunc {
public:
    WittTrunc() : c_(0) {}
    WittTrunc(int v) : c_(K(v)) {}
    WittTrunc(long v) : c_(K(v)) {}
    WittTrunc(const Rat& r) : c_(K(r)) {}

    static WittTrunc diagonal(const K& c) {
        WittTrunc w;
        w.c_ = c;
        return w;
    }
    static WittTrunc from_ghosts(std::vector<K> g) {
        WittTrunc w;
        w.diag_ = false;
        w.g_ = std::move(g);
        return w;
    }
    static WittTrunc unit(int N) { return from_ghosts(std::vector<K>(N, K(1))); }
    static WittTrunc zero(int N) { return from_ghosts(std::vector<K>(N, K(0))); }

    bool is_diagonal() const { return diag_; }
    int length() const { return diag_ ? INT_MAX : static_cast<int>(g_.size()); }
    const K& diagonal_value() const { return c_; }

    // 1-based ghost access.
    K ghost(int i) const {
        if (i < 1) throw std::out_of_range("ghost index must be >= 1");
        if (diag_) return c_;
        if (i > length()) throw std::out_of_range("ghost index " + std::to_string(i) + " beyond Witt length " + std::to_string(length()));
        return g_[i - 1];
    }
    std::vector<K> ghosts(int N) const {
        std::vector<K> out;
        out.reserve(N);
        for (int i = 1; i <= N; ++i) out.push_back(ghost(i));
        return out;
    }
    WittTrunc truncated(int N) const { return from_ghosts(ghosts(N)); }

    WittTrunc& operator+=(const WittTrunc& o) { return zip(o, [](K& a, const K& b) { a += b; }); }
    WittTrunc& operator-=(const WittTrunc& o) { return zip(o, [](K& a, const K& b) { a -= b; }); }
    WittTrunc& operator*=(const WittTrunc& o) { return zip(o, [](K& a, const K& b) { a *= b; }); }
    friend WittTrunc operator+(WittTrunc a, const WittTrunc& b) { return a += b; }
    friend WittTrunc operator-(WittTrunc a, const WittTrunc& b) { return a -= b; }
    friend WittTrunc operator*(WittTrunc a, const WittTrunc& b) { return a *= b; }
    WittTrunc operator-() const {
        WittTrunc r = *this;
        r.c_ = -r.c_;
        for (auto& x : r.g_) x = -x;
        return r;
    }
    // Componentwise inverse; throws if some ghost is zero.
    WittTrunc inv() const {
        WittTrunc r = *this;
        auto f = [](K& x) {
            if (is_exact_zero(x)) throw std::domain_error("Witt inverse: zero ghost component");
            x = K(1) / x;
        };
        if (diag_) f(r.c_);
        for (auto& x : r.g_) f(x);
        return r;
    }

    // Equality on the common length (diagonal vectors compare everywhere).
    friend bool operator==(const WittTrunc& a, const WittTrunc& b) {
        if (a.diag_ && b.diag_) return a.c_ == b.c_;
        const int n = std::min(a.length(), b.length());
        for (int i = 1; i <= n; ++i)
            if (!(a.ghost(i) == b.ghost(i))) return false;
        return true;
    }

    // Ghost dilation p_j o w: (a_j, a_2j, ...).
    WittTrunc dilated(int j) const {
        if (j < 1) throw std::invalid_argument("Adams index must be >= 1");
        if (diag_) return *this;
        std::vector<K> g;
        for (int i = j; i <= length(); i += j) g.push_back(g_[i - 1]);
        return from_ghosts(std::move(g));
    }

    std::string str() const {
        if (diag_) return "diag(" + to_string(c_) + ")";
        std::string s = "(";
        for (size_t i = 0; i < g_.size(); ++i) s += (i ? ", " : "") + to_string(g_[i]);
        return s + ")";
    }

private:
    bool diag_ = true;
    K c_;
    std::vector<K> g_;

    template <class Op> WittTrunc& zip(const WittTrunc& o, Op op) {
        if (diag_ && o.diag_) {
            op(c_, o.c_);
            return *this;
        }
        if (diag_) {
            std::vector<K> g(o.g_.size(), c_);
            for (size_t i = 0; i < g.size(); ++i) op(g[i], o.g_[i]);
            *this = from_ghosts(std::move(g));
            return *this;
        }
        if (!o.diag_ && o.g_.size() < g_.size()) g_.resize(o.g_.size());
        for (size_t i = 0; i < g_.size(); ++i) op(g_[i], o.diag_ ? o.c_ : o.g_[i]);
        return *this;
    }
};

template <class K> WittTrunc<K> adams(int k, const WittTrunc<K>& w) { return w.dilated(k); }
// Only the diagonal zero is pruned from series; a finite zero vector still
// carries its length, which later products need.
template <class K> bool is_exact_zero(const WittTrunc<K>& w) {
    return w.is_diagonal() && is_exact_zero(w.diagonal_value());
}
template <class K> std::string to_string(const WittTrunc<K>& w) { return w.str(); }

template <class K> WittTrunc<K> adams_witt(int j, const WittTrunc<K>& w, int out_len) {
    if (!w.is_diagonal() && static_cast<long>(j) * out_len > w.length())
        throw std::invalid_argument("adams_witt: need length " + std::to_string(j * out_len) + ", have " +
                                    std::to_string(w.length()));
    return w.dilated(j).truncated(out_len);
}

// Ghosts of 1 + c_1 t + ... + c_N t^N are the coefficients of t dlog.
template <class K> WittTrunc<K> from_series(const std::vector<K>& c) {
    if (c.empty() || !(c[0] == K(1))) throw std::invalid_argument("from_series: constant term must be 1");
    const int N = static_cast<int>(c.size()) - 1;
    std::vector<K> g(N);
    for (int n = 1; n <= N; ++n) {
        K v = K(n) * c[n];
        for (int k = 1; k < n; ++k) v -= g[k - 1] * c[n - k];
        g[n - 1] = v;
    }
    return WittTrunc<K>::from_ghosts(std::move(g));
}

template <class K> std::vector<K> to_series(const WittTrunc<K>& w, int N) {
    std::vector<K> c(N + 1, K(0));
    c[0] = K(1);
    for (int n = 1; n <= N; ++n) {
        K v(0);
        for (int k = 1; k <= n; ++k) v += w.ghost(k) * c[n - k];
        c[n] = v * K(Rat(1, n));
    }
    return c;
}

template <class K> WittTrunc<K> teichmuller(const K& z, int N) {
    std::vector<K> g;
    K p = z;
    for (int i = 1; i <= N; ++i) {
        g.push_back(p);
        p *= z;
    }
    return WittTrunc<K>::from_ghosts(std::move(g));
}

// alpha(t) -> alpha(t^k): ghost_i = k * ghost_{i/k} when k | i.
template <class K> WittTrunc<K> substitute_tk(const WittTrunc<K>& w, int k) {
    const int N = w.length();
    if (N == INT_MAX) throw std::invalid_argument("substitute_tk: diagonal vector has no finite length");
    std::vector<K> g(N, K(0));
    for (int i = k; i <= N; i += k) g[i - 1] = K(k) * w.ghost(i / k);
    return WittTrunc<K>::from_ghosts(std::move(g));
}

// Admissible Z-set, described by orbit degrees with multiplicities.
struct Orbit {
    int degree;
    mpz_class mult;
};

class AdmZSet {
public:
    AdmZSet() = default;
    explicit AdmZSet(std::vector<Orbit> o) : orbits_(std::move(o)) {
        for (const auto& x : orbits_)
            if (x.degree < 1 || x.mult < 0) throw std::invalid_argument("AdmZSet: bad orbit");
    }
    // Mobius inversion of point counts #S(k), k = 1..counts.size().
    static AdmZSet from_point_counts(const std::vector<mpz_class>& counts) {
        std::vector<Orbit> o;
        for (int d = 1; d <= static_cast<int>(counts.size()); ++d) {
            mpz_class s = 0;
            for (int e = 1; e <= d; ++e)
                if (d % e == 0) s += mobius(d / e) * counts[e - 1];
            if (s % d != 0) throw std::invalid_argument("from_point_counts: not the counts of a Z-set");
            s /= d;
            if (s < 0) throw std::invalid_argument("from_point_counts: negative orbit count");
            if (s != 0) o.push_back({d, s});
        }
        return AdmZSet(std::move(o));
    }
    // A^m and P^m over F_q, orbits up to degree N.
    static AdmZSet affine_space(long q, int m, int N) {
        std::vector<mpz_class> c;
        for (int k = 1; k <= N; ++k) c.push_back(zpow(q, static_cast<long>(k) * m));
        return from_point_counts(c);
    }
    static AdmZSet projective_space(long q, int m, int N) {
        std::vector<mpz_class> c;
        for (int k = 1; k <= N; ++k) {
            mpz_class s = 0;
            for (int j = 0; j <= m; ++j) s += zpow(q, static_cast<long>(k) * j);
            c.push_back(s);
        }
        return from_point_counts(c);
    }

    const std::vector<Orbit>& orbits() const { return orbits_; }
    mpz_class point_count(int k) const {
        mpz_class s = 0;
        for (const auto& o : orbits_)
            if (k % o.degree == 0) s += o.degree * o.mult;
        return s;
    }
    AdmZSet disjoint_union(const AdmZSet& o) const {
        auto v = orbits_;
        v.insert(v.end(), o.orbits_.begin(), o.orbits_.end());
        return AdmZSet(std::move(v));
    }

private:
    std::vector<Orbit> orbits_;
};

template <class K> K from_mpz(const mpz_class& z) { return K(Rat(z)); }

template <class K> WittTrunc<K> class_of(const AdmZSet& S, int N) {
    std::vector<K> g;
    for (int k = 1; k <= N; ++k) g.push_back(from_mpz<K>(S.point_count(k)));
    return WittTrunc<K>::from_ghosts(std::move(g));
}

// One value per entry of S.orbits(); the value is shared by all orbits of the entry.
template <class K> using WFunction = std::vector<WittTrunc<K>>;

template <class K> WittTrunc<K> integrate(const AdmZSet& S, const WFunction<K>& f, int N) {
    if (f.size() != S.orbits().size()) throw std::invalid_argument("integrate: function misses orbit values");
    std::vector<K> g(N, K(0));
    for (size_t j = 0; j < f.size(); ++j) {
        const int d = S.orbits()[j].degree;
        const K w = from_mpz<K>(d * S.orbits()[j].mult);
        for (int i = d; i <= N; i += d) g[i - 1] += w * f[j].ghost(i / d);
    }
    return WittTrunc<K>::from_ghosts(std::move(g));
}

template <class K> K expectation_component(const AdmZSet& S, const WFunction<K>& f, int k) {
    mpz_class n = S.point_count(k);
    if (n == 0) throw std::domain_error("expectation: empty level set S(" + std::to_string(k) + ")");
    return integrate(S, f, k).ghost(k) * K(Rat(mpq_class(mpz_class(1), n)));
}

template <class K> WittTrunc<K> expectation(const AdmZSet& S, const WFunction<K>& f, int N) {
    std::vector<K> g;
    for (int k = 1; k <= N; ++k) g.push_back(expectation_component(S, f, k));
    return WittTrunc<K>::from_ghosts(std::move(g));
}

// f_w(v) = p_deg(v) o w
template <class K> WFunction<K> pullback_from_point(const WittTrunc<K>& w, const AdmZSet& V) {
    WFunction<K> f;
    for (const auto& o : V.orbits()) f.push_back(w.dilated(o.degree));
    return f;
}

// Points of S(k) as degree-one orbits; res_k(f)(s) = p_{k/deg s} o f(s).
template <class K> std::pair<AdmZSet, WFunction<K>> res_k(const AdmZSet& S, const WFunction<K>& f, int k) {
    std::vector<Orbit> pts;
    WFunction<K> vals;
    for (size_t j = 0; j < S.orbits().size(); ++j) {
        const auto& o = S.orbits()[j];
        if (k % o.degree) continue;
        pts.push_back({1, o.degree * o.mult});
        vals.push_back(f[j].dilated(k / o.degree));
    }
    return {AdmZSet(std::move(pts)), std::move(vals)};
}

// Coefficientwise ghost-j projection of a series over W(K).
template <class Key, class K> Series<Key, K> ghost_projection(const Series<Key, WittTrunc<K>>& F, int j) {
    return F.map_coeffs([j](const WittTrunc<K>& w) { return w.ghost(j); });
}

// Lifts a series over K to W(K) with diagonal coefficients.
template <class Key, class K> Series<Key, WittTrunc<K>> diagonal_lift(const Series<Key, K>& f) {
    return f.map_coeffs([](const K& c) { return WittTrunc<K>::diagonal(c); });
}

// Ghost-i projection of F^{[V]} as a product over the closed points of V
// after base change: an orbit of degree d splits into gcd(i, d) orbits of
// degree d / gcd(i, d), each contributing F_{i deg}(t^deg).
template <class Key, class K>
Series<Key, K> power_euler(const Series<Key, WittTrunc<K>>& F, const AdmZSet& V, int i) {
    const int D = F.trunc();
    if (!(F.constant_term() == WittTrunc<K>(1))) throw std::domain_error("power_euler: constant term must be 1");
    Series<Key, K> out = Series<Key, K>::one(D);
    for (const auto& o : V.orbits()) {
        const int g = std::gcd(i, o.degree);
        const int mu = o.degree / g;
        if (mu > D || o.mult == 0) continue;
        Series<Key, K> slice = ghost_projection(F, i * mu).dilate(mu);
        out *= classical_pow(slice, Rat(mpz_class(g * o.mult)));
    }
    return out;
}

} // namespace lp
