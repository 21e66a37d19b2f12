#include "lamprob/symfunc.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace lp {

Basis parse_basis(const std::string& s) {
    if (s == "m") return Basis::m;
    if (s == "h") return Basis::h;
    if (s == "e") return Basis::e;
    if (s == "p") return Basis::p;
    if (s == "s") return Basis::s;
    throw std::invalid_argument("unknown basis '" + s + "'");
}

std::string basis_name(Basis b) {
    switch (b) {
    case Basis::m: return "m";
    case Basis::h: return "h";
    case Basis::e: return "e";
    case Basis::p: return "p";
    case Basis::s: return "s";
    }
    return "?";
}

namespace {

// Number of distinct arrangements of the parts of t padded with zeros to length len.
mpz_class arrangements(const Partition& t, int len) {
    mpz_class r = factorial(len);
    std::map<int, int> mult;
    for (int x : t.parts()) ++mult[x];
    mult[0] = len - t.length();
    for (auto [v, m] : mult) r /= factorial(m);
    return r;
}

std::vector<std::pair<Partition, long>> compute_product(const Partition& a, const Partition& b) {
    const int len = a.length() + b.length();
    std::vector<int> fixed = a.parts();
    fixed.resize(len, 0);
    std::vector<int> arr = b.parts();
    arr.resize(len, 0);
    std::sort(arr.begin(), arr.end());
    std::map<Partition, long> hits;
    do {
        std::vector<int> s(len);
        for (int i = 0; i < len; ++i) s[i] = fixed[i] + arr[i];
        ++hits[Partition(std::move(s))];
    } while (std::next_permutation(arr.begin(), arr.end()));
    // Each monomial in the orbit of nu receives the same count; rescale from
    // "first factor pinned" to a single monomial.
    const mpz_class na = arrangements(a, len);
    std::vector<std::pair<Partition, long>> out;
    for (const auto& [nu, h] : hits) {
        mpz_class c = na * h / arrangements(nu, len);
        out.emplace_back(nu, c.get_si());
    }
    return out;
}

std::mutex g_mu;

} // namespace

const std::vector<std::pair<Partition, long>>& mono_product(const Partition& a, const Partition& b) {
    static std::map<std::pair<Partition, Partition>, std::vector<std::pair<Partition, long>>> cache;
    const auto key = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
    {
        std::lock_guard<std::mutex> lock(g_mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto v = compute_product(key.first, key.second);
    std::lock_guard<std::mutex> lock(g_mu);
    return cache.emplace(key, std::move(v)).first->second;
}

int partition_index(const Partition& t) {
    static std::mutex mu;
    static std::map<Partition, int> idx;
    std::lock_guard<std::mutex> lock(mu);
    auto it = idx.find(t);
    if (it != idx.end()) return it->second;
    const auto& ps = partitions_of(t.size());
    for (size_t i = 0; i < ps.size(); ++i) idx.emplace(ps[i], static_cast<int>(i));
    return idx.at(t);
}

namespace {

long kostka_rec(const std::vector<int>& lam, const std::vector<int>& mu, int k,
                std::map<std::pair<std::vector<int>, int>, long>& memo) {
    // Fill the first k entries of mu; lam is the current shape.
    if (k == 0) {
        for (int x : lam)
            if (x) return 0;
        return 1;
    }
    auto key = std::make_pair(lam, k);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const int r = mu[k - 1];
    long total = 0;
    // Remove a horizontal strip of size r: new row i in [lam[i+1], lam[i]].
    std::vector<int> cur(lam.size());
    std::function<void(size_t, int)> go = [&](size_t i, int rem) {
        if (i == lam.size()) {
            if (rem == 0) total += kostka_rec(cur, mu, k - 1, memo);
            return;
        }
        int lo = i + 1 < lam.size() ? lam[i + 1] : 0;
        for (int v = lam[i]; v >= lo; --v) {
            int take = lam[i] - v;
            if (take > rem) break;
            cur[i] = v;
            go(i + 1, rem - take);
        }
    };
    go(0, r);
    memo.emplace(key, total);
    return total;
}

} // namespace

long kostka(const Partition& lambda, const Partition& mu) {
    if (lambda.size() != mu.size()) return 0;
    if (!dominates(lambda, mu)) return 0;
    std::map<std::pair<std::vector<int>, int>, long> memo;
    return kostka_rec(lambda.parts(), mu.parts(), mu.length(), memo);
}

namespace {

SymSeries<Rat> single(Basis b, int k, int D) {
    SymSeries<Rat> r(D);
    if (k == 0) return SymSeries<Rat>::one(D);
    switch (b) {
    case Basis::h:
        for (const auto& t : partitions_of(k)) r.add(t, Rat(1));
        break;
    case Basis::e: r.add(Partition(std::vector<int>(k, 1)), Rat(1)); break;
    case Basis::p: r.add(Partition{k}, Rat(1)); break;
    default: throw std::logic_error("single: multiplicative bases only");
    }
    return r;
}

RatMatrix build_transition(Basis b, int n) {
    const auto& ps = partitions_of(n);
    RatMatrix M(ps.size(), std::vector<Rat>(ps.size()));
    for (size_t i = 0; i < ps.size(); ++i) {
        if (b == Basis::m) {
            M[i][i] = Rat(1);
        } else if (b == Basis::s) {
            for (size_t j = 0; j < ps.size(); ++j) M[i][j] = Rat(kostka(ps[i], ps[j]));
        } else {
            SymSeries<Rat> f = SymSeries<Rat>::one(n);
            for (int x : ps[i].parts()) f *= single(b, x, n);
            for (size_t j = 0; j < ps.size(); ++j) M[i][j] = f.coeff(ps[j]);
        }
    }
    return M;
}

RatMatrix invert(const RatMatrix& A) {
    const size_t n = A.size();
    RatMatrix m(n, std::vector<Rat>(2 * n));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) m[i][j] = A[i][j];
        m[i][n + i] = Rat(1);
    }
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && m[piv][c].is_zero()) ++piv;
        if (piv == n) throw std::logic_error("transition matrix is singular");
        std::swap(m[piv], m[c]);
        Rat s = m[c][c].inv();
        for (auto& x : m[c]) x *= s;
        for (size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c].is_zero()) continue;
            Rat f = m[r][c];
            for (size_t k = c; k < 2 * n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    RatMatrix out(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out[i][j] = m[i][n + j];
    return out;
}

RatMatrix multiply(const RatMatrix& A, const RatMatrix& B) {
    const size_t n = A.size();
    RatMatrix C(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (A[i][k].is_zero()) continue;
            for (size_t j = 0; j < n; ++j)
                if (!B[k][j].is_zero()) C[i][j] += A[i][k] * B[k][j];
        }
    return C;
}

struct Caches {
    std::mutex mu;
    std::map<std::pair<int, int>, RatMatrix> fwd, inv;
    std::map<int, RatMatrix> om;
};
Caches& caches() {
    static Caches c;
    return c;
}

} // namespace

const RatMatrix& transition(Basis b, int n) {
    auto& c = caches();
    {
        std::lock_guard<std::mutex> lock(c.mu);
        auto it = c.fwd.find({static_cast<int>(b), n});
        if (it != c.fwd.end()) return it->second;
    }
    RatMatrix M = build_transition(b, n);
    std::lock_guard<std::mutex> lock(c.mu);
    return c.fwd.emplace(std::make_pair(static_cast<int>(b), n), std::move(M)).first->second;
}

const RatMatrix& inverse_transition(Basis b, int n) {
    auto& c = caches();
    {
        std::lock_guard<std::mutex> lock(c.mu);
        auto it = c.inv.find({static_cast<int>(b), n});
        if (it != c.inv.end()) return it->second;
    }
    RatMatrix M = invert(transition(b, n));
    std::lock_guard<std::mutex> lock(c.mu);
    return c.inv.emplace(std::make_pair(static_cast<int>(b), n), std::move(M)).first->second;
}

const RatMatrix& omega_matrix(int n) {
    auto& c = caches();
    {
        std::lock_guard<std::mutex> lock(c.mu);
        auto it = c.om.find(n);
        if (it != c.om.end()) return it->second;
    }
    RatMatrix W = multiply(inverse_transition(Basis::e, n), transition(Basis::h, n));
    std::lock_guard<std::mutex> lock(c.mu);
    return c.om.emplace(n, std::move(W)).first->second;
}

SymSeries<Rat> basis_element(Basis b, const Partition& t, int D) {
    if (t.size() > D) throw std::invalid_argument("basis_element: degree exceeds truncation");
    SymSeries<Rat> r(D);
    const auto& row = transition(b, t.size())[partition_index(t)];
    const auto& ps = partitions_of(t.size());
    for (size_t j = 0; j < ps.size(); ++j) r.add(ps[j], row[j]);
    return r;
}

SymSeries<Rat> sum_of(Basis b, const std::vector<int>& degrees, int D) {
    SymSeries<Rat> r(D);
    for (int k : degrees)
        if (k <= D) r += basis_element(b, k == 0 ? Partition{} : Partition{k}, D);
    return r;
}

} // namespace lp
