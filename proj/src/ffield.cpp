#include "lamprob/ffield.hpp"

#include "lamprob/rat.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace lp {

void prime_power(long q, long& p, int& n) {
    if (q < 2) throw std::invalid_argument("not a prime power: " + std::to_string(q));
    p = 0;
    for (long d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (!p) p = q;
    n = 0;
    long r = q;
    while (r % p == 0) {
        r /= p;
        ++n;
    }
    if (r != 1) throw std::invalid_argument("not a prime power: " + std::to_string(q));
}

namespace {

std::vector<int> digits(long v, long p, int n) {
    std::vector<int> d(n);
    for (int j = 0; j < n; ++j) {
        d[j] = static_cast<int>(v % p);
        v /= p;
    }
    return d;
}

long encode(const std::vector<int>& d, long p) {
    long v = 0;
    for (int j = static_cast<int>(d.size()) - 1; j >= 0; --j) v = v * p + d[j];
    return v;
}

// Multiplies the residue r (n digits) by x modulo the monic m.
void times_x(std::vector<int>& r, const std::vector<int>& m, long p) {
    const int n = static_cast<int>(r.size());
    int top = r[n - 1];
    for (int j = n - 1; j > 0; --j) r[j] = r[j - 1];
    r[0] = 0;
    if (top)
        for (int j = 0; j < n; ++j) r[j] = static_cast<int>(((r[j] - static_cast<long>(top) * m[j]) % p + p) % p);
}

} // namespace

GF::GF(long p, int n) : p_(p), n_(n), q_(ipow(p, n)) {
    long pp;
    int nn;
    prime_power(p, pp, nn);
    if (nn != 1) throw std::invalid_argument("GF: characteristic must be prime");
    if (q_ > (1L << 24)) throw std::invalid_argument("GF: field too large for table arithmetic");
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    if (q_ == 2) {
        mod_ = {1, 1}; // x + 1: the class of x is 1
        exp_[0] = 1;
        log_[1] = 0;
    } else {
        // Smallest monic m of degree n whose root x has order q - 1.
        for (long cand = 0; cand < q_; ++cand) {
            std::vector<int> m = digits(cand, p, n);
            if (m[0] == 0) continue;
            m.push_back(1);
            std::vector<int> r(n, 0);
            if (n == 1) r[0] = static_cast<int>((p - m[0]) % p); // x = -m0
            else r[1] = 1;
            std::vector<Elt> seq;
            std::vector<char> seen(q_, 0);
            std::vector<int> cur = r;
            bool ok = true;
            for (long k = 0; k < q_ - 1; ++k) {
                long e = encode(cur, p);
                if (e == 0 || seen[e]) {
                    ok = false;
                    break;
                }
                seen[e] = 1;
                seq.push_back(static_cast<Elt>(e));
                if (n == 1) cur[0] = static_cast<int>((static_cast<long>(cur[0]) * r[0]) % p);
                else times_x(cur, m, p);
            }
            if (!ok) continue;
            mod_ = m;
            // seq[k] = x^{k+1}; shift so exp_[k] = x^k.
            exp_[0] = 1;
            for (long k = 1; k < q_ - 1; ++k) exp_[k] = seq[k - 1];
            break;
        }
        if (mod_.empty()) throw std::logic_error("GF: no primitive polynomial found");
        for (long k = 0; k < q_ - 1; ++k) log_[exp_[k]] = static_cast<std::uint32_t>(k);
    }
    xor_add_ = (p == 2);
    if (!xor_add_ && q_ <= 1024) {
        add_table_.resize(q_ * q_);
        for (long a = 0; a < q_; ++a)
            for (long b = 0; b < q_; ++b) add_table_[a * q_ + b] = add_digits(static_cast<Elt>(a), static_cast<Elt>(b));
    }
}

const GF& GF::get(long q) {
    static std::mutex mu;
    static std::map<long, std::unique_ptr<GF>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it != cache.end()) return *it->second;
    long p;
    int n;
    prime_power(q, p, n);
    return *cache.emplace(q, std::make_unique<GF>(p, n)).first->second;
}

GF::Elt GF::add_digits(Elt a, Elt b) const {
    Elt r = 0, scale = 1;
    for (int j = 0; j < n_; ++j) {
        Elt d = static_cast<Elt>((a % p_ + b % p_) % p_);
        r += d * scale;
        scale *= static_cast<Elt>(p_);
        a /= static_cast<Elt>(p_);
        b /= static_cast<Elt>(p_);
    }
    return r;
}

GF::Elt GF::add(Elt a, Elt b) const {
    if (xor_add_) return a ^ b;
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
    return add_digits(a, b);
}

GF::Elt GF::neg(Elt a) const {
    if (xor_add_ || !a) return a;
    Elt r = 0, scale = 1;
    for (int j = 0; j < n_; ++j) {
        Elt d = static_cast<Elt>((p_ - a % p_) % p_);
        r += d * scale;
        scale *= static_cast<Elt>(p_);
        a /= static_cast<Elt>(p_);
    }
    return r;
}

GF::Elt GF::inv(Elt a) const {
    if (!a) throw std::domain_error("GF: inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

GF::Elt GF::exp(long long k) const {
    long long m = k % (q_ - 1);
    if (m < 0) m += q_ - 1;
    return exp_[m];
}

GF::Elt GF::pow(Elt a, long long e) const {
    if (e == 0) return 1;
    if (!a) return 0;
    return exp(static_cast<long long>(log_[a]) * (e % (q_ - 1)));
}

GF::Elt GF::from_int(long v) const {
    v %= p_;
    if (v < 0) v += p_;
    return static_cast<Elt>(v);
}

std::string GF::str(Elt a) const { return std::to_string(a); }

int deg(const FqPoly& f) { return static_cast<int>(f.size()) - 1; }

void poly_trim(FqPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

FqPoly poly_mul(const GF& F, const FqPoly& a, const FqPoly& b) {
    if (a.empty() || b.empty()) return {};
    FqPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    poly_trim(r);
    return r;
}

namespace {

// a = q*b + r; returns r and fills quotient when requested.
FqPoly divmod(const GF& F, FqPoly a, const FqPoly& b, FqPoly* quot) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    poly_trim(a);
    const int db = deg(b);
    const GF::Elt lead_inv = F.inv(b.back());
    if (quot) quot->assign(std::max(0, deg(a) - db + 1), 0);
    while (deg(a) >= db) {
        const int shift = deg(a) - db;
        const GF::Elt c = F.mul(a.back(), lead_inv);
        if (quot) (*quot)[shift] = c;
        for (int j = 0; j <= db; ++j) a[shift + j] = F.sub(a[shift + j], F.mul(c, b[j]));
        poly_trim(a);
    }
    return a;
}

} // namespace

FqPoly poly_mod(const GF& F, const FqPoly& a, const FqPoly& b) { return divmod(F, a, b, nullptr); }

FqPoly poly_divexact(const GF& F, const FqPoly& a, const FqPoly& b) {
    FqPoly q;
    FqPoly r = divmod(F, a, b, &q);
    if (!r.empty()) throw std::domain_error("poly_divexact: nonzero remainder");
    poly_trim(q);
    return q;
}

FqPoly poly_gcd(const GF& F, FqPoly a, FqPoly b) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        FqPoly r = poly_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        GF::Elt li = F.inv(a.back());
        for (auto& c : a) c = F.mul(c, li);
    }
    return a;
}

FqPoly poly_deriv(const GF& F, const FqPoly& a) {
    FqPoly r;
    for (size_t j = 1; j < a.size(); ++j) r.push_back(F.mul(F.from_int(static_cast<long>(j)), a[j]));
    poly_trim(r);
    return r;
}

GF::Elt poly_eval(const GF& F, const FqPoly& f, GF::Elt x) {
    GF::Elt v = 0;
    for (int j = deg(f); j >= 0; --j) v = F.add(F.mul(v, x), f[j]);
    return v;
}

GF::Elt resultant(const GF& F, const FqPoly& a0, const FqPoly& b0) {
    FqPoly a = a0, b = b0;
    poly_trim(a);
    poly_trim(b);
    if (a.empty() || b.empty()) return 0;
    GF::Elt acc = 1;
    // Res(A,B) = (-1)^{deg A deg B} lc(B)^{deg A - deg R} Res(B, R), R = A mod B.
    while (true) {
        const int da = deg(a), db = deg(b);
        if (db == 0) return F.mul(acc, F.pow(b[0], da));
        if (da == 0) return F.mul(acc, F.pow(a[0], db));
        FqPoly r = poly_mod(F, a, b);
        if (r.empty()) return 0;
        if ((static_cast<long>(da) * db) % 2) acc = F.neg(acc);
        acc = F.mul(acc, F.pow(b.back(), da - deg(r)));
        a = std::move(b);
        b = std::move(r);
    }
}

FqPoly monic_from_index(const GF& F, int d, std::uint64_t idx) {
    FqPoly f(d + 1);
    const std::uint64_t Q = static_cast<std::uint64_t>(F.size());
    for (int j = 0; j < d; ++j) {
        f[j] = static_cast<GF::Elt>(idx % Q);
        idx /= Q;
    }
    f[d] = 1;
    return f;
}

long long count_irreducibles(long long Q, int e) {
    mpz_class s = 0;
    for (int d = 1; d <= e; ++d)
        if (e % d == 0) s += mobius(e / d) * zpow(Q, d);
    s /= e;
    return s.get_si();
}

std::vector<FqPoly> monic_irreducibles(const GF& F, int e) {
    static std::mutex mu;
    static std::map<std::pair<long, int>, std::vector<FqPoly>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({F.size(), e});
        if (it != cache.end()) return it->second;
    }
    std::vector<FqPoly> smaller;
    for (int k = 1; 2 * k <= e; ++k) {
        auto v = monic_irreducibles(F, k);
        smaller.insert(smaller.end(), v.begin(), v.end());
    }
    std::vector<FqPoly> out;
    const std::uint64_t n = static_cast<std::uint64_t>(ipow(F.size(), e));
    for (std::uint64_t idx = 0; idx < n; ++idx) {
        FqPoly f = monic_from_index(F, e, idx);
        if (e > 1 && f[0] == 0) continue;
        bool irr = true;
        for (const auto& g : smaller)
            if (poly_mod(F, f, g).empty()) {
                irr = false;
                break;
            }
        if (irr) out.push_back(std::move(f));
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::make_pair(F.size(), e), std::move(out)).first->second;
}

GF::Elt smallest_root(const GF& F, const std::vector<int>& poly) {
    FqPoly f;
    for (int c : poly) f.push_back(F.from_int(c));
    poly_trim(f);
    for (long x = 0; x < F.size(); ++x)
        if (poly_eval(F, f, static_cast<GF::Elt>(x)) == 0) return static_cast<GF::Elt>(x);
    throw std::invalid_argument("smallest_root: polynomial has no root in the field");
}

std::vector<GF::Elt> subfield_embedding(const GF& small, const GF& big) {
    if (small.p() != big.p() || big.degree() % small.degree())
        throw std::invalid_argument("subfield_embedding: not a subfield");
    std::vector<GF::Elt> img(small.size());
    if (small.degree() == 1) {
        for (long e = 0; e < small.size(); ++e) img[e] = big.from_int(e);
        return img;
    }
    const GF::Elt r = smallest_root(big, small.modulus());
    for (long e = 0; e < small.size(); ++e) {
        GF::Elt v = 0, rp = 1;
        long digits = e;
        for (int j = 0; j < small.degree(); ++j) {
            v = big.add(v, big.mul(big.from_int(digits % small.p()), rp));
            digits /= small.p();
            rp = big.mul(rp, r);
        }
        img[e] = v;
    }
    return img;
}

} // namespace lp
