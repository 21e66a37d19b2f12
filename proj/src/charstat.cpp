#include "lamprob/charstat.hpp"

#include "lamprob/parallel.hpp"
#include "lamprob/plethy.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace lp {

namespace {

constexpr std::uint64_t kMaxEnumeration = 1ull << 25;

int mod_ell(long long v, int ell) { return static_cast<int>(((v % ell) + ell) % ell); }

int inverse_mod(int a, int ell) {
    for (int x = 1; x < ell; ++x)
        if ((static_cast<long>(a) * x) % ell == 1) return x;
    throw std::domain_error("inverse_mod: not invertible");
}

// Log of the embedded canonical root of unity of F_q inside F_Q, divided by (Q-1)/ell.
int omega_exponent(long q, long Q, int ell) {
    static std::mutex mu;
    static std::map<std::tuple<long, long, int>, int> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(q, Q, ell);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    const GF& Fq = GF::get(q);
    const GF& FQ = GF::get(Q);
    GF::Elt img = subfield_embedding(Fq, FQ)[Fq.exp((q - 1) / ell)];
    long step = (Q - 1) / ell;
    long lg = FQ.log(img);
    if (lg % step) throw std::logic_error("omega_exponent: embedded root has wrong order");
    int s = static_cast<int>((lg / step) % ell);
    cache.emplace(key, s);
    return s;
}

// Everything needed to evaluate chi_f at closed points of the working field.
struct Kummer {
    const GF* F;
    int ell;
    int mult; // chi_exp * s^{-1} mod ell

    Kummer(const FqCtx& ctx, const CharCtx& ch) : F(&ctx.field()), ell(ch.ell) {
        validate(ctx, ch);
        int s = omega_exponent(ctx.q, ctx.Q(), ch.ell);
        mult = mod_ell(static_cast<long long>(ch.chi_exp) * inverse_mod(s, ch.ell), ch.ell);
    }

    int index(const FqPoly& f, const FqPoly& P) const {
        GF::Elt r = deg(P) == 1 ? poly_eval(*F, f, F->neg(P[0])) : resultant(*F, P, f);
        if (!r) return -1;
        return mod_ell(static_cast<long long>(F->log(r)) * mult, ell);
    }

    // prod (1 - zeta^{j_P} T^{deg P}) over the given points, through T^N.
    std::vector<ZZeta> euler(const FqPoly& f, const std::vector<FqPoly>& pts, int N) const {
        std::vector<ZZeta> E(N + 1, ZZeta(ell, 0));
        E[0][0] = 1;
        for (const auto& P : pts) {
            const int e = deg(P);
            if (e > N) break;
            int j = index(f, P);
            if (j < 0) continue;
            for (int k = N; k >= e; --k)
                for (int a = 0; a < ell; ++a) E[k][(a + j) % ell] -= E[k - e][a];
        }
        return E;
    }
};

ZZeta zz_mul(const ZZeta& a, const ZZeta& b) {
    const int ell = static_cast<int>(a.size());
    ZZeta r(ell, 0);
    for (int x = 0; x < ell; ++x) {
        if (!a[x]) continue;
        for (int y = 0; y < ell; ++y) r[(x + y) % ell] += a[x] * b[y];
    }
    return r;
}

ZZeta zz_conj(const ZZeta& a) {
    const int ell = static_cast<int>(a.size());
    ZZeta r(ell, 0);
    for (int x = 0; x < ell; ++x) r[(ell - x) % ell] = a[x];
    return r;
}

Rat rat_from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 m = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(m >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(m)));
    mpz_class z = (hi << 64) + lo;
    if (neg) z = -z;
    return Rat(z);
}

CycloHalf from_zz(int ell, long q, const ZZeta& a) {
    std::vector<Rat> c;
    for (long long v : a) c.emplace_back(static_cast<long>(v));
    return CycloHalf::from_zeta_coeffs(ell, q, c);
}

void check_size(long long Q, int d) {
    long double n = 1;
    for (int j = 0; j < d; ++j) n *= Q;
    if (n > static_cast<long double>(kMaxEnumeration))
        throw std::length_error("enumeration of " + std::to_string(static_cast<long long>(n)) +
                                " monic polynomials exceeds the limit 2^25");
}

} // namespace

void validate(const FqCtx& ctx, const CharCtx& ch) {
    if (ch.ell != 2 && ch.ell != 3 && ch.ell != 5 && ch.ell != 7)
        throw std::invalid_argument("ell must be one of 2, 3, 5, 7");
    if ((ctx.q - 1) % ch.ell) throw std::invalid_argument("ell must divide q - 1");
    if (ch.chi_exp < 1 || ch.chi_exp >= ch.ell) throw std::invalid_argument("character exponent must lie in 1..ell-1");
    if (ctx.i < 1) throw std::invalid_argument("extension degree must be >= 1");
}

bool is_ellfree(const GF& F, const FqPoly& f, int ell) {
    if (ell == 2) return deg(poly_gcd(F, f, poly_deriv(F, f))) == 0;
    for (int e = 1; e * ell <= deg(f); ++e)
        for (const auto& P : monic_irreducibles(F, e)) {
            FqPoly g = f;
            int mult = 0;
            while (mult < ell && poly_mod(F, g, P).empty()) {
                g = poly_divexact(F, g, P);
                ++mult;
            }
            if (mult >= ell) return false;
        }
    return true;
}

std::vector<FqPoly> enumerate_ellfree(const FqCtx& ctx, int ell, int d) {
    if (d < 1) throw std::invalid_argument("enumerate_ellfree: d must be >= 1");
    check_size(ctx.Q(), d);
    const GF& F = ctx.field();
    std::vector<FqPoly> out;
    const std::uint64_t n = static_cast<std::uint64_t>(ipow(ctx.Q(), d));
    for (std::uint64_t idx = 0; idx < n; ++idx) {
        FqPoly f = monic_from_index(F, d, idx);
        if (is_ellfree(F, f, ell)) out.push_back(std::move(f));
    }
    return out;
}

long long count_ellfree(long long Q, int ell, int d) {
    mpz_class n = zpow(Q, d);
    if (d >= ell) n -= zpow(Q, d - ell + 1);
    return n.get_si();
}

int char_index(const FqCtx& ctx, const CharCtx& ch, const FqPoly& f, const FqPoly& P) {
    return Kummer(ctx, ch).index(f, P);
}

CycloHalf char_value(const FqCtx& ctx, const CharCtx& ch, const FqPoly& f, const FqPoly& P) {
    int j = char_index(ctx, ch, f, P);
    if (j < 0) return CycloHalf::from_rat(ch.ell, ctx.q, Rat(0));
    return CycloHalf::zeta(ch.ell, ctx.q, j);
}

const std::vector<FqPoly>& closed_points(const FqCtx& ctx, int N) {
    static std::mutex mu;
    static std::map<std::pair<long, int>, std::vector<FqPoly>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(ctx.Q(), N);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    std::vector<FqPoly> pts;
    for (int e = 1; e <= N; ++e) {
        check_size(ctx.Q(), e);
        auto v = monic_irreducibles(ctx.field(), e);
        pts.insert(pts.end(), v.begin(), v.end());
    }
    return cache.emplace(key, std::move(pts)).first->second;
}

std::vector<ZZeta> euler_product_coeffs(const FqCtx& ctx, const CharCtx& ch, const FqPoly& f, int N) {
    Kummer K(ctx, ch);
    return K.euler(f, closed_points(ctx, N), N);
}

std::vector<CycloHalf> l_inverse_series(const FqCtx& ctx, const CharCtx& ch, const FqPoly& f, int N) {
    if (!is_ellfree(ctx.field(), f, ch.ell)) throw std::invalid_argument("l_inverse: polynomial is not ell-power free");
    auto E = euler_product_coeffs(ctx, ch, f, N);
    std::vector<CycloHalf> a;
    for (int k = 0; k <= N; ++k) a.push_back(from_zz(ch.ell, ctx.q, E[k]) * CycloHalf::u_pow(ch.ell, ctx.q, -static_cast<long>(ctx.i) * k));
    return a;
}

WittTrunc<CycloHalf> l_inverse_normalized(const FqCtx& ctx, const CharCtx& ch, const FqPoly& f, int N) {
    return from_series(l_inverse_series(ctx, ch, f, N));
}

std::vector<ZZeta> l_series_coeffs(const FqCtx& ctx, const CharCtx& ch, const FqPoly& f, int N) {
    auto E = euler_product_coeffs(ctx, ch, f, N);
    // L = 1 / E with E_0 = 1.
    std::vector<ZZeta> L(N + 1, ZZeta(ch.ell, 0));
    L[0][0] = 1;
    for (int n = 1; n <= N; ++n)
        for (int k = 1; k <= n; ++k) {
            ZZeta t = zz_mul(E[k], L[n - k]);
            for (int a = 0; a < ch.ell; ++a) L[n][a] -= t[a];
        }
    return L;
}

int l_series_degree(const FqCtx& ctx, const CharCtx& ch, const FqPoly& f, int N) {
    auto L = l_series_coeffs(ctx, ch, f, N);
    for (int k = N; k >= 0; --k) {
        // zero in Z[zeta] iff all coordinates agree
        bool zero = true;
        for (int a = 1; a < ch.ell; ++a)
            if (L[k][a] != L[k][0]) zero = false;
        if (!zero) return k;
    }
    return -1;
}

CycloHalf CharMgf::coeff(int i, const Partition& tau, const Partition& taubar) const {
    if (ell == 2) return single.at(i - 1).coeff(tau);
    return joint.at(i - 1).coeff(PartPair{tau, taubar});
}

CharMgf empirical_mgf_chars_ghost(const FqCtx& ctx, const CharCtx& ch, int d, int D, int threads) {
    Kummer K(ctx, ch);
    check_size(ctx.Q(), d);
    const GF& F = ctx.field();
    const auto& pts = closed_points(ctx, D);
    const int ell = ch.ell;

    std::vector<PartPair> keys;
    for (int n = 1; n <= D; ++n)
        for (int a = 0; a <= n; ++a) {
            if (ell == 2 && a != n) continue;
            for (const auto& t : partitions_of(a))
                for (const auto& tb : partitions_of(n - a)) keys.push_back({t, tb});
        }

    const std::uint64_t n = static_cast<std::uint64_t>(ipow(ctx.Q(), d));
    const int W = resolve_threads(threads);
    std::vector<std::vector<std::vector<__int128>>> acc(W, std::vector<std::vector<__int128>>(keys.size(), std::vector<__int128>(ell, 0)));
    std::vector<long long> count(W, 0);
    parallel_blocks(n, W, [&](std::uint64_t b, std::uint64_t e, int w) {
        for (std::uint64_t idx = b; idx < e; ++idx) {
            FqPoly f = monic_from_index(F, d, idx);
            if (!is_ellfree(F, f, ell)) continue;
            ++count[w];
            auto E = K.euler(f, pts, D);
            std::vector<ZZeta> Ec(D + 1);
            for (int k = 0; k <= D; ++k) Ec[k] = zz_conj(E[k]);
            for (size_t j = 0; j < keys.size(); ++j) {
                ZZeta prod(ell, 0);
                prod[0] = 1;
                for (int part : keys[j].a.parts()) prod = zz_mul(prod, E[part]);
                for (int part : keys[j].b.parts()) prod = zz_mul(prod, Ec[part]);
                for (int a = 0; a < ell; ++a) acc[w][j][a] += prod[a];
            }
        }
    });
    long long total = 0;
    for (auto c : count) total += c;
    if (total == 0) throw std::domain_error("empirical_mgf_chars: no ell-power free polynomials of this degree");

    CharMgf out;
    out.ell = ell;
    const CycloHalf one = CycloHalf::from_rat(ell, ctx.q, Rat(1));
    SymSeries<CycloHalf> s = SymSeries<CycloHalf>::constant(one, D);
    BiSymSeries<CycloHalf> js = BiSymSeries<CycloHalf>::constant(one, D);
    for (size_t j = 0; j < keys.size(); ++j) {
        std::vector<Rat> c(ell);
        for (int a = 0; a < ell; ++a) {
            __int128 v = 0;
            for (int w = 0; w < W; ++w) v += acc[w][j][a];
            c[a] = rat_from_i128(v) * Rat(1, total);
        }
        CycloHalf val = CycloHalf::from_zeta_coeffs(ell, ctx.q, c) *
                        CycloHalf::u_pow(ell, ctx.q, -static_cast<long>(ctx.i) * keys[j].size());
        if (ell == 2) s.add(keys[j].a, val);
        else js.add(keys[j], val);
    }
    if (ell == 2) out.single.push_back(std::move(s));
    else out.joint.push_back(std::move(js));
    return out;
}

CharMgf empirical_mgf_chars(long q, const CharCtx& ch, int d, int D, int N, int threads) {
    CharMgf out;
    out.ell = ch.ell;
    for (int i = 1; i <= N; ++i) {
        CharMgf g = empirical_mgf_chars_ghost(FqCtx{q, i}, ch, d, D, threads);
        if (ch.ell == 2) out.single.push_back(std::move(g.single[0]));
        else out.joint.push_back(std::move(g.joint[0]));
    }
    return out;
}

LimitMode parse_limit_mode(const std::string& s) {
    if (s == "euler") return LimitMode::euler;
    if (s == "power") return LimitMode::power;
    throw std::invalid_argument("unknown limit mode '" + s + "' (expected euler or power)");
}

Rat c_ell_ghost(long q, int ell, int j) {
    mpz_class num = zpow(q, static_cast<long>(j) * (ell - 1));
    mpz_class den = 0;
    for (int m = 0; m < ell; ++m) den += zpow(q, static_cast<long>(j) * m);
    return Rat(mpq_class(num, den));
}

namespace {

// Pairs (k1, k2) != (0, 0), k1 = k2 mod ell, with scale * (k1 + k2) <= D.
std::vector<std::pair<int, int>> local_pairs(int ell, int D, int scale) {
    std::vector<std::pair<int, int>> v;
    for (int k1 = 0; scale * k1 <= D; ++k1)
        for (int k2 = 0; scale * (k1 + k2) <= D; ++k2) {
            if (k1 == 0 && k2 == 0) continue;
            if ((k1 - k2) % ell) continue;
            v.emplace_back(k1, k2);
        }
    return v;
}

template <class S> BiSymSeries<S> e_pair(int k1, int k2, int D) {
    return lift_first(basis_element_as<S>(Basis::e, k1 ? Partition{k1} : Partition{}, D)) *
           lift_second(basis_element_as<S>(Basis::e, k2 ? Partition{k2} : Partition{}, D));
}

CharMgf limit_euler(long q, const CharCtx& ch, int D, int N) {
    const int ell = ch.ell;
    auto K = [&](const Rat& r) { return CycloHalf::from_rat(ell, q, r); };
    CharMgf out;
    out.ell = ell;
    for (int i = 1; i <= N; ++i) {
        const long long Q = ipow(q, i);
        if (ell == 2) {
            SymSeries<CycloHalf> prod = SymSeries<CycloHalf>::constant(K(Rat(1)), D);
            for (int e = 1; 2 * e <= D; ++e) {
                const Rat c = c_ell_ghost(q, 2, i * e);
                SymSeries<CycloHalf> fac = SymSeries<CycloHalf>::constant(K(Rat(1)), D);
                for (int k = 1; 2 * k * e <= D; ++k) {
                    Rat w = c * Rat(mpq_class(mpz_class(1), zpow(Q, static_cast<long>(k) * e)));
                    fac += basis_element_as<CycloHalf>(Basis::e, Partition{2 * k}, D).dilate(e).scaled(K(w));
                }
                prod *= classical_pow(fac, Rat(static_cast<long>(count_irreducibles(Q, e))));
            }
            out.single.push_back(std::move(prod));
        } else {
            BiSymSeries<CycloHalf> prod = BiSymSeries<CycloHalf>::constant(K(Rat(1)), D);
            for (int e = 1; e <= D; ++e) {
                const Rat c = c_ell_ghost(q, ell, i * e);
                BiSymSeries<CycloHalf> fac = BiSymSeries<CycloHalf>::constant(K(Rat(1)), D);
                for (auto [k1, k2] : local_pairs(ell, D, e)) {
                    CycloHalf w = K(c) * CycloHalf::u_pow(ell, q, -static_cast<long>(i) * (k1 + k2) * e);
                    if ((k1 + k2) % 2) w = -w;
                    fac += e_pair<CycloHalf>(k1, k2, D).dilate(e).scaled(w);
                }
                prod *= classical_pow(fac, Rat(static_cast<long>(count_irreducibles(Q, e))));
            }
            out.joint.push_back(std::move(prod));
        }
    }
    return out;
}

CharMgf limit_power(long q, const CharCtx& ch, int D, int N) {
    using W = WittTrunc<CycloHalf>;
    const int ell = ch.ell;
    const int L = N * D;
    auto K = [&](const Rat& r) { return CycloHalf::from_rat(ell, q, r); };
    std::vector<CycloHalf> cg;
    for (int j = 1; j <= L; ++j) cg.push_back(K(c_ell_ghost(q, ell, j)));
    const W c = W::from_ghosts(cg);
    const AdmZSet A1 = AdmZSet::affine_space(q, 1, L);
    auto lift = [&](const Rat& r) { return W::diagonal(K(r)); };
    CharMgf out;
    out.ell = ell;
    if (ell == 2) {
        Series<Partition, W> F = Series<Partition, W>::constant(W::diagonal(K(Rat(1))), D);
        for (int k = 1; 2 * k <= D; ++k) {
            W w = c * teichmuller(K(Rat(1, q)).pow(k), L);
            F += basis_element(Basis::e, Partition{2 * k}, D).map_coeffs(lift).scaled(w);
        }
        for (int i = 1; i <= N; ++i) out.single.push_back(power_euler(F, A1, i));
    } else {
        Series<PartPair, W> F = Series<PartPair, W>::constant(W::diagonal(K(Rat(1))), D);
        for (auto [k1, k2] : local_pairs(ell, D, 1)) {
            W w = c * teichmuller(CycloHalf::u_pow(ell, q, -(k1 + k2)), L);
            if ((k1 + k2) % 2) w = -w;
            F += e_pair<Rat>(k1, k2, D).map_coeffs(lift).scaled(w);
        }
        for (int i = 1; i <= N; ++i) out.joint.push_back(power_euler(F, A1, i));
    }
    return out;
}

} // namespace

CharMgf limit_mgf_chars(long q, const CharCtx& ch, int D, int N, LimitMode mode) {
    validate(FqCtx{q, 1}, ch);
    if (D < 0 || N < 1) throw std::invalid_argument("limit_mgf_chars: need D >= 0 and N >= 1");
    return mode == LimitMode::euler ? limit_euler(q, ch, D, N) : limit_power(q, ch, D, N);
}

CycloHalf truncated_central_value(const FqCtx& ctx, const CharCtx& ch, const FqPoly& f, int k) {
    if (k < 0) throw std::invalid_argument("truncated_central_value: k must be >= 0");
    auto X = l_inverse_series(ctx, ch, f, k);
    // (e_i o X)_1 = (-1)^i [t^i](1 / X)
    std::vector<CycloHalf> L(k + 1, CycloHalf::from_rat(ch.ell, ctx.q, Rat(0)));
    L[0] = CycloHalf::from_rat(ch.ell, ctx.q, Rat(1));
    CycloHalf total = L[0];
    for (int n = 1; n <= k; ++n) {
        for (int j = 1; j <= n; ++j) L[n] -= X[j] * L[n - j];
        total += L[n];
    }
    return total;
}

} // namespace lp
