#include "lamprob/randmat.hpp"

#include "lamprob/plethy.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <stdexcept>
#include <thread>

namespace lp {

Group parse_group(const std::string& s) {
    if (s == "sym") return Group::Sym;
    if (s == "symstd") return Group::SymStd;
    if (s == "u") return Group::U;
    if (s == "o") return Group::O;
    if (s == "so") return Group::SO;
    if (s == "sp") return Group::Sp;
    throw std::invalid_argument("unknown group '" + s + "'");
}

std::string group_name(Group g) {
    switch (g) {
    case Group::Sym: return "sym";
    case Group::SymStd: return "symstd";
    case Group::U: return "u";
    case Group::O: return "o";
    case Group::SO: return "so";
    case Group::Sp: return "sp";
    }
    return "?";
}

namespace {

// [t^0..t^D] of prod_i 1/(1 - t^{lam_i})
std::vector<mpz_class> cycle_poly(const Partition& lam, int D) {
    std::vector<mpz_class> c(D + 1, 0);
    c[0] = 1;
    for (int part : lam.parts())
        for (int k = part; k <= D; ++k) c[k] += c[k - part];
    return c;
}

} // namespace

SymSeries<Rat> sym_group_mgf(int n, int D) {
    if (n < 1 || D < 0) throw std::invalid_argument("sym_group_mgf: need n >= 1, D >= 0");
    SymSeries<Rat> out(D);
    std::vector<std::pair<Rat, std::vector<mpz_class>>> classes;
    for (const auto& lam : partitions_of(n)) classes.emplace_back(z_tau(lam).inv(), cycle_poly(lam, D));
    for (const auto& tau : enumerate(D)) {
        Rat c(0);
        for (const auto& [w, poly] : classes) {
            mpz_class prod = 1;
            for (int part : tau.parts()) prod *= poly[part];
            c += w * Rat(prod);
        }
        out.add(tau, c);
    }
    return out;
}

SymSeries<Rat> limit_mgf(Group g, int D) {
    switch (g) {
    case Group::O: return exp_sigma(basis_element(Basis::h, {2}, std::max(D, 2)).with_trunc(D));
    case Group::Sp: return exp_sigma(basis_element(Basis::e, {2}, std::max(D, 2)).with_trunc(D));
    case Group::Sym: return exp_sigma(sum_of(Basis::h, degrees_from(1, D), D));
    case Group::SymStd: return exp_sigma(sum_of(Basis::h, degrees_from(2, D), D));
    default: throw std::invalid_argument("limit_mgf: use limit_mgf_unitary for U; SO has no separate limit");
    }
}

BiSymSeries<Rat> limit_mgf_unitary(int D) {
    const int Dp = std::max(D, 2);
    BiSymSeries<Rat> x(Dp);
    x.add(PartPair{Partition{1}, Partition{1}}, Rat(1));
    return exp_sigma(x.with_trunc(D));
}

mpz_class vector_partition_count(const Partition& tau) {
    const auto& v = tau.parts();
    const size_t L = v.size();
    std::vector<size_t> radix(L);
    size_t total = 1;
    for (size_t i = 0; i < L; ++i) {
        radix[i] = total;
        total *= v[i] + 1;
    }
    auto decode = [&](size_t idx) {
        std::vector<int> u(L);
        for (size_t i = 0; i < L; ++i) u[i] = static_cast<int>((idx / radix[i]) % (v[i] + 1));
        return u;
    };
    std::vector<mpz_class> dp(total, 0);
    dp[0] = 1;
    for (size_t w = 1; w < total; ++w) {
        auto wv = decode(w);
        for (size_t u = w; u < total; ++u) {
            auto uv = decode(u);
            bool fits = true;
            for (size_t i = 0; i < L && fits; ++i) fits = uv[i] >= wv[i];
            if (fits) dp[u] += dp[u - w];
        }
    }
    return dp[total - 1];
}

mpz_class unitary_inv_dim(int n, const Partition& tau, const Partition& taubar) {
    if (tau.size() != taubar.size()) return 0;
    mpz_class s = 0;
    for (const auto& lam : partitions_of(tau.size()))
        if (lam.length() <= n) s += mpz_class(kostka(lam, tau)) * kostka(lam, taubar);
    return s;
}

namespace {

constexpr int kMaxRank = 3;
using Exps = std::array<int, kMaxRank>;
using Laurent = std::map<Exps, long long>;

struct Eig {
    int sign;
    Exps e;
};

Laurent mul(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Exps e;
            for (int i = 0; i < kMaxRank; ++i) e[i] = ea[i] + eb[i];
            r[e] += ca * cb;
        }
    for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
    return r;
}

// h_0..h_K evaluated at the eigenvalue monomials.
std::vector<Laurent> h_list(const std::vector<Eig>& eigs, int K) {
    std::vector<Laurent> h(K + 1);
    h[0][Exps{}] = 1;
    for (const auto& y : eigs) {
        std::vector<Laurent> nh(K + 1);
        for (int k = 0; k <= K; ++k)
            for (int j = 0; j <= k; ++j) {
                long long s = (j % 2 && y.sign < 0) ? -1 : 1;
                for (const auto& [e, c] : h[k - j]) {
                    Exps f;
                    for (int i = 0; i < kMaxRank; ++i) f[i] = e[i] + j * y.e[i];
                    nh[k][f] += s * c;
                }
            }
        for (auto& p : nh)
            for (auto it = p.begin(); it != p.end();) it = it->second == 0 ? p.erase(it) : std::next(it);
        h = std::move(nh);
    }
    return h;
}

enum class Torus { B, C, D };

struct WeylData {
    std::vector<Eig> eigs;
    Laurent density;
    long weyl_order;
};

Exps unit(int i, int s) {
    Exps e{};
    e[i] = s;
    return e;
}

// Eigenvalues x_i^{+-1} (plus extras) and the density prod_roots (1 - x^alpha).
WeylData weyl_data(Torus type, int r, const std::vector<int>& extra_signs) {
    if (r > kMaxRank) throw std::invalid_argument("rank too large for the constant-term engine");
    WeylData w;
    for (int i = 0; i < r; ++i) {
        w.eigs.push_back({1, unit(i, 1)});
        w.eigs.push_back({1, unit(i, -1)});
    }
    for (int s : extra_signs) w.eigs.push_back({s, Exps{}});
    std::vector<Exps> roots;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            for (int si : {1, -1})
                for (int sj : {1, -1}) {
                    Exps e{};
                    e[i] = si;
                    e[j] = sj;
                    roots.push_back(e);
                }
    for (int i = 0; i < r; ++i)
        for (int s : {1, -1}) {
            if (type == Torus::B) roots.push_back(unit(i, s));
            if (type == Torus::C) roots.push_back(unit(i, 2 * s));
        }
    w.density[Exps{}] = 1;
    for (const auto& a : roots) {
        Laurent f;
        f[Exps{}] = 1;
        f[a] = -1;
        w.density = mul(w.density, f);
    }
    long order = 1;
    for (int i = 2; i <= r; ++i) order *= i;
    order <<= (type == Torus::D && r > 0) ? r - 1 : r;
    w.weyl_order = order;
    return w;
}

mpz_class constant_term_average(const WeylData& w, const Partition& tau) {
    const int K = tau.length() ? tau[0] : 0;
    auto h = h_list(w.eigs, K);
    Laurent f;
    f[Exps{}] = 1;
    for (int part : tau.parts()) f = mul(f, h[part]);
    mpz_class ct = 0;
    for (const auto& [e, c] : f) {
        Exps neg;
        for (int i = 0; i < kMaxRank; ++i) neg[i] = -e[i];
        auto it = w.density.find(neg);
        if (it != w.density.end()) ct += mpz_class(static_cast<long>(c)) * static_cast<long>(it->second);
    }
    if (ct % w.weyl_order != 0) throw std::logic_error("constant term not divisible by the Weyl group order");
    return ct / w.weyl_order;
}

void check_n(int n) {
    if (n < 1 || n > 6) throw std::invalid_argument("invariant dimension engine supports 1 <= n <= 6");
}

} // namespace

mpz_class so_sp_inv_dim(Group g, int n, const Partition& tau) {
    check_n(n);
    if (g == Group::Sp) {
        if (n % 2) throw std::invalid_argument("Sp(n) needs n even");
        return constant_term_average(weyl_data(Torus::C, n / 2, {}), tau);
    }
    if (g == Group::SO) {
        if (n % 2) return constant_term_average(weyl_data(Torus::B, n / 2, {1}), tau);
        return constant_term_average(weyl_data(Torus::D, n / 2, {}), tau);
    }
    if (g == Group::O) return orthogonal_inv_dim(n, tau);
    throw std::invalid_argument("so_sp_inv_dim: group must be SO, Sp or O");
}

mpz_class orthogonal_inv_dim(int n, const Partition& tau) {
    check_n(n);
    if (n % 2) {
        // O(2r+1) = SO(2r+1) x {+-1}
        if (tau.size() % 2) return 0;
        return so_sp_inv_dim(Group::SO, n, tau);
    }
    // Average of SO(2r) and the other component, whose eigenvalues are 1, -1
    // and r-1 pairs distributed like those of Sp(2r-2).
    const int r = n / 2;
    mpz_class plus = so_sp_inv_dim(Group::SO, n, tau);
    mpz_class minus = constant_term_average(weyl_data(Torus::C, r - 1, {1, -1}), tau);
    mpz_class s = plus + minus;
    if (s % 2 != 0) throw std::logic_error("orthogonal average is not an integer");
    return s / 2;
}

SymSeries<Rat> finite_mgf(Group g, int n, int D) {
    if (g == Group::Sym) return sym_group_mgf(n, D);
    if (g == Group::U || g == Group::SymStd) throw std::invalid_argument("finite_mgf: unsupported group");
    SymSeries<Rat> out(D);
    for (const auto& tau : enumerate(D))
        out.add(tau, Rat(g == Group::O ? orthogonal_inv_dim(n, tau) : so_sp_inv_dim(g, n, tau)));
    return out;
}

BiSymSeries<Rat> finite_unitary_mgf(int n, int D) {
    BiSymSeries<Rat> out(D);
    for (int k = 0; 2 * k <= D; ++k)
        for (const auto& a : partitions_of(k))
            for (const auto& b : partitions_of(k)) out.add(PartPair{a, b}, Rat(unitary_inv_dim(n, a, b)));
    return out;
}

namespace {

using CMat = Eigen::MatrixXcd;

CMat sample(Group g, int n, std::mt19937_64& rng) {
    std::normal_distribution<double> N01(0.0, 1.0);
    if (g == Group::O) {
        Eigen::MatrixXd A(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A(i, j) = N01(rng);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
        Eigen::MatrixXd Q = qr.householderQ();
        for (int j = 0; j < n; ++j)
            if (qr.matrixQR()(j, j) < 0) Q.col(j) *= -1;
        return Q.cast<std::complex<double>>();
    }
    if (g == Group::U) {
        CMat A(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A(i, j) = std::complex<double>(N01(rng), N01(rng)) / std::sqrt(2.0);
        Eigen::HouseholderQR<CMat> qr(A);
        CMat Q = qr.householderQ();
        for (int j = 0; j < n; ++j) {
            auto d = qr.matrixQR()(j, j);
            Q.col(j) *= d / std::abs(d);
        }
        return Q;
    }
    if (g == Group::Sp) {
        // Quaternionic Gram-Schmidt: columns v_j and J conj(v_j).
        const int r = n / 2;
        CMat M(n, n);
        auto jbar = [r](const Eigen::VectorXcd& v) {
            Eigen::VectorXcd w(2 * r);
            for (int i = 0; i < r; ++i) {
                w(i) = -std::conj(v(r + i));
                w(r + i) = std::conj(v(i));
            }
            return w;
        };
        for (int j = 0; j < r; ++j) {
            Eigen::VectorXcd v(n);
            for (int i = 0; i < n; ++i) v(i) = std::complex<double>(N01(rng), N01(rng));
            for (int k = 0; k < j; ++k) {
                v -= M.col(k) * M.col(k).dot(v);
                v -= M.col(r + k) * M.col(r + k).dot(v);
            }
            v /= v.norm();
            M.col(j) = v;
            M.col(r + j) = jbar(v);
        }
        return M;
    }
    throw std::invalid_argument("haar_mc_oracle: group must be U, O or Sp");
}

} // namespace

std::vector<McEstimate> haar_mc_oracle(Group g, int n, const std::vector<std::pair<Partition, Partition>>& taus,
                                       long samples, std::uint64_t seed, int threads) {
    if (g == Group::Sp && n % 2) throw std::invalid_argument("Sp(n) needs n even");
    if (samples < 1) throw std::invalid_argument("haar_mc_oracle: samples must be positive");
    int K = 0;
    for (const auto& [a, b] : taus) K = std::max({K, a.length() ? a[0] : 0, b.length() ? b[0] : 0});
    constexpr long kChunk = 4096;
    const long chunks = (samples + kChunk - 1) / kChunk;
    struct Acc {
        std::vector<double> s, s2;
    };
    std::vector<Acc> acc(chunks, Acc{std::vector<double>(taus.size()), std::vector<double>(taus.size())});

    auto run_chunk = [&](long c) {
        std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(c)};
        std::mt19937_64 rng(ss);
        const long lo = c * kChunk, hi = std::min(samples, lo + kChunk);
        std::vector<std::complex<double>> p(K + 1), h(K + 1);
        for (long s = lo; s < hi; ++s) {
            CMat M = sample(g, n, rng);
            CMat P = CMat::Identity(n, n);
            for (int k = 1; k <= K; ++k) {
                P = P * M;
                p[k] = P.trace();
            }
            h[0] = 1;
            for (int k = 1; k <= K; ++k) {
                std::complex<double> v = 0;
                for (int i = 1; i <= k; ++i) v += p[i] * h[k - i];
                h[k] = v / static_cast<double>(k);
            }
            for (size_t t = 0; t < taus.size(); ++t) {
                std::complex<double> x = 1, y = 1;
                for (int part : taus[t].first.parts()) x *= h[part];
                if (g == Group::U)
                    for (int part : taus[t].second.parts()) y *= std::conj(h[part]);
                double v = (x * y).real();
                acc[c].s[t] += v;
                acc[c].s2[t] += v * v;
            }
        }
    };

    if (threads <= 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (long c = t; c < chunks; c += threads) run_chunk(c);
        });
    for (auto& th : pool) th.join();

    std::vector<McEstimate> out(taus.size());
    for (size_t t = 0; t < taus.size(); ++t) {
        double s = 0, s2 = 0;
        for (const auto& a : acc) {
            s += a.s[t];
            s2 += a.s2[t];
        }
        const double mean = s / samples;
        const double var = std::max(0.0, s2 / samples - mean * mean) * samples / std::max(1L, samples - 1);
        out[t] = {mean, std::sqrt(var / samples)};
    }
    return out;
}

mpz_class g_table(int j, int a) {
    auto dfact = [](int m) {
        mpz_class r = 1;
        for (int x = m; x > 1; x -= 2) r *= x;
        return r;
    };
    if (j % 2) return a % 2 ? mpz_class(0) : mpz_class(zpow(j, a / 2) * dfact(a - 1));
    mpz_class s = 0;
    for (int k = 0; 2 * k <= a; ++k) s += binom(a, 2 * k) * zpow(j, k) * dfact(2 * k - 1);
    return s;
}

namespace {

int weight(const std::vector<int>& a) {
    int w = 0;
    for (size_t i = 0; i < a.size(); ++i) w += static_cast<int>(i + 1) * a[i];
    return w;
}

SymSeries<Rat> power_sum_monomial(const std::vector<int>& a, int D) {
    SymSeries<Rat> f = SymSeries<Rat>::one(D);
    for (size_t i = 0; i < a.size(); ++i)
        for (int r = 0; r < a[i]; ++r) f *= basis_element(Basis::p, {static_cast<int>(i + 1)}, D);
    return f;
}

} // namespace

Rat ds_trace_moment(Group g, const std::vector<int>& a, const std::vector<int>& b) {
    if (g == Group::U) {
        const int D = weight(a) + weight(b);
        BiSymSeries<Rat> f = lift_first(power_sum_monomial(a, D)) * lift_second(power_sum_monomial(b, D));
        return hall(limit_mgf_unitary(D), f);
    }
    if (g != Group::O && g != Group::Sp) throw std::invalid_argument("ds_trace_moment: group must be O, Sp or U");
    const int D = weight(a);
    return hall(limit_mgf(g, D), power_sum_monomial(a, D));
}

Rat ds_trace_moment_finite(Group g, int n, const std::vector<int>& a, const std::vector<int>& b) {
    if (g == Group::U) {
        auto ca = to_basis(power_sum_monomial(a, weight(a)), Basis::h);
        auto cb = to_basis(power_sum_monomial(b, weight(b)), Basis::h);
        Rat s(0);
        for (const auto& [la, x] : ca)
            for (const auto& [lb, y] : cb) s += x * y * Rat(unitary_inv_dim(n, la, lb));
        return s;
    }
    auto c = to_basis(power_sum_monomial(a, weight(a)), Basis::h);
    Rat s(0);
    for (const auto& [lam, x] : c)
        s += x * Rat(g == Group::O ? orthogonal_inv_dim(n, lam) : so_sp_inv_dim(g, n, lam));
    return s;
}

Rat cycle_falling_moments(int n, const std::vector<int>& k) {
    if (n < 1 || n > 12) throw std::invalid_argument("cycle_falling_moments: 1 <= n <= 12");
    Rat s(0);
    for (const auto& lam : partitions_of(n)) {
        Rat term = z_tau(lam).inv();
        for (size_t i = 0; i < k.size() && !term.is_zero(); ++i)
            term *= falling(Rat(lam.multiplicity(static_cast<int>(i + 1))), k[i]);
        s += term;
    }
    return s;
}

} // namespace lp
