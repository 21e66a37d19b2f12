#include "lamprob/hyperstat.hpp"

#include "lamprob/parallel.hpp"
#include "lamprob/plethy.hpp"

#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace lp {

namespace {

constexpr long double kMaxForms = 33554432.0L; // 2^25
constexpr long double kMaxTableEntries = 67108864.0L; // 2^26

struct MonoTable {
    std::vector<std::vector<int>> list;
    std::map<std::vector<int>, int> index;
};

const MonoTable& mono_table(int nvars, int d) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<MonoTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(nvars, d);
    if (auto it = cache.find(key); it != cache.end()) return *it->second;
    auto t = std::make_unique<MonoTable>();
    std::vector<int> a(nvars, 0);
    // lexicographically decreasing: recursive fill from x0
    auto rec = [&](auto&& self, int v, int left) -> void {
        if (v == nvars - 1) {
            a[v] = left;
            t->list.push_back(a);
            return;
        }
        for (int e = left; e >= 0; --e) {
            a[v] = e;
            self(self, v + 1, left - e);
        }
    };
    if (nvars > 0 && d >= 0) rec(rec, 0, d);
    for (size_t j = 0; j < t->list.size(); ++j) t->index.emplace(t->list[j], static_cast<int>(j));
    return *cache.emplace(key, std::move(t)).first->second;
}

GF::Elt mono_value(const GF& K, const std::vector<int>& alpha, const std::vector<GF::Elt>& pt) {
    GF::Elt v = 1;
    for (size_t j = 0; j < alpha.size(); ++j)
        if (alpha[j]) v = K.mul(v, K.pow(pt[j], alpha[j]));
    return v;
}

// Column positions for the Macaulay matrix of a given shape.
struct MacaulayPlan {
    int cols = 0;
    // rows x^beta F: col[r][j]
    std::vector<std::vector<int>> frows;
    // rows x^alpha dF/dx_v: entries (j, col, multiplicity alpha_{j,v})
    struct Entry {
        int j, col, mult;
    };
    std::vector<std::vector<Entry>> drows;
};

const MacaulayPlan& macaulay_plan(int m, int d) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<MacaulayPlan>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find({m, d}); it != cache.end()) return *it->second;
    }
    const int nv = m + 1;
    const int s = nv * (d - 1) + 1;
    auto plan = std::make_unique<MacaulayPlan>();
    const auto& cols = mono_table(nv, s);
    const auto& fm = mono_table(nv, d).list;
    plan->cols = static_cast<int>(cols.list.size());
    auto add = [](std::vector<int> a, const std::vector<int>& b) {
        for (size_t j = 0; j < a.size(); ++j) a[j] += b[j];
        return a;
    };
    for (const auto& beta : mono_table(nv, s - d).list) {
        std::vector<int> row;
        for (const auto& alpha : fm) row.push_back(cols.index.at(add(beta, alpha)));
        plan->frows.push_back(std::move(row));
    }
    for (int v = 0; v < nv; ++v)
        for (const auto& beta : mono_table(nv, s - d + 1).list) {
            std::vector<MacaulayPlan::Entry> row;
            for (size_t j = 0; j < fm.size(); ++j) {
                if (!fm[j][v]) continue;
                std::vector<int> a = fm[j];
                a[v] -= 1;
                row.push_back({static_cast<int>(j), cols.index.at(add(beta, a)), fm[j][v]});
            }
            plan->drows.push_back(std::move(row));
        }
    std::lock_guard<std::mutex> lock(mu);
    return *cache.emplace(std::make_pair(m, d), std::move(plan)).first->second;
}

bool full_rank_gf2(std::vector<std::vector<std::uint64_t>>& rows, int cols) {
    const int W = (cols + 63) / 64;
    int rank = 0;
    size_t top = 0;
    for (int c = 0; c < cols; ++c) {
        const int w = c / 64;
        const std::uint64_t bit = 1ull << (c % 64);
        size_t piv = top;
        while (piv < rows.size() && !(rows[piv][w] & bit)) ++piv;
        if (piv == rows.size()) return false;
        std::swap(rows[piv], rows[top]);
        for (size_t r = top + 1; r < rows.size(); ++r)
            if (rows[r][w] & bit)
                for (int x = w; x < W; ++x) rows[r][x] ^= rows[top][x];
        ++top;
        ++rank;
    }
    return rank == cols;
}

bool full_rank_gf(const GF& F, std::vector<std::vector<GF::Elt>>& rows, int cols) {
    size_t top = 0;
    for (int c = 0; c < cols; ++c) {
        size_t piv = top;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) return false;
        std::swap(rows[piv], rows[top]);
        const GF::Elt inv = F.inv(rows[top][c]);
        for (int x = c; x < cols; ++x) rows[top][x] = F.mul(rows[top][x], inv);
        for (size_t r = top + 1; r < rows.size(); ++r) {
            const GF::Elt f = rows[r][c];
            if (!f) continue;
            for (int x = c; x < cols; ++x)
                if (rows[top][x]) rows[r][x] = F.sub(rows[r][x], F.mul(f, rows[top][x]));
        }
        ++top;
    }
    return true;
}

bool macaulay_smooth(const GF& F, const HomogForm& f) {
    const auto& plan = macaulay_plan(f.m, f.d);
    const int cols = plan.cols;
    if (F.p() == 2 && F.degree() == 1) {
        const int W = (cols + 63) / 64;
        std::vector<std::vector<std::uint64_t>> rows;
        rows.reserve(plan.frows.size() + plan.drows.size());
        for (const auto& r : plan.frows) {
            std::vector<std::uint64_t> row(W, 0);
            bool any = false;
            for (size_t j = 0; j < r.size(); ++j)
                if (f.c[j]) {
                    row[r[j] / 64] ^= 1ull << (r[j] % 64);
                    any = true;
                }
            if (any) rows.push_back(std::move(row));
        }
        for (const auto& r : plan.drows) {
            std::vector<std::uint64_t> row(W, 0);
            bool any = false;
            for (const auto& e : r)
                if (f.c[e.j] && (e.mult & 1)) {
                    row[e.col / 64] ^= 1ull << (e.col % 64);
                    any = true;
                }
            if (any) rows.push_back(std::move(row));
        }
        if (static_cast<int>(rows.size()) < cols) return false;
        return full_rank_gf2(rows, cols);
    }
    std::vector<std::vector<GF::Elt>> rows;
    for (const auto& r : plan.frows) {
        std::vector<GF::Elt> row(cols, 0);
        bool any = false;
        for (size_t j = 0; j < r.size(); ++j)
            if (f.c[j]) {
                row[r[j]] = f.c[j];
                any = true;
            }
        if (any) rows.push_back(std::move(row));
    }
    for (const auto& r : plan.drows) {
        std::vector<GF::Elt> row(cols, 0);
        bool any = false;
        for (const auto& e : r) {
            GF::Elt v = F.mul(f.c[e.j], F.from_int(e.mult));
            if (v) {
                row[e.col] = v;
                any = true;
            }
        }
        if (any) rows.push_back(std::move(row));
    }
    if (static_cast<int>(rows.size()) < cols) return false;
    return full_rank_gf(F, rows, cols);
}

bool binary_smooth(const GF& F, const HomogForm& f) {
    // F(1, t) = sum_j c_j t^j; the point (0:1) has multiplicity d - deg.
    FqPoly g(f.c.begin(), f.c.end());
    poly_trim(g);
    if (g.empty()) return false;
    if (f.d - deg(g) > 1) return false;
    if (deg(g) <= 1) return true;
    return deg(poly_gcd(F, g, poly_deriv(F, g))) == 0;
}

void check_census_size(long q, int i, int m, int d) {
    long double n = census_size(q, i, m, d);
    if (n > kMaxForms) {
        std::ostringstream os;
        os << "hypersurface enumeration of " << static_cast<long double>(n) << " forms (q=" << q << ", i=" << i
           << ", m=" << m << ", d=" << d << ") exceeds the limit 2^25";
        throw std::length_error(os.str());
    }
}

// Per-level data for the Gray-code sweep over coefficient vectors.
struct Level {
    const GF* K;
    int npts;
    // delta[t] holds npts F-increments followed by npts*(m+1) partial increments.
    std::vector<std::vector<GF::Elt>> delta;
};

struct SweepSetup {
    const GF* F;
    int m, d, M, n, L, nv;
    long p;
    std::vector<Level> levels;
};

SweepSetup make_setup(const GF& F, int m, int d, int K) {
    SweepSetup S;
    S.F = &F;
    S.m = m;
    S.d = d;
    S.nv = m + 1;
    const auto& mons = mono_table(m + 1, d).list;
    S.M = static_cast<int>(mons.size());
    S.n = F.degree();
    S.p = F.p();
    S.L = S.M * S.n;
    for (int k = 1; k <= K; ++k) {
        // point tables hold L * #P^m(F_{Q^k}) * (m + 2) entries
        long double npts = 0, Qk = std::pow(static_cast<long double>(F.size()), k);
        for (int j = 0; j <= m; ++j) npts += std::pow(Qk, j);
        if (npts * S.L * (1 + S.nv) > kMaxTableEntries)
            throw std::length_error("smooth_census: point tables over F_{Q^" + std::to_string(k) + "} too large (" +
                                    std::to_string(static_cast<long long>(npts)) + " points); lower the truncation degree");
        const GF& Kf = GF::get(ipow(F.size(), k));
        const auto emb = subfield_embedding(F, Kf);
        const auto pts = projective_points(Kf, m);
        Level lv;
        lv.K = &Kf;
        lv.npts = static_cast<int>(pts.size());
        lv.delta.assign(S.L, std::vector<GF::Elt>(pts.size() * (1 + S.nv), 0));
        for (int j = 0; j < S.M; ++j)
            for (int r = 0; r < S.n; ++r) {
                const GF::Elt b = emb[ipow(S.p, r)];
                auto& dl = lv.delta[j * S.n + r];
                for (size_t a = 0; a < pts.size(); ++a) {
                    dl[a] = Kf.mul(b, mono_value(Kf, mons[j], pts[a]));
                    for (int v = 0; v < S.nv; ++v) {
                        if (!mons[j][v]) continue;
                        std::vector<int> al = mons[j];
                        al[v] -= 1;
                        GF::Elt c = Kf.mul(Kf.from_int(mons[j][v]), mono_value(Kf, al, pts[a]));
                        dl[pts.size() + a * S.nv + v] = Kf.mul(b, c);
                    }
                }
            }
        S.levels.push_back(std::move(lv));
    }
    return S;
}

} // namespace

const std::vector<std::vector<int>>& monomials(int nvars, int d) { return mono_table(nvars, d).list; }

int monomial_index(const std::vector<int>& alpha) {
    int d = 0;
    for (int a : alpha) d += a;
    return mono_table(static_cast<int>(alpha.size()), d).index.at(alpha);
}

HomogForm HomogForm::from_index(const GF& F, int m, int d, std::uint64_t idx) {
    HomogForm f;
    f.m = m;
    f.d = d;
    const auto M = monomials(m + 1, d).size();
    f.c.resize(M);
    for (size_t j = 0; j < M; ++j) {
        f.c[j] = static_cast<GF::Elt>(idx % static_cast<std::uint64_t>(F.size()));
        idx /= static_cast<std::uint64_t>(F.size());
    }
    return f;
}

HomogForm HomogForm::from_terms(int m, int d, const std::vector<std::pair<GF::Elt, std::vector<int>>>& terms) {
    HomogForm f;
    f.m = m;
    f.d = d;
    f.c.assign(monomials(m + 1, d).size(), 0);
    for (const auto& [c, a] : terms) {
        if (static_cast<int>(a.size()) != m + 1) throw std::invalid_argument("HomogForm: wrong number of exponents");
        f.c[monomial_index(a)] = c;
    }
    return f;
}

bool HomogForm::is_zero() const {
    for (auto x : c)
        if (x) return false;
    return true;
}

std::string HomogForm::str() const {
    std::string s;
    const auto& mons = monomials(m + 1, d);
    for (size_t j = 0; j < c.size(); ++j) {
        if (!c[j]) continue;
        if (!s.empty()) s += " + ";
        s += std::to_string(c[j]);
        for (int v = 0; v <= m; ++v)
            if (mons[j][v]) s += "*x" + std::to_string(v) + (mons[j][v] > 1 ? "^" + std::to_string(mons[j][v]) : "");
    }
    return s.empty() ? "0" : s;
}

std::vector<std::vector<GF::Elt>> projective_points(const GF& F, int m) {
    std::vector<std::vector<GF::Elt>> pts;
    const long Q = F.size();
    for (int lead = 0; lead <= m; ++lead) {
        const int free = m - lead;
        const long long n = ipow(Q, free);
        for (long long idx = 0; idx < n; ++idx) {
            std::vector<GF::Elt> p(m + 1, 0);
            p[lead] = 1;
            long long r = idx;
            for (int j = lead + 1; j <= m; ++j) {
                p[j] = static_cast<GF::Elt>(r % Q);
                r /= Q;
            }
            pts.push_back(std::move(p));
        }
    }
    return pts;
}

GF::Elt eval_form(const GF& small, const GF& big, const HomogForm& f, const std::vector<GF::Elt>& pt) {
    const auto emb = subfield_embedding(small, big);
    const auto& mons = monomials(f.m + 1, f.d);
    GF::Elt v = 0;
    for (size_t j = 0; j < f.c.size(); ++j)
        if (f.c[j]) v = big.add(v, big.mul(emb[f.c[j]], mono_value(big, mons[j], pt)));
    return v;
}

bool smoothness_test(const GF& F, const HomogForm& f) {
    if (f.is_zero()) throw std::invalid_argument("smoothness_test: zero form");
    if (f.m < 1 || f.d < 1) throw std::invalid_argument("smoothness_test: need m >= 1 and d >= 1");
    if (f.m == 1) return binary_smooth(F, f);
    if (f.d == 1) return true;
    return macaulay_smooth(F, f);
}

namespace {

// Values of every monomial of degree d and of its partials at every point of P^m(K).
struct EvalTable {
    int np = 0, M = 0, nv = 0;
    std::vector<GF::Elt> emb;
    std::vector<GF::Elt> vals; // [pt][j][0..nv]
};

const EvalTable& eval_table(const GF& F, const GF& K, int m, int d) {
    static std::mutex mu;
    static std::map<std::tuple<long, long, int, int>, std::unique_ptr<EvalTable>> cache;
    auto key = std::make_tuple(F.size(), K.size(), m, d);
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return *it->second;
    }
    auto t = std::make_unique<EvalTable>();
    const auto& mons = monomials(m + 1, d);
    const auto pts = projective_points(K, m);
    t->np = static_cast<int>(pts.size());
    t->M = static_cast<int>(mons.size());
    t->nv = m + 1;
    t->emb = subfield_embedding(F, K);
    t->vals.assign(static_cast<size_t>(t->np) * t->M * (1 + t->nv), 0);
    size_t o = 0;
    for (const auto& pt : pts)
        for (const auto& a : mons) {
            t->vals[o++] = mono_value(K, a, pt);
            for (int v = 0; v <= m; ++v) {
                GF::Elt x = 0;
                if (a[v]) {
                    std::vector<int> b = a;
                    b[v] -= 1;
                    x = K.mul(K.from_int(a[v]), mono_value(K, b, pt));
                }
                t->vals[o++] = x;
            }
        }
    std::lock_guard<std::mutex> lock(mu);
    return *cache.emplace(key, std::move(t)).first->second;
}

} // namespace

bool has_singular_point(const GF& F, const HomogForm& f, int max_ext) {
    for (int e = 1; e <= max_ext; ++e) {
        const GF& K = GF::get(ipow(F.size(), e));
        const EvalTable& T = eval_table(F, K, f.m, f.d);
        std::vector<std::pair<int, GF::Elt>> terms;
        for (int j = 0; j < T.M; ++j)
            if (f.c[j]) terms.emplace_back(j, T.emb[f.c[j]]);
        const size_t stride = 1 + T.nv;
        for (int a = 0; a < T.np; ++a) {
            const GF::Elt* row = &T.vals[static_cast<size_t>(a) * T.M * stride];
            GF::Elt v = 0;
            for (auto [j, c] : terms) v = K.add(v, K.mul(c, row[j * stride]));
            if (v) continue;
            bool sing = true;
            for (int x = 1; x <= T.nv && sing; ++x) {
                GF::Elt dv = 0;
                for (auto [j, c] : terms) dv = K.add(dv, K.mul(c, row[j * stride + x]));
                if (dv) sing = false;
            }
            if (sing) return true;
        }
    }
    return false;
}

std::vector<long long> point_counts(const GF& F, const HomogForm& f, int N) {
    std::vector<long long> out;
    for (int k = 1; k <= N; ++k) {
        const GF& K = GF::get(ipow(F.size(), k));
        long long c = 0;
        for (const auto& pt : projective_points(K, f.m))
            if (!eval_form(F, K, f, pt)) ++c;
        out.push_back(c);
    }
    return out;
}

WittTrunc<Rat> zeta_of_section(const GF& F, const HomogForm& f, int N) {
    if (!smoothness_test(F, f)) throw std::invalid_argument("zeta_of_section: V(F) is singular");
    std::vector<Rat> g;
    for (long long c : point_counts(F, f, N)) g.emplace_back(static_cast<long>(c));
    return WittTrunc<Rat>::from_ghosts(std::move(g));
}

WittTrunc<CycloHalf> CohomTable::H(int j) const {
    std::vector<CycloHalf> g;
    for (int k = 1; k <= length; ++k)
        g.push_back((j % 2 || j < 0 || j > 2 * n + 2) ? CycloHalf::from_rat(2, q, Rat(0))
                                                      : CycloHalf::u_pow(2, q, static_cast<long>(j) * k));
    return WittTrunc<CycloHalf>::from_ghosts(std::move(g));
}

bool CohomTable::poincare_symmetric() const {
    for (int j = 0; j <= 2 * n + 2; ++j) {
        std::vector<CycloHalf> g;
        for (int k = 1; k <= length; ++k) g.push_back(CycloHalf::u_pow(2, q, 2L * (n + 1 - j) * k));
        if (!(H(2 * n + 2 - j) == WittTrunc<CycloHalf>::from_ghosts(g) * H(j))) return false;
    }
    return true;
}

long double census_size(long q, int i, int m, int d) {
    long double n = 1;
    const long double Q = static_cast<long double>(ipow(q, i));
    for (size_t j = 0; j < monomials(m + 1, d).size(); ++j) n *= Q;
    return n;
}

SmoothCensus smooth_census(long q, int i, int m, int d, int D, int threads) {
    if (m < 1 || d < 1 || D < 0 || i < 1) throw std::invalid_argument("smooth_census: need m, d, i >= 1 and D >= 0");
    check_census_size(q, i, m, d);
    const GF& F = GF::get(ipow(q, i));
    // Levels 1..max(D, 1): point counts and a quick singular-point search.
    const int K = std::max(D, 1);
    for (int k = 1; k <= K; ++k)
        if (static_cast<long double>(ipow(F.size(), k)) > (1L << 20))
            throw std::length_error("smooth_census: extension F_{Q^" + std::to_string(k) + "} too large for point counting");
    const SweepSetup S = make_setup(F, m, d, K);
    const std::uint64_t total = static_cast<std::uint64_t>(census_size(q, i, m, d));
    const int W = resolve_threads(threads);
    std::vector<std::map<std::vector<long long>, long long>> hist(W);
    std::vector<long long> smooth(W, 0);

    parallel_blocks(total, W, [&](std::uint64_t b, std::uint64_t e, int w) {
        if (b >= e) return;
        const long p = S.p;
        // reflected p-ary Gray code state at rank b
        std::vector<int> g(S.L), dir(S.L);
        {
            std::vector<int> a(S.L);
            std::uint64_t r = b;
            for (int t = 0; t < S.L; ++t) {
                a[t] = static_cast<int>(r % p);
                r /= p;
            }
            bool rev = false;
            for (int t = S.L - 1; t >= 0; --t) {
                g[t] = rev ? static_cast<int>(p - 1 - a[t]) : a[t];
                dir[t] = rev ? -1 : 1;
                if (g[t] & 1) rev = !rev;
            }
        }
        HomogForm f;
        f.m = S.m;
        f.d = S.d;
        f.c.assign(S.M, 0);
        for (int t = 0; t < S.L; ++t) f.c[t / S.n] += static_cast<GF::Elt>(g[t] * ipow(p, t % S.n));
        std::vector<std::vector<GF::Elt>> val(S.levels.size());
        for (size_t k = 0; k < S.levels.size(); ++k) {
            const auto& lv = S.levels[k];
            val[k].assign(lv.delta.empty() ? 0 : lv.delta[0].size(), 0);
            for (int t = 0; t < S.L; ++t)
                for (int rep = 0; rep < g[t]; ++rep)
                    for (size_t a = 0; a < val[k].size(); ++a) val[k][a] = lv.K->add(val[k][a], lv.delta[t][a]);
        }
        auto& H = hist[w];
        for (std::uint64_t rank = b;; ++rank) {
            if (!f.is_zero()) {
                bool singular = false;
                for (size_t k = 0; k < S.levels.size() && !singular; ++k) {
                    const int np = S.levels[k].npts;
                    for (int a = 0; a < np && !singular; ++a) {
                        if (val[k][a]) continue;
                        bool all = true;
                        for (int v = 0; v < S.nv; ++v)
                            if (val[k][np + a * S.nv + v]) {
                                all = false;
                                break;
                            }
                        singular = all;
                    }
                }
                if (!singular && smoothness_test(F, f)) {
                    ++smooth[w];
                    std::vector<long long> cnt(D, 0);
                    for (int k = 0; k < D; ++k)
                        for (int a = 0; a < S.levels[k].npts; ++a)
                            if (!val[k][a]) ++cnt[k];
                    ++H[cnt];
                }
            }
            if (rank + 1 >= e) break;
            int t = 0;
            while (g[t] + dir[t] < 0 || g[t] + dir[t] >= p) {
                dir[t] = -dir[t];
                ++t;
            }
            g[t] += dir[t];
            const long step = ipow(p, t % S.n);
            f.c[t / S.n] = static_cast<GF::Elt>(static_cast<long>(f.c[t / S.n]) + dir[t] * step);
            for (size_t k = 0; k < S.levels.size(); ++k) {
                const GF& Kf = *S.levels[k].K;
                const auto& dl = S.levels[k].delta[t];
                auto& vk = val[k];
                if (p == 2)
                    for (size_t a = 0; a < vk.size(); ++a) vk[a] ^= dl[a];
                else if (dir[t] > 0)
                    for (size_t a = 0; a < vk.size(); ++a) vk[a] = Kf.add(vk[a], dl[a]);
                else
                    for (size_t a = 0; a < vk.size(); ++a) vk[a] = Kf.sub(vk[a], dl[a]);
            }
        }
    });

    SmoothCensus c;
    c.q = q;
    c.i = i;
    c.m = m;
    c.d = d;
    c.D = D;
    c.total_forms = static_cast<long long>(total) - 1;
    for (int w = 0; w < W; ++w) {
        c.smooth_forms += smooth[w];
        for (const auto& [k, v] : hist[w]) c.counts[k] += v;
    }
    return c;
}

Sign parse_sign(const std::string& s) {
    if (s == "plus" || s == "+") return Sign::plus;
    if (s == "minus" || s == "-") return Sign::minus;
    throw std::invalid_argument("unknown sign '" + s + "' (expected plus or minus)");
}

namespace {

// sum over census entries of weight(entry) * prod_j c_{tau_j}(entry), for all |tau| <= D.
template <class K, class SeriesFn>
SymSeries<K> census_mgf(const SmoothCensus& c, const K& one, SeriesFn&& series_of) {
    if (c.smooth_forms == 0) throw std::domain_error("no smooth forms at this (q, m, d)");
    const int D = c.D;
    SymSeries<K> out = SymSeries<K>::constant(one, D);
    std::vector<Partition> taus;
    for (int n = 1; n <= D; ++n)
        for (const auto& t : partitions_of(n)) taus.push_back(t);
    std::map<Partition, K> acc;
    for (const auto& [cnt, mult] : c.counts) {
        std::vector<K> s = series_of(cnt);
        for (const auto& t : taus) {
            K v = one;
            for (int part : t.parts()) v *= s[part];
            auto it = acc.find(t);
            K w = v * K(Rat(static_cast<long>(mult)));
            if (it == acc.end()) acc.emplace(t, w);
            else it->second += w;
        }
    }
    const Rat inv(mpq_class(mpz_class(1), mpz_class(static_cast<long>(c.smooth_forms))));
    for (auto& [t, v] : acc) out.add(t, v * K(inv));
    return out;
}

} // namespace

SymSeries<Rat> empirical_geo_mgf_from(const SmoothCensus& c, Sign sign) {
    return census_mgf<Rat>(c, Rat(1), [&](const std::vector<long long>& cnt) {
        std::vector<Rat> g;
        for (long long x : cnt) g.emplace_back(static_cast<long>(sign == Sign::plus ? x : -x));
        return to_series(WittTrunc<Rat>::from_ghosts(g), c.D);
    });
}

std::vector<SymSeries<Rat>> empirical_geo_mgf(long q, int m, int d, int D, int N, Sign sign, int threads) {
    std::vector<SymSeries<Rat>> out;
    for (int i = 1; i <= N; ++i) out.push_back(empirical_geo_mgf_from(smooth_census(q, i, m, d, D, threads), sign));
    return out;
}

std::vector<SymSeries<Rat>> limit_geo_mgf(long q, int m, int D, int N, Sign sign) {
    using W = WittTrunc<Rat>;
    const int L = N * D;
    std::vector<Rat> pg;
    for (int j = 1; j <= L; ++j)
        pg.push_back(Rat(mpq_class(mpz_class(zpow(q, static_cast<long>(j) * m) - 1), mpz_class(zpow(q, static_cast<long>(j) * (m + 1)) - 1))));
    const W p = W::from_ghosts(pg);
    auto lift = [](const Rat& r) { return W::diagonal(r); };
    SymSeries<Rat> body(D);
    for (int k = 1; k <= D; ++k) {
        if (sign == Sign::plus) body += basis_element(Basis::h, Partition{k}, D);
        else body += basis_element(Basis::e, Partition{k}, D).scaled(Rat(k % 2 ? -1 : 1));
    }
    Series<Partition, W> F = Series<Partition, W>::one(D) + body.map_coeffs(lift).scaled(p);
    const AdmZSet Y = AdmZSet::projective_space(q, m, L);
    std::vector<SymSeries<Rat>> out;
    for (int i = 1; i <= N; ++i) out.push_back(power_euler(F, Y, i));
    return out;
}

WittTrunc<CycloHalf> vanishing_mu(long q, int n, int length) {
    if (n < 0) throw std::invalid_argument("vanishing_mu: n must be >= 0");
    const int eps = n % 2 ? -1 : 1;
    CohomTable T{q, n, length};
    std::vector<CycloHalf> g;
    for (int k = 1; k <= length; ++k) {
        const CycloHalf a = CycloHalf::u_pow(2, q, -static_cast<long>(n) * k);
        CycloHalf s = CycloHalf::from_rat(2, q, Rat(0));
        for (int j = 0; j < n; ++j) {
            CycloHalf term = (a + CycloHalf::u_pow(2, q, static_cast<long>(n - 2 * j) * k)) * T.H(j).ghost(k);
            if (j % 2) s -= term;
            else s += term;
        }
        g.push_back(s * Rat(-eps) - a * T.H(n).ghost(k));
    }
    return WittTrunc<CycloHalf>::from_ghosts(std::move(g));
}

WittTrunc<CycloHalf> vanishing_class(long q, int n, int i, const std::vector<long long>& counts) {
    const int eps = n % 2 ? -1 : 1;
    const int N = static_cast<int>(counts.size());
    const auto mu = vanishing_mu(q, n, i * N);
    std::vector<CycloHalf> g;
    for (int k = 1; k <= N; ++k)
        g.push_back(CycloHalf::u_pow(2, q, -static_cast<long>(n) * i * k) * Rat(static_cast<long>(eps * counts[k - 1])) +
                    mu.ghost(i * k));
    return WittTrunc<CycloHalf>::from_ghosts(std::move(g));
}

SymSeries<CycloHalf> empirical_vanishing_mgf_from(const SmoothCensus& c, int n) {
    if (c.m != n + 1) throw std::invalid_argument("empirical_vanishing_mgf: census must live in P^{n+1}");
    return census_mgf<CycloHalf>(c, CycloHalf::from_rat(2, c.q, Rat(1)), [&](const std::vector<long long>& cnt) {
        return to_series(vanishing_class(c.q, n, c.i, cnt), c.D);
    });
}

std::vector<SymSeries<CycloHalf>> empirical_vanishing_mgf(long q, int n, int d, int D, int N, int threads) {
    std::vector<SymSeries<CycloHalf>> out;
    for (int i = 1; i <= N; ++i)
        out.push_back(empirical_vanishing_mgf_from(smooth_census(q, i, n + 1, d, D, threads), n));
    return out;
}

std::vector<SymSeries<CycloHalf>> limit_vanishing_mgf(long q, int n, int D, int N) {
    using W = WittTrunc<CycloHalf>;
    const int L = N * D;
    const int eps = n % 2 ? -1 : 1;
    auto K = [&](const Rat& r) { return CycloHalf::from_rat(2, q, r); };
    std::vector<CycloHalf> pg;
    for (int j = 1; j <= L; ++j)
        pg.push_back(K(Rat(mpq_class(mpz_class(zpow(q, static_cast<long>(j) * (n + 1)) - 1), mpz_class(zpow(q, static_cast<long>(j) * (n + 2)) - 1)))));
    const W p = W::from_ghosts(pg);
    auto lift = [&](const Rat& r) { return W::diagonal(K(r)); };
    Series<Partition, W> F = Series<Partition, W>::constant(W::diagonal(K(Rat(1))), D);
    for (int j = 1; j <= D; ++j) {
        W w = p * teichmuller(CycloHalf::u_pow(2, q, -static_cast<long>(j) * n), L);
        if (eps < 0 && j % 2) w = -w;
        F += basis_element(n % 2 ? Basis::e : Basis::h, Partition{j}, D).map_coeffs(lift).scaled(w);
    }
    const AdmZSet Y = AdmZSet::projective_space(q, n + 1, L);
    Series<Partition, W> muh = Series<Partition, W>::monomial(Partition{1}, vanishing_mu(q, n, L), D);
    Series<Partition, W> E = exp_sigma(muh);
    std::vector<SymSeries<CycloHalf>> out;
    for (int i = 1; i <= N; ++i) out.push_back(power_euler(F, Y, i) * ghost_projection(E, i));
    return out;
}

} // namespace lp
