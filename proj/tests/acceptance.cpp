// Acceptance run: one PASS/FAIL line per criterion 1-10, with timings and the
// pinned tolerances. Detail lines are indented under each criterion.
//
// Exit status: 0 when every criterion's outcome equals its recorded expectation
// (kExpected below), 1 otherwise. With --strict, 0 only when all criteria pass.
#include "lamprob/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <set>
#include <iostream>
#include <sstream>

using namespace lp;

namespace {

// Pinned tolerances.
constexpr long double kCharGapAtD7 = 0.05L;   // criterion 5
constexpr double kMcSigmas = 3.0;              // criterion 10
constexpr double kMcAbsFloor = 1e-9;           // criterion 10, rows with zero variance
constexpr long kMcSamples = 100000;            // criterion 10
constexpr std::uint64_t kMcSeed = 1;           // criterion 10
constexpr std::uint64_t kSuiteSeed = 1;        // criterion 4
constexpr int kSuiteTrials = 25;               // criterion 4

// Recorded outcomes. Criteria 7 and 9 fail on the stated ranges; the reasons are
// printed with their g_detail lines.
constexpr bool kExpected[11] = {false, true, true, true, true, true, true, false, true, false, true};

std::ostringstream g_detail;

void note(const std::string& s) { g_detail << "    " << s << "\n"; }

std::string fmt(long double x) { return format_ld(x); }

long double mag(const CycloHalf& x) { return std::abs(x.embed()); }

bool non_increasing(const std::vector<long double>& v) {
    for (size_t j = 1; j < v.size(); ++j)
        if (v[j] > v[j - 1] * (1 + kFloatSlack)) return false;
    return true;
}

std::string join(const std::vector<long double>& v) {
    std::string s;
    for (size_t j = 0; j < v.size(); ++j) s += (j ? ", " : "") + fmt(v[j]);
    return s;
}

std::string report_line(const CongruenceReport& r) {
    return r.label + ": M = " + fmt(r.M) + ", growth = " + fmt(r.growth) + " -> " + (r.pass ? "pass" : "FAIL");
}

// 1. S_n MGF against vector partition counts.
bool c1() {
    bool ok = true;
    for (int n = 3; n <= 5; ++n) {
        const auto F = sym_group_mgf(n, n);
        int checked = 0;
        for (const auto& t : enumerate(n)) {
            ++checked;
            if (!(F.coeff(t) == Rat(vector_partition_count(t)))) {
                ok = false;
                note("n=" + std::to_string(n) + " tau=" + t.str() + " mismatch");
            }
        }
        note("n=" + std::to_string(n) + ": " + std::to_string(checked) + " coefficients compared");
    }
    return ok;
}

// 2. Stable trace moments and their finite-n values.
bool c2() {
    struct M {
        Group g;
        std::vector<int> a, b;
        Rat want;
        const char* name;
    };
    const std::vector<M> ms = {{Group::O, {2}, {}, Rat(1), "E[(Tr M)^2]_O"},
                               {Group::O, {1}, {}, Rat(0), "E[Tr M]_O"},
                               {Group::U, {1}, {1}, Rat(1), "E[|Tr M|^2]_U"},
                               {Group::U, {0, 1}, {0, 1}, Rat(2), "E[Tr M^2 conj Tr M^2]_U"},
                               {Group::Sp, {0, 1}, {}, Rat(-1), "E[Tr M^2]_Sp"}};
    bool ok = true;
    for (const auto& m : ms) {
        const Rat st = ds_trace_moment(m.g, m.a, m.b);
        bool row = st == m.want;
        int wa = 0, wb = 0;
        for (size_t i = 0; i < m.a.size(); ++i) wa += static_cast<int>(i + 1) * m.a[i];
        for (size_t i = 0; i < m.b.size(); ++i) wb += static_cast<int>(i + 1) * m.b[i];
        std::string ns;
        for (int n = 1; n <= 5; ++n) {
            if (std::max(wa, wb) > n || (m.g == Group::Sp && n % 2)) continue;
            const Rat fin = ds_trace_moment_finite(m.g, n, m.a, m.b);
            row = row && fin == m.want;
            ns += " n=" + std::to_string(n) + ":" + fin.str();
        }
        note(std::string(m.name) + " = " + st.str() + " (want " + m.want.str() + "); finite" + ns + (row ? "" : "  MISMATCH"));
        ok = ok && row;
    }
    return ok;
}

// 3. Falling moments of cycle counts.
bool c3() {
    bool ok = true;
    int checked = 0;
    for (int n = 1; n <= 8; ++n)
        for (int k1 = 0; k1 <= n; ++k1)
            for (int k2 = 0; k1 + 2 * k2 <= n; ++k2)
                for (int k3 = 0; k1 + 2 * k2 + 3 * k3 <= n; ++k3)
                    for (int k4 = 0; k1 + 2 * k2 + 3 * k3 + 4 * k4 <= n; ++k4) {
                        const Rat want = Rat(1, 2).pow(k2) * Rat(1, 3).pow(k3) * Rat(1, 4).pow(k4);
                        ++checked;
                        if (!(cycle_falling_moments(n, {k1, k2, k3, k4}) == want)) {
                            ok = false;
                            note("mismatch at n=" + std::to_string(n));
                        }
                    }
    note(std::to_string(checked) + " moment vectors compared for n <= 8");
    return ok;
}

// 4. Randomized identity suite.
bool c4() {
    bool ok = true;
    for (const auto& r : run_identity_suite(kSuiteSeed, kSuiteTrials)) {
        note(r.name + ": " + std::to_string(r.passed) + "/" + std::to_string(r.trials));
        ok = ok && r.pass();
    }
    return ok;
}

// 5. ell = 2, q = 3.
bool c5() {
    const long q = 3;
    const CharCtx ch{2, 1};
    bool ok = true;
    for (int d : {1, 3, 5, 7}) {
        const FqCtx ctx{q, 1};
        long bad = 0, total = 0;
        for (const auto& f : enumerate_ellfree(ctx, 2, d)) {
            ++total;
            if (l_series_degree(ctx, ch, f, d + 1) != d - 1) ++bad;
        }
        note("d=" + std::to_string(d) + ": deg L = d-1 for " + std::to_string(total - bad) + "/" + std::to_string(total));
        ok = ok && bad == 0;
    }
    const int D = 3;
    const auto Le = limit_mgf_chars(q, ch, 4, 4, LimitMode::euler);
    const auto Lp = limit_mgf_chars(q, ch, 4, 4, LimitMode::power);
    note(std::string("euler and power limits agree exactly (D=4, N=4): ") + (Le == Lp ? "yes" : "NO"));
    ok = ok && Le == Lp;
    const std::vector<Partition> taus = {{1}, {2}, {1, 1}, {2, 1}};
    std::vector<long double> gaps;
    for (int d : {3, 5, 7}) {
        const auto E = empirical_mgf_chars_ghost(FqCtx{q, 1}, ch, d, D);
        long double g = 0;
        std::string row;
        for (const auto& t : taus) {
            const long double x = mag(E.coeff(1, t) - Le.coeff(1, t));
            g = std::max(g, x);
            row += " " + t.str() + ":" + fmt(x);
        }
        gaps.push_back(g);
        note("d=" + std::to_string(d) + " gap " + fmt(g) + " |" + row);
    }
    const bool mono = non_increasing(gaps);
    note("non-increasing: " + std::string(mono ? "yes" : "NO") + "; gap at d=7 " + fmt(gaps.back()) + " <= " + fmt(kCharGapAtD7) + ": " +
         (gaps.back() <= kCharGapAtD7 ? "yes" : "NO"));
    return ok && mono && gaps.back() <= kCharGapAtD7;
}

// 6. ell = 3, q = 4, joint MGF through total degree 3.
bool c6() {
    const long q = 4;
    const CharCtx ch{3, 1};
    const int D = 3;
    const auto L = limit_mgf_chars(q, ch, D, 1, LimitMode::euler);
    std::vector<long double> gaps;
    for (int d : {2, 4, 5}) {
        const auto E = empirical_mgf_chars_ghost(FqCtx{q, 1}, ch, d, D);
        long double g = 0;
        PartPair arg;
        std::set<PartPair> keys;
        for (const auto& [k, v] : E.joint[0].terms()) keys.insert(k);
        for (const auto& [k, v] : L.joint[0].terms()) keys.insert(k);
        std::string row;
        for (const auto& k : keys) {
            if (k.size() == 0 || k.size() > D) continue;
            const long double x = mag(E.joint[0].coeff(k) - L.joint[0].coeff(k));
            if (x > g) g = x, arg = k;
            if (k.size() <= 2) row += " " + k.str() + ":" + fmt(x);
        }
        gaps.push_back(g);
        note("d=" + std::to_string(d) + " sup gap " + fmt(g) + " at " + arg.str() + " |" + row);
    }
    const bool mono = non_increasing(gaps);
    note(std::string("non-increasing: ") + (mono ? "yes" : "NO"));
    return mono;
}

// Ghost-1 sup gap over |tau| <= 3 between empirical and limit geometric MGFs.
long double geo_gap(long q, int m, int d) {
    const int D = 3;
    const auto E = empirical_geo_mgf(q, m, d, D, 1, Sign::plus);
    const auto L = limit_geo_mgf(q, m, D, 1, Sign::plus);
    long double g = 0;
    for (const auto& t : enumerate(D)) {
        if (t.empty()) continue;
        g = std::max(g, (E[0].coeff(t) - L[0].coeff(t)).abs().to_ld());
    }
    return g;
}

// 7. Hypersurfaces: n = 0, q in {2, 3}, d = 1..8; n = 1, q = 2, d = 3..5.
bool c7() {
    bool ok = true;
    for (long q : {2L, 3L}) {
        std::vector<long double> g;
        for (int d = 1; d <= 8; ++d) g.push_back(geo_gap(q, 1, d));
        const bool mono = non_increasing(g);
        note("n=0 q=" + std::to_string(q) + " d=1..8 gaps: " + join(g) + " -> " + (mono ? "non-increasing" : "NOT non-increasing"));
        if (!mono) {
            const bool tail = non_increasing(std::vector<long double>(g.begin() + 1, g.end()));
            note("  d=2..8 alone: " + std::string(tail ? "non-increasing" : "NOT non-increasing") +
                 "; a binary linear form always has exactly one point, so d=1 sits below d=2");
        }
        ok = ok && mono;
    }
    {
        std::vector<long double> g;
        for (int d = 3; d <= 5; ++d) g.push_back(geo_gap(2, 2, d));
        const bool mono = non_increasing(g);
        note("n=1 q=2 d=3..5 gaps: " + join(g) + " -> " + (mono ? "non-increasing" : "NOT non-increasing"));
        ok = ok && mono;
    }
    const auto E = empirical_geo_mgf(2, 1, 2, 1, 1, Sign::plus);
    const auto L = limit_geo_mgf(2, 1, 1, 1, Sign::plus);
    const bool exact = E[0].coeff(Partition{1}) == Rat(3, 2) && L[0].coeff(Partition{1}) == Rat(1);
    note("binary quadrics over F_2: mean points " + E[0].coeff(Partition{1}).str() + ", limit " + L[0].coeff(Partition{1}).str() +
         (exact ? "" : "  MISMATCH"));
    return ok && exact;
}

// 8. Vanishing cohomology, n = 1.
bool c8() {
    const long q = 2;
    bool ok = true;
    const auto conics = empirical_vanishing_mgf(q, 1, 2, 4, 2);
    bool one = true;
    for (const auto& s : conics) one = one && s == SymSeries<CycloHalf>::constant(CycloHalf::from_rat(2, q, Rat(1)), 4);
    note(std::string("conics: MGF = 1 through degree 4 at ghosts 1..2: ") + (one ? "yes" : "NO"));
    const auto mu = vanishing_mu(q, 1, 6);
    bool mu_ok = true;
    for (int k = 1; k <= 6; ++k) mu_ok = mu_ok && mu.ghost(k) == CycloHalf::u_pow(2, q, -k) + CycloHalf::u_pow(2, q, k);
    note(std::string("mu = [q^-1/2] + [q^1/2] on ghosts 1..6: ") + (mu_ok ? "yes" : "NO"));
    const auto r = compare_hypersurface(q, 1, 4, 4);
    note(report_line(r));
    ok = one && mu_ok && r.pass;
    return ok;
}

// 9. Congruence suite.
bool c9() {
    bool ok = true;
    auto run = [&](const CongruenceReport& r, bool counts = true) {
        note(report_line(r) + (counts ? "" : "  (supplementary)"));
        if (counts) ok = ok && r.pass;
        return r;
    };
    for (long q : {3L, 5L}) run(compare_chars(q, 2, 4, 4));
    bool ell3 = true;
    for (long q : {4L, 7L}) ell3 = run(compare_chars(q, 3, 4, 4)).pass && ell3;
    run(compare_chars(11, 5, 4, 4));
    run(compare_chars(8, 7, 4, 4));
    for (long q : {2L, 3L}) run(compare_hypersurface(q, 2, 4, 4));
    for (long q : {2L, 3L}) run(compare_hypersurface(q, 0, 4, 4));
    for (long q : {2L, 3L}) run(compare_hypersurface(q, 1, 4, 4), false);
    if (!ell3) {
        note("ell = 3: the limit carries -c_3 [q^-3/2] e_3 from the (3,0) term; after the [q] power it is of size q^-1/2,");
        note("so the difference to Exp(h1 hbar1) is O(q^-1/2), not O(q^-1). Modulo [q^-1/2] instead:");
        for (long q : {4L, 7L}) run(compare_chars(q, 3, 4, 4, kDefaultMCap, -1), false);
    }
    Config c;
    c.values = {{"q", "2"}, {"trunc", "6"}, {"witt", "4"}, {"trials", "1"}};
    const auto id = run_experiment("identities", c);
    for (const auto& e : id.doc["exp_log"]) {
        const bool p = e["pass"].get<bool>();
        note("exp/log first order, a = " + e["a"].get<std::string>() + ": M' (exp) = " + e["exp"]["M_fitted"].get<std::string>() +
             ", M' (log) = " + e["log"]["M_fitted"].get<std::string>() + " -> " + (p ? "pass" : "FAIL"));
        ok = ok && p;
    }
    for (long q : {2L, 3L}) {
        const auto sh = stable_homology_identity(q, 6, 4);
        note("stable homology q=" + std::to_string(q) + " D=6 N=4, constant " + sh.constant.str() + ": " + (sh.pass ? "exact" : "FAIL"));
        ok = ok && sh.pass;
    }
    return ok;
}

// 10. Invariant dimensions against Haar Monte Carlo.
bool c10() {
    bool ok = true;
    long rows = 0, worst_n = 0;
    double worst = 0;
    std::string worst_s;
    auto check = [&](Group g, int n, const std::vector<std::pair<Partition, Partition>>& keys, const std::function<Rat(const Partition&, const Partition&)>& exact) {
        const auto est = haar_mc_oracle(g, n, keys, kMcSamples, kMcSeed);
        int bad = 0;
        for (size_t j = 0; j < keys.size(); ++j) {
            const double ex = static_cast<double>(exact(keys[j].first, keys[j].second).to_ld());
            const double dev = std::abs(est[j].mean - ex);
            const bool w = dev <= kMcSigmas * est[j].stderr_ + kMcAbsFloor;
            ++rows;
            if (!w) {
                ++bad;
                note(group_name(g) + "(" + std::to_string(n) + ") " + keys[j].first.str() + "|" + keys[j].second.str() + ": exact " +
                     std::to_string(ex) + ", mc " + std::to_string(est[j].mean) + " +- " + std::to_string(est[j].stderr_));
            }
            if (est[j].stderr_ > 0 && dev / est[j].stderr_ > worst) {
                worst = dev / est[j].stderr_;
                worst_n = n;
                worst_s = group_name(g) + " " + keys[j].first.str() + "|" + keys[j].second.str();
            }
        }
        note(group_name(g) + "(" + std::to_string(n) + "): " + std::to_string(keys.size() - bad) + "/" + std::to_string(keys.size()) +
             " within " + fmt(kMcSigmas) + " SE");
        ok = ok && bad == 0;
    };
    std::vector<std::pair<Partition, Partition>> single, pairs;
    for (const auto& t : enumerate(4)) single.push_back({t, Partition{}});
    for (const auto& a : enumerate(4))
        for (const auto& b : enumerate(4))
            if (a.size() == b.size()) pairs.push_back({a, b});
    for (int n = 1; n <= 4; ++n) check(Group::O, n, single, [&](const Partition& a, const Partition&) { return Rat(orthogonal_inv_dim(n, a)); });
    for (int n : {2, 4}) check(Group::Sp, n, single, [&](const Partition& a, const Partition&) { return Rat(so_sp_inv_dim(Group::Sp, n, a)); });
    for (int n = 1; n <= 4; ++n)
        check(Group::U, n, pairs, [&](const Partition& a, const Partition& b) { return Rat(unitary_inv_dim(n, a, b)); });
    note(std::to_string(rows) + " rows, " + std::to_string(kMcSamples) + " samples, seed " + std::to_string(kMcSeed) +
         "; largest deviation " + fmt(worst) + " SE at " + worst_s + " n=" + std::to_string(worst_n));
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    const bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
    const std::vector<std::pair<const char*, std::function<bool()>>> crits = {
        {"symmetric-group MGF equals prod 1/(1-m), n = 3,4,5", c1},
        {"stable trace moments and finite-n agreement", c2},
        {"cycle-count falling moments, n <= 8", c3},
        {"randomized identity suite", c4},
        {"characters ell=2, q=3: deg L, gaps over d=3,5,7, euler = power", c5},
        {"characters ell=3, q=4: joint gaps over d=2,4,5", c6},
        {"hypersurfaces: geometric gaps non-increasing, binary quadric value", c7},
        {"vanishing cohomology n=1: conics, mu, congruence with Exp(e2)", c8},
        {"congruence suite, exp/log approximations, stable homology", c9},
        {"invariant dimensions vs Haar Monte Carlo", c10},
    };
    int passed = 0, as_expected = 0;
    std::string summary;
    for (size_t j = 0; j < crits.size(); ++j) {
        const int k = static_cast<int>(j + 1);
        g_detail.str("");
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = crits[j].second();
        } catch (const std::exception& e) {
            note(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        passed += ok;
        as_expected += ok == kExpected[k];
        char head[256];
        std::snprintf(head, sizeof head, "criterion %2d: %s  (%.1f s)  %s", k, ok ? "PASS" : "FAIL", secs, crits[j].first);
        std::cout << head << "\n" << g_detail.str() << std::flush;
        if (ok != kExpected[k]) summary += " " + std::to_string(k);
    }
    std::cout << "\n" << passed << "/" << crits.size() << " criteria pass";
    if (summary.empty())
        std::cout << "; every outcome matches the recorded expectation\n";
    else
        std::cout << "; outcome differs from the recorded expectation for criteria" << summary << "\n";
    if (strict) return passed == static_cast<int>(crits.size()) ? 0 : 1;
    return summary.empty() ? 0 : 1;
}
