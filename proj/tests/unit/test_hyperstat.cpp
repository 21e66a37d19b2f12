#include "doctest.h"

#include "lamprob/hyperstat.hpp"

using namespace lp;

namespace {

HomogForm plane(std::vector<std::pair<GF::Elt, std::vector<int>>> t, int d) { return HomogForm::from_terms(2, d, t); }

std::vector<Rat> ghosts_rat(const WittTrunc<Rat>& w, int N) { return w.ghosts(N); }

} // namespace

TEST_CASE("smoothness examples") {
    const GF& F2 = GF::get(2);
    const GF& F3 = GF::get(3);
    auto fermat = plane({{1, {3, 0, 0}}, {1, {0, 3, 0}}, {1, {0, 0, 3}}}, 3);
    CHECK(smoothness_test(F2, fermat));
    CHECK_FALSE(smoothness_test(F3, fermat));
    CHECK_FALSE(smoothness_test(F2, plane({{1, {1, 1, 1}}}, 3)));
    CHECK(smoothness_test(F2, plane({{1, {2, 0, 0}}, {1, {0, 1, 1}}}, 2)));
    CHECK(smoothness_test(F2, plane({{1, {1, 0, 0}}}, 1)));
    // binary forms: x^2 is a double point, xy two simple points
    CHECK_FALSE(smoothness_test(F2, HomogForm::from_terms(1, 2, {{1, {2, 0}}})));
    CHECK_FALSE(smoothness_test(F2, HomogForm::from_terms(1, 2, {{1, {0, 2}}})));
    CHECK(smoothness_test(F2, HomogForm::from_terms(1, 2, {{1, {1, 1}}})));
}

TEST_CASE("zeta of smooth sections") {
    const GF& F2 = GF::get(2);
    auto conic = plane({{1, {2, 0, 0}}, {1, {0, 1, 1}}}, 2);
    CHECK(ghosts_rat(zeta_of_section(F2, conic, 4), 4) == std::vector<Rat>{3, 5, 9, 17});
    auto xy = HomogForm::from_terms(1, 2, {{1, {1, 1}}});
    CHECK(ghosts_rat(zeta_of_section(F2, xy, 3), 3) == std::vector<Rat>{2, 2, 2});
    const GF& F3 = GF::get(3);
    auto hyper = HomogForm::from_terms(3, 1, {{1, {1, 0, 0, 0}}, {2, {0, 0, 1, 0}}});
    CHECK(zeta_of_section(F3, hyper, 3) == class_of<Rat>(AdmZSet::projective_space(3, 2, 3), 3));
    CHECK_THROWS(zeta_of_section(F2, plane({{1, {1, 1, 1}}}, 3), 2));
}

TEST_CASE("Macaulay certificate agrees with exhaustive singular-point search") {
    struct Case {
        long q;
        int m, d, ext;
    };
    // Singular points of plane cubics and of binary forms of degree <= 6 are
    // defined over extensions of degree <= 3.
    for (Case c : {Case{2, 2, 3, 6}, Case{2, 1, 2, 6}, Case{2, 1, 3, 6}, Case{2, 1, 4, 6}, Case{2, 1, 5, 6},
                   Case{2, 1, 6, 6}, Case{3, 1, 4, 3}, Case{2, 2, 2, 3}, Case{3, 2, 2, 3}}) {
        const GF& F = GF::get(c.q);
        const auto M = monomials(c.m + 1, c.d).size();
        const std::uint64_t n = static_cast<std::uint64_t>(ipow(c.q, static_cast<int>(M)));
        long disagreements = 0;
        for (std::uint64_t idx = 1; idx < n; ++idx) {
            auto f = HomogForm::from_index(F, c.m, c.d, idx);
            if (smoothness_test(F, f) == has_singular_point(F, f, c.ext)) ++disagreements;
        }
        CHECK_MESSAGE(disagreements == 0, "q=", c.q, " m=", c.m, " d=", c.d);
    }
}

TEST_CASE("Gray-code census matches direct evaluation") {
    for (auto [q, m, d, D] : {std::tuple{3L, 1, 3, 2}, std::tuple{2L, 2, 2, 2}, std::tuple{4L, 1, 2, 2}, std::tuple{5L, 1, 2, 1}}) {
        const GF& F = GF::get(q);
        std::map<std::vector<long long>, long long> direct;
        long long smooth = 0;
        const auto M = monomials(m + 1, d).size();
        const std::uint64_t n = static_cast<std::uint64_t>(ipow(q, static_cast<int>(M)));
        for (std::uint64_t idx = 1; idx < n; ++idx) {
            auto f = HomogForm::from_index(F, m, d, idx);
            if (!smoothness_test(F, f)) continue;
            ++smooth;
            ++direct[point_counts(F, f, D)];
        }
        auto c1 = smooth_census(q, 1, m, d, D, 1);
        auto c3 = smooth_census(q, 1, m, d, D, 3);
        CHECK(c1.smooth_forms == smooth);
        CHECK(c1.counts == direct);
        CHECK(c3.counts == direct);
    }
}

TEST_CASE("geometric MGFs") {
    auto e = empirical_geo_mgf(2, 1, 2, 3, 1, Sign::plus);
    CHECK(e[0].coeff(Partition{}) == Rat(1));
    CHECK(e[0].coeff(Partition{1}) == Rat(3, 2));
    auto L0 = limit_geo_mgf(2, 1, 3, 2, Sign::plus);
    CHECK(L0[0].coeff(Partition{1}) == Rat(1));
    CHECK(L0[0].coeff(Partition{}) == Rat(1));
    auto L1 = limit_geo_mgf(2, 2, 3, 2, Sign::plus);
    CHECK(L1[0].coeff(Partition{1}) == Rat(3));
    // the mean of #Z(F_{q^i}) in the limit is p_i [P^m]_i at every ghost
    for (int i = 1; i <= 2; ++i) {
        Rat Q(ipow(2, i));
        CHECK(L1[i - 1].coeff(Partition{1}) == (Q * Q - Rat(1)) / (Q * Q * Q - Rat(1)) * (Q * Q + Q + Rat(1)));
    }
    // minus sign: first moment flips
    auto Lm = limit_geo_mgf(2, 2, 3, 1, Sign::minus);
    CHECK(Lm[0].coeff(Partition{1}) == Rat(-3));
}

TEST_CASE("plane cubics over F_2 satisfy the Weil bound and have L of degree 2") {
    auto c = smooth_census(2, 1, 2, 3, 4);
    CHECK(c.smooth_forms > 0);
    for (const auto& [cnt, mult] : c.counts) {
        for (int k = 1; k <= 4; ++k) {
            long long a = ipow(2, k) + 1 - cnt[k - 1];
            CHECK(static_cast<long double>(a * a) <= 4.0L * ipow(2, k));
        }
        // Z(t) (1 - t)(1 - 2t) is a polynomial of degree 2
        std::vector<Rat> g;
        for (long long x : cnt) g.emplace_back(static_cast<long>(x));
        auto z = to_series(WittTrunc<Rat>::from_ghosts(g), 4);
        std::vector<Rat> P(5, Rat(0));
        for (int k = 0; k <= 4; ++k) {
            P[k] += z[k];
            if (k >= 1) P[k] -= Rat(3) * z[k - 1];
            if (k >= 2) P[k] += Rat(2) * z[k - 2];
        }
        CHECK(P[3] == Rat(0));
        CHECK(P[4] == Rat(0));
        CHECK(P[2] == Rat(2));
    }
}

TEST_CASE("vanishing cohomology") {
    CohomTable T{2, 1, 4};
    CHECK(T.poincare_symmetric());
    CHECK(CohomTable{3, 2, 3}.poincare_symmetric());
    auto mu = vanishing_mu(2, 1, 4);
    for (int k = 1; k <= 4; ++k)
        CHECK(mu.ghost(k) == CycloHalf::u_pow(2, 2, -k) + CycloHalf::u_pow(2, 2, k));
    CHECK(vanishing_mu(3, 0, 3) == WittTrunc<CycloHalf>::from_ghosts(std::vector<CycloHalf>(3, CycloHalf(-1))));
    auto conics = empirical_vanishing_mgf(2, 1, 2, 4, 2);
    for (const auto& s : conics) CHECK(s == SymSeries<CycloHalf>::constant(CycloHalf::from_rat(2, 2, Rat(1)), 4));
    auto L = limit_vanishing_mgf(2, 1, 4, 2);
    CHECK(L[0].coeff(Partition{}) == CycloHalf(1));
}

TEST_CASE("first two moments match tools/oracles/hypersurf_oracle.py") {
    struct Row {
        long q;
        int m, d;
        long long smooth;
        Rat mean, second;
    };
    for (const Row& r : {Row{2, 1, 2, 4, Rat(3, 2), Rat(3)}, Row{2, 1, 3, 6, Rat(1), Rat(2)}, Row{2, 1, 4, 12, Rat(1), Rat(3, 2)},
                         Row{2, 1, 5, 24, Rat(1), Rat(7, 4)}, Row{3, 1, 2, 18, Rat(4, 3), Rat(8, 3)}, Row{3, 1, 3, 48, Rat(1), Rat(2)},
                         Row{3, 1, 4, 144, Rat(1), Rat(5, 3)}, Row{2, 2, 2, 28, Rat(3), Rat(9)}, Row{2, 2, 3, 336, Rat(3), Rat(21, 2)},
                         Row{3, 2, 2, 468, Rat(4), Rat(16)}}) {
        CAPTURE(r.q);
        CAPTURE(r.m);
        CAPTURE(r.d);
        CHECK(smooth_census(r.q, 1, r.m, r.d, 1).smooth_forms == r.smooth);
        auto e = empirical_geo_mgf(r.q, r.m, r.d, 2, 1, Sign::plus);
        CHECK(e[0].coeff(Partition{1}) == r.mean);
        CHECK(e[0].coeff(Partition{1, 1}) == r.second);
    }
}

TEST_CASE("oversized point tables are rejected before allocation") {
    // conics over F_16 with four levels would need every point of P^2(F_{16^4})
    CHECK_THROWS_AS(empirical_vanishing_mgf(2, 1, 2, 4, 4), std::length_error);
}
