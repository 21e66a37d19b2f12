#include "doctest.h"

#include "lamprob/witt.hpp"

using namespace lp;

namespace {
using W = WittTrunc<Rat>;
std::vector<Rat> rats(std::initializer_list<long> v) {
    std::vector<Rat> r;
    for (long x : v) r.emplace_back(x);
    return r;
}
} // namespace

TEST_CASE("series and ghost coordinates") {
    // 1 / (1 - t) has ghosts 1, 1, 1
    auto w = from_series(rats({1, 1, 1, 1}));
    CHECK(w.ghosts(3) == rats({1, 1, 1}));
    CHECK(to_series(w, 3) == rats({1, 1, 1, 1}));
    // Witt sum is the product of series
    auto a = from_series(rats({1, 2, 0, -1}));
    auto b = from_series(rats({1, -1, 3, 5}));
    auto prod = to_series(a + b, 3);
    CHECK(prod == rats({1, 1, 1, 10}));
    CHECK_THROWS(from_series(rats({2, 1})));
}

TEST_CASE("Teichmuller elements multiply") {
    auto t = teichmuller(Rat(3), 4);
    CHECK(t.ghosts(4) == rats({3, 9, 27, 81}));
    CHECK(teichmuller(Rat(2), 4) * teichmuller(Rat(5), 4) == teichmuller(Rat(10), 4));
    // [z] is the series 1 / (1 - z t)
    CHECK(to_series(t, 3) == rats({1, 3, 9, 27}));
}

TEST_CASE("diagonal vectors and truncation") {
    W c = W::diagonal(Rat(7));
    CHECK(c.is_diagonal());
    CHECK(c.ghost(100) == Rat(7));
    W f = W::from_ghosts(rats({1, 2, 3}));
    CHECK((f * c).length() == 3);
    CHECK((f * c).ghosts(3) == rats({7, 14, 21}));
    CHECK(f.dilated(2).ghosts(1) == rats({2}));
    CHECK_THROWS(substitute_tk(c, 2));
    CHECK(substitute_tk(f, 2).ghosts(3) == rats({0, 2, 0}));
    CHECK_THROWS(W::from_ghosts(rats({1, 0})).inv());
}

TEST_CASE("admissible Z-sets") {
    auto P1 = AdmZSet::projective_space(2, 1, 4);
    for (int k = 1; k <= 4; ++k) CHECK(P1.point_count(k) == ipow(2, k) + 1);
    auto A2 = AdmZSet::affine_space(3, 2, 3);
    for (int k = 1; k <= 3; ++k) CHECK(A2.point_count(k) == ipow(9, k));
    // orbits of P^1(F_2): 3 rational points, one of degree 2, two of degree 3
    auto fromcounts = AdmZSet::from_point_counts({3, 5, 9});
    for (const auto& o : fromcounts.orbits()) {
        if (o.degree == 1) CHECK(o.mult == 3);
        if (o.degree == 2) CHECK(o.mult == 1);
        if (o.degree == 3) CHECK(o.mult == 2);
    }
    CHECK(class_of<Rat>(P1, 3) == class_of<Rat>(AdmZSet::affine_space(2, 1, 3).disjoint_union(AdmZSet::affine_space(2, 0, 3)), 3));
}

TEST_CASE("integration and expectation") {
    auto S = AdmZSet::from_point_counts({2, 2, 2}); // two rational points
    WFunction<Rat> f;
    for (size_t j = 0; j < S.orbits().size(); ++j) f.push_back(W::diagonal(Rat(3)));
    CHECK(expectation(S, f, 2).ghosts(2) == rats({3, 3}));
    // pulling back [z] from a point integrates to [S] [z]
    auto z = teichmuller(Rat(5), 3);
    auto I = integrate(S, pullback_from_point(z, S), 3);
    CHECK(I == class_of<Rat>(S, 3) * z);
    // expectation over an empty level set is undefined
    AdmZSet E({{2, 1}});
    WFunction<Rat> g{W::diagonal(Rat(1))};
    CHECK_THROWS_AS(expectation_component(E, g, 1), std::domain_error);
}

TEST_CASE("power over A^1 as an Euler product") {
    // (1 + h_1 + h_2 + ...)^{[A^1]} = Exp([A^1] h_1): the m_1 coefficient at ghost i is q^i
    const int D = 3;
    auto F = diagonal_lift(sum_of(Basis::h, {0, 1, 2, 3}, D));
    auto A1 = AdmZSet::affine_space(3, 1, D * 3);
    for (int i = 1; i <= 3; ++i) {
        auto G = power_euler(F, A1, i);
        CHECK(G.coeff(Partition{1}) == Rat(ipow(3, i)));
        // Sym^2 A^1 = A^2, so the m_(2) coefficient is q^{2i} as well
        CHECK(G.coeff(Partition{1, 1}) == Rat(ipow(3, 2 * i)));
        CHECK(G.coeff(Partition{2}) == Rat(ipow(3, 2 * i)));
    }
}
