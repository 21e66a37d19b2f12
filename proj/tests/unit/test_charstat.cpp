#include "doctest.h"

#include "lamprob/charstat.hpp"

using namespace lp;

namespace {

CycloHalf R(int ell, long q, const Rat& r) { return CycloHalf::from_rat(ell, q, r); }

} // namespace

TEST_CASE("finite field arithmetic satisfies the field axioms") {
    for (long q : {2L, 3L, 4L, 8L, 9L, 25L}) {
        const GF& F = GF::get(q);
        CHECK(F.size() == q);
        for (GF::Elt a = 0; a < q; ++a) {
            CHECK(F.add(a, F.neg(a)) == 0);
            if (a) CHECK(F.mul(a, F.inv(a)) == 1);
            // Frobenius is additive
            for (GF::Elt b = 0; b < q; ++b)
                CHECK(F.pow(F.add(a, b), F.p()) == F.add(F.pow(a, F.p()), F.pow(b, F.p())));
        }
        // the generator has full order
        long ord = 1;
        for (GF::Elt g = F.generator(); g != 1; g = F.mul(g, F.generator())) ++ord;
        CHECK(ord == q - 1);
    }
}

TEST_CASE("resultant against a monic linear factor is the value") {
    const GF& F = GF::get(9);
    FqPoly f = {5, 0, 7, 1};
    for (GF::Elt a = 0; a < 9; ++a) {
        FqPoly P = {F.neg(a), 1};
        CHECK(resultant(F, P, f) == poly_eval(F, f, a));
    }
    // Res(P, f) for irreducible quadratic P equals f(r) f(r^3) with r a root in F_81.
    const GF& E = GF::get(81);
    GF::Elt r = smallest_root(E, {2, 2, 1}); // x^2 + 2x + 2 over F_3
    const GF& F3 = GF::get(3);
    FqPoly P = {2, 2, 1}, g = {1, 2, 0, 1};
    CHECK(monic_irreducibles(F3, 2).size() == 3);
    GF::Elt prod = 1;
    for (GF::Elt root : {r, E.pow(r, 3)}) {
        GF::Elt v = 0;
        for (int j = deg(g); j >= 0; --j) v = E.add(E.mul(v, root), E.from_int(g[j]));
        prod = E.mul(prod, v);
    }
    CHECK(static_cast<long>(prod) == static_cast<long>(resultant(F3, P, g)));
}

TEST_CASE("ell-power free enumeration") {
    FqCtx c3{3, 1};
    CHECK(enumerate_ellfree(c3, 2, 1).size() == 3);
    CHECK(enumerate_ellfree(c3, 2, 2).size() == 6);
    CHECK(enumerate_ellfree(c3, 2, 3).size() == 18);
    FqCtx c4{4, 1};
    for (int d = 1; d <= 4; ++d)
        CHECK(static_cast<long long>(enumerate_ellfree(c4, 3, d).size()) == count_ellfree(4, 3, d));
    // characteristic 2: x^2 + 1 = (x + 1)^2 has zero derivative
    CHECK_FALSE(is_ellfree(GF::get(4), FqPoly{1, 0, 1}, 2));
}

TEST_CASE("character values") {
    FqCtx c{3, 1};
    CharCtx ch{2, 1};
    FqPoly x = {0, 1};
    CHECK(char_value(c, ch, x, FqPoly{2, 1}) == R(2, 3, Rat(1)));  // P = x - 1
    CHECK(char_value(c, ch, x, FqPoly{1, 1}) == R(2, 3, Rat(-1))); // P = x - 2
    CHECK(char_value(c, ch, x, FqPoly{0, 1}) == R(2, 3, Rat(0)));
    // cubic character values are cube roots of unity and multiplicative in f
    FqCtx c4{4, 1};
    CharCtx ch3{3, 1};
    FqPoly f = {1, 1}, g = {2, 0, 1};
    for (const auto& P : monic_irreducibles(GF::get(4), 2)) {
        CycloHalf a = char_value(c4, ch3, f, P), b = char_value(c4, ch3, g, P);
        CHECK(char_value(c4, ch3, poly_mul(GF::get(4), f, g), P) == a * b);
        if (!a.is_zero()) CHECK(a.pow(3) == R(3, 4, Rat(1)));
    }
}

TEST_CASE("normalized L-inverse series") {
    FqCtx c{3, 1};
    CharCtx ch{2, 1};
    for (const auto& f : enumerate_ellfree(c, 2, 1)) {
        auto a = l_inverse_series(c, ch, f, 4);
        for (int k = 1; k <= 4; ++k) CHECK(a[k].is_zero());
        CHECK(truncated_central_value(c, ch, f, 3) == R(2, 3, Rat(1)));
    }
    // t^1 coefficient is -u^{-1} times the Legendre sum
    const GF& F = c.field();
    for (const auto& f : enumerate_ellfree(c, 2, 3)) {
        long s = 0;
        for (GF::Elt x = 0; x < 3; ++x) {
            GF::Elt v = poly_eval(F, f, x);
            s += v == 0 ? 0 : (v == 1 ? 1 : -1);
        }
        auto a = l_inverse_series(c, ch, f, 2);
        CHECK(a[1] == CycloHalf::u_pow(2, 3, -1) * R(2, 3, Rat(-s)));
        CHECK(truncated_central_value(c, ch, f, 0) == R(2, 3, Rat(1)));
        CHECK(truncated_central_value(c, ch, f, 1) == R(2, 3, Rat(1)) - a[1]);
    }
    CHECK_THROWS(l_inverse_series(c, ch, FqPoly{1, 2, 1}, 2)); // (x + 1)^2
}

TEST_CASE("L-series of odd degree f has degree d - 1") {
    FqCtx c{3, 1};
    CharCtx ch{2, 1};
    for (int d : {3, 5})
        for (const auto& f : enumerate_ellfree(c, 2, d)) CHECK(l_series_degree(c, ch, f, d + 1) == d - 1);
}

TEST_CASE("empirical character MGF basics") {
    CharCtx ch{2, 1};
    auto m = empirical_mgf_chars(3, ch, 1, 4, 2);
    for (int i = 1; i <= 2; ++i) CHECK(m.single[i - 1] == SymSeries<CycloHalf>::constant(R(2, 3, Rat(1)), 4));
    auto m3 = empirical_mgf_chars(3, ch, 3, 3, 1);
    CHECK(m3.coeff(1, Partition{}) == R(2, 3, Rat(1)));
    // base change: ghost 2 over F_3 equals ghost 1 over F_9
    auto g2 = empirical_mgf_chars_ghost(FqCtx{3, 2}, ch, 3, 2);
    auto g9 = empirical_mgf_chars_ghost(FqCtx{9, 1}, ch, 3, 2);
    for (const auto& t : enumerate(2)) {
        CycloHalf a = g2.coeff(1, t), b = g9.coeff(1, t);
        REQUIRE(a.is_rational());
        REQUIRE(b.is_rational());
        CHECK(a.rational_part() == b.rational_part());
    }
}

TEST_CASE("limit character MGF") {
    CharCtx ch{2, 1};
    for (long q : {3L, 5L}) {
        auto L = limit_mgf_chars(q, ch, 4, 3, LimitMode::euler);
        for (int i = 1; i <= 3; ++i) {
            Rat Q(ipow(q, i));
            CHECK(L.coeff(i, Partition{1, 1}) == R(2, q, Q / (Q + Rat(1))));
            CHECK(L.coeff(i, Partition{1}).is_zero());
        }
        CHECK(L == limit_mgf_chars(q, ch, 4, 3, LimitMode::power));
    }
    CharCtx ch3{3, 1};
    auto E = limit_mgf_chars(4, ch3, 4, 2, LimitMode::euler);
    CHECK(E == limit_mgf_chars(4, ch3, 4, 2, LimitMode::power));
    // ghost 1, joint degree 2: only (k1, k2) = (1, 1) reaches m_1 mbar_1, summed over q points
    CHECK(E.coeff(1, Partition{1}, Partition{1}) == R(3, 4, c_ell_ghost(4, 3, 1) * Rat(1, 4) * Rat(4)));
    CharCtx ch5{5, 2};
    CHECK(limit_mgf_chars(11, ch5, 5, 1, LimitMode::euler) == limit_mgf_chars(11, ch5, 5, 1, LimitMode::power));
}
