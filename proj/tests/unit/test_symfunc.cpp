#include "doctest.h"
#include "lamprob/plethy.hpp"
#include "lamprob/symfunc.hpp"

using namespace lp;

namespace {
SymSeries<Rat> el(Basis b, Partition t, int D) { return basis_element(b, t, D); }
} // namespace

TEST_CASE("basis elements expand in m") {
    auto h2 = el(Basis::h, {2}, 4);
    CHECK(h2.coeff({2}) == Rat(1));
    CHECK(h2.coeff({1, 1}) == Rat(1));
    CHECK(h2.terms().size() == 2);
    auto e2 = el(Basis::e, {2}, 4);
    CHECK(e2.terms().size() == 1);
    CHECK(e2.coeff({1, 1}) == Rat(1));
    CHECK(el(Basis::p, {2}, 4).coeff({2}) == Rat(1));
    CHECK_THROWS(el(Basis::h, {3, 2}, 4));
}

TEST_CASE("products") {
    auto h1 = el(Basis::h, {1}, 4);
    auto sq = h1 * h1;
    CHECK(sq.coeff({2}) == Rat(1));
    CHECK(sq.coeff({1, 1}) == Rat(2));
    auto pp = el(Basis::p, {1}, 4) * el(Basis::p, {2}, 4);
    CHECK(pp.coeff({3}) == Rat(1));
    CHECK(pp.coeff({2, 1}) == Rat(1));
    CHECK(pp.terms().size() == 2);
    auto e2 = el(Basis::e, {2}, 4);
    CHECK(e2 * SymSeries<Rat>::one(4) == e2);
    CHECK_THROWS(e2 * SymSeries<Rat>::one(5));
}

TEST_CASE("change of basis") {
    auto hp = to_basis(el(Basis::h, {2}, 4), Basis::p);
    CHECK(hp.at({1, 1}) == Rat(1, 2));
    CHECK(hp.at({2}) == Rat(1, 2));
    auto ep = to_basis(el(Basis::e, {2}, 4), Basis::p);
    CHECK(ep.at({1, 1}) == Rat(1, 2));
    CHECK(ep.at({2}) == Rat(-1, 2));
    auto mh = to_basis(el(Basis::m, {1}, 4), Basis::h);
    CHECK(mh.size() == 1);
    CHECK(mh.at({1}) == Rat(1));
}

TEST_CASE("hall pairing") {
    CHECK(hall(el(Basis::m, {2, 1}, 5), el(Basis::h, {2, 1}, 5)) == Rat(1));
    CHECK(hall(el(Basis::p, {2}, 5), el(Basis::p, {2}, 5)) == Rat(2));
    CHECK(hall(el(Basis::s, {2}, 5), el(Basis::s, {1, 1}, 5)) == Rat(0));
    CHECK(hall(el(Basis::s, {2, 1}, 5), el(Basis::s, {2, 1}, 5)) == Rat(1));
}

TEST_CASE("omega") {
    CHECK(omega(el(Basis::h, {3}, 4)) == el(Basis::e, {3}, 4));
    CHECK(omega(el(Basis::p, {2}, 4)) == -el(Basis::p, {2}, 4));
    CHECK(omega(SymSeries<Rat>::one(4)) == SymSeries<Rat>::one(4));
}

TEST_CASE("plethystic exp and log") {
    const int D = 4;
    auto h1 = el(Basis::h, {1}, D);
    auto E = exp_sigma(h1);
    CHECK(E == sum_of(Basis::h, degrees_from(0, D), D));
    CHECK(exp_sigma(el(Basis::e, {2}, D)).coeff({1, 1, 1, 1}) == Rat(3));
    CHECK(exp_sigma_neg(h1) == sum_of(Basis::e, {0, 2, 4}, D) - sum_of(Basis::e, {1, 3}, D));
    auto L = log_sigma(SymSeries<Rat>::one(D) + h1);
    CHECK(L == log_sigma_newton(SymSeries<Rat>::one(D) + h1));
    CHECK(L.degree_part(1) == h1);
    CHECK(L.degree_part(2) == -el(Basis::h, {2}, D));
    auto f = power(SymSeries<Rat>::one(D) + h1, Rat(3));
    CHECK(f.coeff({1, 1}) == Rat(6));
    CHECK(plethysm(el(Basis::h, {2}, D), h1.scaled(Rat(2))).coeff({2}) == Rat(3));
    CHECK(plethysm(el(Basis::h, {2}, D), h1.scaled(Rat(2))).coeff({1, 1}) == Rat(4));
}
