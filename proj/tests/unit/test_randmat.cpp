#include "doctest.h"
#include "lamprob/randmat.hpp"

using namespace lp;

TEST_CASE("symmetric group mgf") {
    auto f = sym_group_mgf(3, 3);
    CHECK(f.coeff({1}) == Rat(1));
    CHECK(f.coeff({1, 1}) == Rat(2));
    CHECK(f.coeff({2}) == Rat(2));
    auto L = limit_mgf(Group::Sym, 3);
    CHECK(L.coeff({2}) == Rat(2));
    CHECK(Rat(vector_partition_count({2})) == Rat(2));
    CHECK(limit_mgf(Group::SymStd, 3).coeff({1}) == Rat(0));
}

TEST_CASE("limits") {
    CHECK(limit_mgf(Group::O, 4).coeff({2, 2}) == Rat(2));
    CHECK(limit_mgf(Group::Sp, 4).coeff({1, 1, 1, 1}) == Rat(3));
}

TEST_CASE("invariant dimensions") {
    CHECK(unitary_inv_dim(1, {2}, {2}) == 1);
    CHECK(unitary_inv_dim(2, {1, 1}, {1, 1}) == 2);
    CHECK(unitary_inv_dim(1, {1, 1}, {1, 1}) == 1);
    CHECK(orthogonal_inv_dim(1, {2}) == 1);
    CHECK(orthogonal_inv_dim(1, {1}) == 0);
    CHECK(so_sp_inv_dim(Group::Sp, 2, {1, 1}) == 1);
    CHECK(orthogonal_inv_dim(3, {2}) == 1);
    CHECK_THROWS(so_sp_inv_dim(Group::Sp, 3, {1}));
    CHECK_THROWS(orthogonal_inv_dim(7, {1}));
}

TEST_CASE("trace moments") {
    CHECK(ds_trace_moment(Group::O, {2}) == Rat(1));
    CHECK(ds_trace_moment(Group::O, {1}) == Rat(0));
    CHECK(ds_trace_moment(Group::U, {1}, {1}) == Rat(1));
    CHECK(ds_trace_moment(Group::U, {0, 1}, {0, 1}) == Rat(2));
    CHECK(ds_trace_moment(Group::Sp, {0, 1}) == Rat(-1));
    CHECK(ds_trace_moment_finite(Group::Sp, 2, {0, 1}) == Rat(-1));
    CHECK(ds_trace_moment_finite(Group::O, 4, {2, 1}) == ds_trace_moment(Group::O, {2, 1}));
}

TEST_CASE("cycle moments") {
    CHECK(cycle_falling_moments(5, {1}) == Rat(1));
    CHECK(cycle_falling_moments(5, {0, 1}) == Rat(1, 2));
    CHECK(cycle_falling_moments(5, {3}) == Rat(1));
}
