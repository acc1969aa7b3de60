#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ame/invariant.hpp"
#include "ame/lmoment.hpp"
#include "ame/rearrange.hpp"
#include "ame/reduction.hpp"
#include "ame/search.hpp"
#include "ame/unitarity.hpp"

using namespace ame;

namespace {

BipartiteOperator p16_enphased(double theta) {
    auto p = odls4();
    auto g = gate_from_ols(p.K, p.L);
    return enphase(g, {{{0, 0}, std::polar(1.0, theta)}});
}

double invariant_formula(double theta) { return 8.0 * (29.0 + 3.0 * std::cos(theta)); }

}  // namespace

TEST_CASE("canonical n=4 tuple and its latin rectangle property") {
    auto t = canonical_n4_tuple();
    REQUIRE(t.n == 4);
    CHECK(t.sigma == std::vector<int>{0, 1, 2, 3});
    CHECK(t.tau == std::vector<int>{1, 0, 3, 2});
    CHECK(t.rho == std::vector<int>{2, 3, 0, 1});
    CHECK(t.lambda == std::vector<int>{3, 2, 1, 0});
    CHECK(latin_rectangle_check(t));
}

TEST_CASE("inverse_tuple composes to the identity") {
    auto t = canonical_n4_tuple();
    auto ti = inverse_tuple(t);
    for (int m = 0; m < 4; ++m) {
        CHECK(ti.sigma[t.sigma[m]] == m);
        CHECK(ti.tau[t.tau[m]] == m);
        CHECK(ti.rho[t.rho[m]] == m);
        CHECK(ti.lambda[t.lambda[m]] == m);
    }
    auto tii = inverse_tuple(ti);
    CHECK(tii.sigma == t.sigma);
    CHECK(tii.tau == t.tau);
    CHECK(tii.rho == t.rho);
    CHECK(tii.lambda == t.lambda);
}

TEST_CASE("validate_tuple rejects non-permutations") {
    PermTuple bad{4, {0, 1, 2, 3}, {0, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    CHECK_THROWS_AS(validate_tuple(bad), std::invalid_argument);
}

TEST_CASE("order-4 gate invariant equals 8(29 + 3 cos theta)") {
    for (double theta : {0.0, std::acos(-1.0) / 2.0, std::acos(-1.0), 1.0}) {
        auto u = p16_enphased(theta);
        cxd inv = contract_invariant(u, canonical_n4_tuple());
        CHECK(std::abs(inv.imag()) < 1e-8);
        CHECK(inv.real() == Catch::Approx(invariant_formula(theta)).epsilon(1e-10));
    }
}

TEST_CASE("canonical tuple contraction equals the second moment") {
    for (double theta : {0.0, 1.0}) {
        auto u = p16_enphased(theta);
        cxd inv = contract_invariant(u, canonical_n4_tuple());
        cxd m2 = moment(u, 2);
        CHECK(std::abs(inv - m2) < 1e-8);
    }
}

TEST_CASE("first moment equals d^2 for 2-unitaries and Tr (RR+)^2 in general") {
    auto p9op = p9().to_operator();
    CHECK(std::abs(moment(p9op, 1) - cxd(9.0)) < 1e-9);
    CHECK(std::abs(moment(p16_enphased(0.0), 1) - cxd(16.0)) < 1e-9);
    for (std::uint64_t seed : {3u, 4u}) {
        BipartiteOperator u(2);
        u.m = random_unitary(4, seed);
        Mat r = realign_matrix(u.m, 2);
        Mat g = (r * r.adjoint()) * (r * r.adjoint());
        CHECK(std::abs(moment(u, 1) - g.trace()) < 1e-8);
    }
}

TEST_CASE("sparse contraction agrees with the dense path") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        BipartiteOperator u(2);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                if (pick(rng) < 0.6) u.m(r, c) = cxd(gauss(rng), gauss(rng));
        cxd s = contract_invariant(u, canonical_n4_tuple());
        cxd dn = contract_invariant_dense(u, canonical_n4_tuple());
        CHECK(std::abs(s - dn) < 1e-10 * (1.0 + std::abs(dn)));
    }
}

TEST_CASE("dense path refuses to exceed its term budget") {
    BipartiteOperator u(3);
    u.m = Mat::Identity(9, 9);
    CHECK_THROWS_AS(contract_invariant_dense(u, canonical_n4_tuple(), 1e3), std::length_error);
}

TEST_CASE("invariant is unchanged by local unitaries") {
    auto u = p16_enphased(1.0);
    BipartiteOperator v(4);
    Mat a = random_unitary(4, 21), b = random_unitary(4, 22);
    Mat c = random_unitary(4, 23), e = random_unitary(4, 24);
    v.m = kron(a, b) * u.m * kron(c, e);
    cxd inv = contract_invariant(v, canonical_n4_tuple());
    CHECK(std::abs(inv.imag()) < 1e-7);
    CHECK(inv.real() == Catch::Approx(invariant_formula(1.0)).epsilon(1e-7));
}

TEST_CASE("diagonal multisets of the order-4 pair") {
    auto ms = multisets_from_odls(odls4());
    std::map<std::array<int, 4>, int> x_expect{
        {{1, 1, 1, 2}, 1}, {{2, 2, 2, 1}, 1}, {{3, 3, 3, 4}, 1}, {{4, 4, 4, 3}, 1}};
    std::map<std::array<int, 4>, int> y_expect{
        {{1, 4, 2, 4}, 1}, {{2, 3, 1, 3}, 1}, {{3, 2, 4, 2}, 1}, {{4, 1, 3, 1}, 1}};
    CHECK(ms.X.counts == x_expect);
    CHECK(ms.Y.counts == y_expect);
    // every component counting function is identically 1 on both multisets
    for (int comp = 0; comp < 4; ++comp) {
        for (int v : ms.X.marginal(comp)) CHECK(v == 1);
        for (int v : ms.Y.marginal(comp)) CHECK(v == 1);
    }
    // tuple read off the diagonals: tau is the reversal
    CHECK(ms.perms.tau == std::vector<int>{3, 2, 1, 0});
    CHECK(ms.perms.rho == std::vector<int>{1, 0, 3, 2});
    CHECK(ms.perms.lambda == std::vector<int>{2, 3, 0, 1});
}

TEST_CASE("diagonal-multiset invariant separates enphasings") {
    auto pair = odls4();
    cxd i0 = odls_invariant(p16_enphased(0.0), pair);
    cxd ipi = odls_invariant(p16_enphased(std::acos(-1.0)), pair);
    CHECK(i0.real() == Catch::Approx(256.0).epsilon(1e-10));
    CHECK(ipi.real() == Catch::Approx(208.0).epsilon(1e-10));
    CHECK(std::abs(i0 - ipi) > 1e-6);
}
