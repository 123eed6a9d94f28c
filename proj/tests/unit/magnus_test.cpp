#include <doctest.h>

#include <random>

#include "nilmult/magnus.hpp"

using namespace nilmult;

TEST_CASE("truncated algebra basics") {
    TruncatedFreeAlgebra alg(2, 3);
    CHECK(alg.dimension() == 1 + 2 + 4 + 8);
    const auto a = alg.generator(1);
    const auto inv = alg.inverse(a);
    CHECK(alg.multiply(a, inv) == alg.one());
    CHECK(alg.multiply(inv, a) == alg.one());
    // (1 + X)^-1 = 1 - X + X^2 - X^3
    CHECK(inv[0] == 1);
    CHECK(alg.component(inv, 1)[0] == -1);
    CHECK(alg.component(inv, 2)[0] == 1);
    CHECK(alg.component(inv, 3)[0] == -1);
    CHECK(alg.power(a, -3) == alg.multiply(inv, alg.multiply(inv, inv)));
    CHECK(alg.power(a, 0) == alg.one());
}

TEST_CASE("group commutator leads with the Lie bracket") {
    TruncatedFreeAlgebra alg(2, 3);
    const auto c = alg.group_commutator(alg.generator(2), alg.generator(1));
    CHECK(alg.lowest_degree(c) == 2);
    const auto deg2 = alg.component(c, 2);
    // words indexed 2*first + second with letters 0 = X1, 1 = X2: X2X1 - X1X2
    CHECK(deg2[0] == 0);
    CHECK(deg2[1] == -1);
    CHECK(deg2[2] == 1);
    CHECK(deg2[3] == 0);
}

TEST_CASE("coordinates of basis images are unit vectors") {
    const auto basis = enumerate_basis(3, 4);
    MagnusCoordinates mc(basis);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        std::vector<std::int64_t> unit(basis.size(), 0);
        unit[i] = 1;
        CHECK(mc.coordinates(mc.image(i)) == unit);
    }
}

TEST_CASE("evaluate and coordinates are inverse on random exponent vectors") {
    const auto basis = enumerate_basis(2, 5);
    MagnusCoordinates mc(basis);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> e(-4, 4);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::int64_t> exps(basis.size());
        for (auto& x : exps) x = e(rng);
        CHECK(mc.coordinates(mc.evaluate(exps)) == exps);
    }
}

TEST_CASE("non-group elements are rejected") {
    const auto basis = enumerate_basis(2, 3);
    MagnusCoordinates mc(basis);
    auto x = mc.algebra().one();
    x[1 + 2 + 1] = 1;  // degree-2 word X1 X2 (after the constant and two degree-1 slots)
    CHECK_THROWS_AS(mc.coordinates(x), std::logic_error);
}
