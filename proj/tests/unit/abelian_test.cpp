#include <doctest.h>

#include <vector>

#include "nilmult/abelian.hpp"
#include "nilmult/errors.hpp"
#include "nilmult/json_io.hpp"
#include "oracles.hpp"

using namespace nilmult;

namespace {

AbelianStructure group(std::vector<CyclicFactor> raw) { return canonicalize(raw); }

}  // namespace

TEST_CASE("canonicalize examples") {
    auto free2 = group({{0, 2}});
    CHECK(free2.free_rank() == 2);
    CHECK(free2.primary().empty());

    auto z12 = group({{12, 1}});
    CHECK(z12.free_rank() == 0);
    CHECK(z12.primary() == std::map<std::uint64_t, BigInt>{{3, 1}, {4, 1}});

    CHECK(group({{1, 5}}).is_trivial());
    CHECK(group({}).is_trivial());
    CHECK(group({{7, 0}}).is_trivial());
}

TEST_CASE("equality is decomposition-invariant") {
    CHECK(group({{12, 1}}) == group({{4, 1}, {3, 1}}));
    CHECK(group({{6, 2}}) == group({{2, 2}, {3, 2}}));
    CHECK_FALSE(group({{4, 1}}) == group({{2, 2}}));
    CHECK_FALSE(group({{0, 1}}) == group({}));
}

TEST_CASE("text rendering keeps the produced shape") {
    CHECK(group({{0, 2}, {5, 3}}).to_text() == "Z^2 + Z_5^3");
    CHECK(group({{0, 1}, {25, 1}, {5, 2}}).to_text() == "Z + Z_25 + Z_5^2");
    CHECK(group({{1, 4}}).to_text() == "0");
}

TEST_CASE("json lists factors by descending modulus and reads back") {
    const auto g = group({{5, 2}, {0, 1}, {35, 1}});
    const auto j = to_json(g);
    CHECK(j["free_rank"] == 1);
    REQUIRE(j["factors"].size() == 2);
    CHECK(j["factors"][0]["modulus"] == 35);
    CHECK(j["factors"][1]["modulus"] == 5);
    CHECK(j["factors"][1]["multiplicity"] == 2);
    CHECK(abelian_from_json(j) == g);

    const BigInt huge = BigInt(1) << 80;
    const auto big = group({{0, huge}});
    CHECK(to_json(big)["free_rank"] == huge.str());
    CHECK(abelian_from_json(to_json(big)) == big);
}

TEST_CASE("order statistics") {
    CHECK(order_statistics(group({})) == OrderStatistics{{1, 1}});
    CHECK(order_statistics(group({{5, 2}})) == OrderStatistics{{1, 1}, {5, 24}});
    CHECK(order_statistics(group({{4, 1}, {2, 1}})) == OrderStatistics{{1, 1}, {2, 3}, {4, 4}});
    CHECK_THROWS_AS(order_statistics(group({{0, 1}})), DomainError);
}

TEST_CASE("order statistics agree with brute-force enumeration of the direct sum") {
    const std::vector<std::vector<std::uint64_t>> cases{
        {12}, {4, 2}, {6, 10}, {9, 3, 3}, {8, 4, 2}, {25, 5}, {30}, {7, 49}, {2, 2, 2, 2}};
    for (const auto& moduli : cases) {
        std::vector<CyclicFactor> raw;
        for (auto m : moduli) raw.push_back({m, 1});
        const auto stats = order_statistics(canonicalize(raw));
        OrderStatistics expected;
        for (auto [order, count] : oracle::direct_sum_order_counts(moduli)) expected[order] = count;
        CHECK(stats == expected);
    }
}

TEST_CASE("order") {
    CHECK(group({{5, 2}, {3, 1}}).order() == 75);
    CHECK_THROWS_AS(group({{0, 1}}).order(), DomainError);
}
