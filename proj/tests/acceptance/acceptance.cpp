// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "nilmult/engine.hpp"
#include "nilmult/hall_basis.hpp"
#include "nilmult/multiplier.hpp"
#include "nilmult/numtheory.hpp"
#include "oracles.hpp"

using namespace nilmult;

namespace {

struct Criterion {
    int id;
    std::string name;
    double time_limit_s;
    std::function<std::string()> body;  // returns "" on success, else a failure description
};

AbelianStructure from_exponents(const std::vector<BigInt>& h, const std::vector<Order>& chain) {
    std::vector<CyclicFactor> raw{{0, h[0]}};
    for (std::size_t j = 0; j < chain.size(); ++j) raw.push_back({chain[j], h[j + 1] - h[j]});
    return canonicalize(raw);
}

std::vector<Order> random_chain(std::mt19937_64& rng, std::size_t t) {
    // Powers of 11 and 13: every prime is above n + c <= 8.
    std::vector<Order> chain(t);
    Order r = rng() % 2 ? 11 : 13;
    for (std::size_t j = t; j-- > 0;) {
        chain[j] = r;
        switch (rng() % 3) {
            case 0: r *= 11; break;
            case 1: r *= 13; break;
            default: break;
        }
    }
    return chain;
}

std::string witt_suite() {
    const std::uint64_t expected[] = {2, 1, 2, 3, 6, 9, 18, 30, 56, 99};
    for (unsigned d = 1; d <= 10; ++d) {
        if (witt_chi(d, 2) != expected[d - 1]) return "Möbius sum differs at d=" + std::to_string(d);
        if (oracle::lyndon_count(d, 2) != expected[d - 1]) return "Lyndon count differs at d=" + std::to_string(d);
    }
    return "";
}

std::string hall_counts() {
    for (std::size_t q = 0; q <= 3; ++q) {
        const auto table = enumerate_basis(q, 8);
        for (unsigned d = 1; d <= 8; ++d)
            if (BigInt(table.count_of_weight(d)) != witt_chi(d, q))
                return "q=" + std::to_string(q) + " d=" + std::to_string(d);
        for (std::size_t i = 0; i < table.size(); ++i)
            if (!table.satisfies_hall_condition(i)) return "Hall condition fails at entry " + std::to_string(i);
    }
    if (enumerate_basis(3, 8).count_of_weight(8) != 810) return "chi_8(3) != 810";
    return "";
}

std::string path_agreement() {
    std::mt19937_64 rng(20240601);
    for (int trial = 0; trial < 200; ++trial) {
        const unsigned n = 1 + rng() % 4, c = 1 + rng() % 4;
        std::size_t m = rng() % 3;
        const std::size_t t = rng() % 4;
        if (m + t == 0) m = 1;
        const auto chain = random_chain(rng, t);
        std::vector<Order> orders(m, 0);
        orders.insert(orders.end(), chain.begin(), chain.end());
        if (!(multiplier_general({n, orders}, c) == multiplier_closed_form(m, chain, n, c)))
            return "general != closed at trial " + std::to_string(trial);
    }
    const Order primes[] = {11, 13, 17};
    for (int trial = 0; trial < 100; ++trial) {
        const unsigned n = 1 + rng() % 4, c = 1 + rng() % 4;
        Order r = 1, s = 1;
        for (int k = 0; k < 3; ++k) {
            if (rng() % 2) r *= primes[rng() % 3];
            if (rng() % 2) s *= primes[rng() % 3];
        }
        if (!(multiplier_general({n, {r, s}}, c) == multiplier_two_factor(r, s, n, c)))
            return "general != two-factor for r=" + std::to_string(r) + " s=" + std::to_string(s);
    }
    return "";
}

std::string dj_identity() {
    std::size_t checked = 0;
    for (unsigned n = 1; n <= 5; ++n)
        for (unsigned c = 1; n + c <= 6; ++c)
            for (std::size_t m = 0; m <= 3; ++m)
                for (std::size_t t = 1; m + t <= 3; ++t) {
                    const auto [lo, hi] = weight_window(n, c);
                    const auto h = closed_form_exponents(m, t, n, c);
                    for (std::size_t j = 1; j <= t; ++j) {
                        ++checked;
                        if (BigInt(count_involving_last(m + j, lo, hi)) != h[j] - h[j - 1])
                            return "n=" + std::to_string(n) + " c=" + std::to_string(c) + " m=" + std::to_string(m) +
                                   " j=" + std::to_string(j);
                    }
                }
    return checked > 0 ? "" : "no cases";
}

std::string oracle_case(ProductSpec spec, unsigned c, Order modulus, unsigned multiplicity) {
    const auto report = verify_multiplier(spec, c);
    const CyclicFactor raw[] = {{modulus, multiplicity}};
    if (!(report.predicted == canonicalize(raw))) return "predicted " + report.predicted.to_text();
    if (!report.oracle.abelian) return "gamma subgroup not abelian";
    if (!report.match) return "fingerprint mismatch for predicted " + report.predicted.to_text();
    return "";
}

GroupElement random_element(const GroupContext& ctx, std::mt19937_64& rng) {
    std::vector<std::int64_t> x(ctx.moduli().size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<std::int64_t>(rng() % ctx.moduli()[i]);
    return GroupElement(std::move(x));
}

GeneratorWord random_word(std::mt19937_64& rng) {
    GeneratorWord w;
    const std::size_t len = 1 + rng() % 8;
    for (std::size_t i = 0; i < len; ++i)
        w.letters.push_back({static_cast<unsigned>(1 + rng() % 2), static_cast<std::int64_t>(rng() % 9) - 4});
    return w;
}

std::string engine_axioms() {
    const auto ctx = GroupContext::build({2, {5, 5}});
    const auto all = gamma_subgroup(ctx, 1);
    if (all.size() != 125) return "enumerated " + std::to_string(all.size()) + " elements";
    std::unordered_set<GroupElement, GroupElementHash> distinct(all.begin(), all.end());
    if (distinct.size() != 125) return "duplicate normal forms";

    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto g = random_element(ctx, rng), h = random_element(ctx, rng), k = random_element(ctx, rng);
        if (ctx.multiply(ctx.multiply(g, h), k) != ctx.multiply(g, ctx.multiply(h, k))) return "associativity";
        if (ctx.multiply(ctx.identity(), g) != g || ctx.multiply(g, ctx.identity()) != g) return "identity law";
        if (!ctx.multiply(g, ctx.inverse(g)).is_identity() || !ctx.multiply(ctx.inverse(g), g).is_identity())
            return "inverse law";
    }
    for (int trial = 0; trial < 1000; ++trial) {
        const auto w1 = random_word(rng), w2 = random_word(rng);
        if (ctx.collect(w1 * w2) != ctx.multiply(ctx.collect(w1), ctx.collect(w2)))
            return "collect(w1 w2) != collect(w1) collect(w2) for " + render(w1) + " | " + render(w2);
    }
    return "";
}

std::string branch_consistency() {
    std::mt19937_64 rng(7);
    for (unsigned n = 1; n <= 3; ++n) {
        const unsigned c = n;
        for (int trial = 0; trial < 20; ++trial) {
            std::size_t m = rng() % 3;
            const std::size_t t = rng() % 4;
            if (m + t == 0) m = 1;
            const auto chain = random_chain(rng, t);
            std::vector<BigInt> g, f;
            for (std::size_t k = 0; k <= t; ++k) {
                BigInt gk = 0, fk = 0;
                for (unsigned i = 1; i <= c; ++i) gk += witt_chi(n + i, m + k);
                for (unsigned i = 1; i <= n; ++i) fk += witt_chi(c + i, m + k);
                g.push_back(gk);
                f.push_back(fk);
            }
            const auto g_branch = from_exponents(g, chain);
            const auto f_branch = from_exponents(f, chain);
            if (!(g_branch == f_branch)) return "g/f branches differ at n=c=" + std::to_string(n);
            if (!(multiplier_closed_form(m, chain, n, c) == g_branch)) return "closed form differs from branches";
            std::vector<Order> orders(m, 0);
            orders.insert(orders.end(), chain.begin(), chain.end());
            if (!(multiplier_general({n, orders}, c) == g_branch)) return "general path differs from branches";
        }
    }
    return "";
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "Witt counts chi_d(2), d=1..10, Möbius sum and Lyndon enumeration", 1.0, witt_suite},
        {2, "Hall enumeration counts equal witt_chi for q<=3, d<=8", 5.0, hall_counts},
        {3, "general == closed form (200 specs), general == two-factor (100 specs)", 30.0, path_agreement},
        {4, "count_involving_last(m+j) == h_j - h_{j-1} for n+c<=6, m+t<=3", 60.0, dj_identity},
        {5, "oracle: n=2 c=1 (5,5) -> Z_5^2", 60.0, [] { return oracle_case({2, {5, 5}}, 1, 5, 2); }},
        {5, "oracle: n=2 c=2 (5,5) -> Z_5^5", 60.0, [] { return oracle_case({2, {5, 5}}, 2, 5, 5); }},
        {5, "oracle: n=2 c=1 (7,7) -> Z_7^2", 60.0, [] { return oracle_case({2, {7, 7}}, 1, 7, 2); }},
        {5, "oracle: n=3 c=1 (5,5) -> Z_5^3", 60.0, [] { return oracle_case({3, {5, 5}}, 1, 5, 3); }},
        {6, "engine: 125 elements, group axioms, collect homomorphism", 30.0, engine_axioms},
        {7, "branch consistency at n=c in {1,2,3}", 60.0, branch_consistency},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string failure;
        try {
            failure = criterion.body();
        } catch (const std::exception& e) {
            failure = std::string("exception: ") + e.what();
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (failure.empty() && elapsed > criterion.time_limit_s)
            failure = "exceeded time limit of " + std::to_string(criterion.time_limit_s) + " s";
        std::printf("[%s] criterion %d: %s (%.3f s)%s%s\n", failure.empty() ? "PASS" : "FAIL", criterion.id,
                    criterion.name.c_str(), elapsed, failure.empty() ? "" : " -- ", failure.c_str());
        if (!failure.empty()) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
