#include "nilmult/multiplier.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "nilmult/errors.hpp"

namespace nilmult {

namespace {

std::vector<std::string> messages(const Verdict& verdict) {
    std::vector<std::string> out;
    for (const auto& v : verdict.violations) out.push_back(v.message);
    return out;
}

void require(const Verdict& verdict) {
    if (!verdict.ok()) throw PreconditionError("hypotheses violated: " + verdict.summary(), messages(verdict));
}

}  // namespace

std::string Verdict::summary() const {
    if (ok()) return "ok";
    std::ostringstream out;
    for (std::size_t i = 0; i < violations.size(); ++i) out << (i ? "; " : "") << violations[i].message;
    return out.str();
}

Verdict validate_orders(std::span<const Order> orders, std::uint64_t bound) {
    Verdict verdict;
    const auto primes = primes_up_to(bound);
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] == 0) continue;
        for (auto p : primes) {
            if (orders[i] % p != 0) continue;
            verdict.violations.push_back(
                {p, orders[i], i + 1,
                 "prime " + std::to_string(p) + " <= " + std::to_string(bound) + " divides order " +
                     std::to_string(orders[i]) + " of factor " + std::to_string(i + 1)});
        }
    }
    return verdict;
}

Verdict validate_spec(const ProductSpec& spec, unsigned c) {
    Verdict verdict;
    if (spec.class_n < 1) verdict.violations.push_back({0, 0, 0, "nilpotency class must be >= 1"});
    if (c < 1) verdict.violations.push_back({0, 0, 0, "multiplier level c must be >= 1"});
    if (spec.orders.empty()) verdict.violations.push_back({0, 0, 0, "at least one cyclic factor is required"});
    auto primes = validate_orders(spec.orders, std::uint64_t{spec.class_n} + c);
    verdict.violations.insert(verdict.violations.end(), primes.violations.begin(), primes.violations.end());
    return verdict;
}

Order modulus_of(const BasicCommutator& u, std::span<const Order> orders) {
    std::vector<Order> involved;
    for (auto g : u.occurrence()) {
        if (g > orders.size())
            throw DomainError("generator x" + std::to_string(g) + " out of range for " + std::to_string(orders.size()) +
                              " factors");
        involved.push_back(orders[g - 1]);
    }
    return gcd_zero_aware(involved);
}

std::pair<unsigned, unsigned> weight_window(unsigned n, unsigned c) {
    if (n >= c) return {n + 1, n + c};
    return {c + 1, n + c};
}

AbelianStructure multiplier_general(const ProductSpec& spec, unsigned c, const MultiplierOptions& options) {
    if (!options.force) require(validate_spec(spec, c));
    if (spec.class_n < 1 || c < 1 || spec.orders.empty())
        throw PreconditionError("multiplier_general: malformed specification");

    const auto [lo, hi] = weight_window(spec.class_n, c);
    const auto table = enumerate_basis(spec.orders.size(), hi, options.basis_cap);

    std::map<Order, std::uint64_t> counts;
    std::vector<Order> involved;
    for (std::size_t i = table.weight_begin(lo); i < table.size(); ++i) {
        involved.clear();
        for (auto g : table[i].occurrence) involved.push_back(spec.orders[g - 1]);
        ++counts[gcd_zero_aware(involved)];
    }

    std::vector<CyclicFactor> raw;
    for (auto [modulus, count] : counts) raw.push_back({modulus, count});
    return canonicalize(raw);
}

std::vector<BigInt> closed_form_exponents(std::size_t m, std::size_t t, unsigned n, unsigned c) {
    if (n < 1 || c < 1) throw DomainError("closed form requires n >= 1 and c >= 1");
    std::vector<BigInt> h;
    h.reserve(t + 1);
    for (std::size_t k = 0; k <= t; ++k) {
        // g_k sums chi_{n+i} for i <= c; f_k sums chi_{c+i} for i <= n.
        h.push_back(n >= c ? chi_partial_sum(n, c, m + k) : chi_partial_sum(c, n, m + k));
        if (k > 0 && h[k] < h[k - 1]) throw std::logic_error("closed form exponents are not monotone");
    }
    return h;
}

AbelianStructure multiplier_closed_form(std::size_t m, std::span<const Order> rs, unsigned n, unsigned c,
                                        bool force) {
    if (m + rs.size() < 1) throw PreconditionError("closed form needs at least one cyclic factor");
    if (!force) {
        Verdict verdict;
        for (std::size_t j = 0; j < rs.size(); ++j) {
            if (rs[j] == 0)
                verdict.violations.push_back({0, 0, j + 1, "chain entries must be finite orders"});
            else if (j + 1 < rs.size() && (rs[j + 1] == 0 || rs[j] % rs[j + 1] != 0))
                verdict.violations.push_back({0, rs[j + 1], j + 2,
                                              "r_" + std::to_string(j + 2) + " = " + std::to_string(rs[j + 1]) +
                                                  " does not divide r_" + std::to_string(j + 1) + " = " +
                                                  std::to_string(rs[j])});
        }
        auto primes = validate_orders(rs, std::uint64_t{n} + c);
        verdict.violations.insert(verdict.violations.end(), primes.violations.begin(), primes.violations.end());
        require(verdict);
    }

    const auto h = closed_form_exponents(m, rs.size(), n, c);
    std::vector<CyclicFactor> raw{{0, h[0]}};
    for (std::size_t j = 0; j < rs.size(); ++j) raw.push_back({rs[j], h[j + 1] - h[j]});
    return canonicalize(raw);
}

AbelianStructure multiplier_two_factor(Order r, Order s, unsigned n, unsigned c, bool force) {
    if (r == 0 || s == 0) throw PreconditionError("two-factor form needs finite orders r, s >= 1");
    if (!force) {
        const Order pair[] = {r, s};
        require(validate_orders(pair, std::uint64_t{n} + c));
    }
    const Order pair[] = {r, s};
    const Order d = gcd_zero_aware(pair);
    const BigInt count = n >= c ? chi_partial_sum(n, c, 2) : chi_partial_sum(c, n, 2);
    const CyclicFactor raw[] = {{d, count}};
    return canonicalize(raw);
}

std::optional<std::pair<std::size_t, std::vector<Order>>> as_divisibility_chain(std::span<const Order> orders) {
    std::size_t m = 0;
    std::vector<Order> chain;
    for (auto o : orders) {
        if (o == 0)
            ++m;
        else
            chain.push_back(o);
    }
    std::sort(chain.begin(), chain.end(), std::greater<>());
    for (std::size_t j = 0; j + 1 < chain.size(); ++j)
        if (chain[j] % chain[j + 1] != 0) return std::nullopt;
    return std::pair{m, chain};
}

}  // namespace nilmult
