#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nilmult/abelian.hpp"
#include "nilmult/hall_basis.hpp"
#include "nilmult/numtheory.hpp"

namespace nilmult {

/// The n-th nilpotent product A_1 *^n ... *^n A_q of cyclic groups. orders[i]
/// is the order of A_{i+1}; 0 encodes the infinite cyclic group.
struct ProductSpec {
    unsigned class_n = 1;
    std::vector<Order> orders;
};

struct Violation {
    std::uint64_t prime = 0;  // 0 for structural violations (empty orders, class 0, ...)
    Order order = 0;
    std::size_t position = 0;  // 1-based factor index, 0 if not factor-specific
    std::string message;
};

struct Verdict {
    std::vector<Violation> violations;
    bool ok() const noexcept { return violations.empty(); }
    std::string summary() const;
};

/// ok iff every prime dividing a nonzero order exceeds class_n + c.
Verdict validate_spec(const ProductSpec& spec, unsigned c);

/// Same check against an explicit prime bound (primes <= bound are forbidden).
Verdict validate_orders(std::span<const Order> orders, std::uint64_t bound);

/// gcd of the orders of generators occurring in u; 0 means the factor is free.
Order modulus_of(const BasicCommutator& u, std::span<const Order> orders);

/// The commutator weights [lo, hi] whose basic commutators span the multiplier:
/// (n + 1, n + c) when n >= c, else (c + 1, n + c).
std::pair<unsigned, unsigned> weight_window(unsigned n, unsigned c);

struct MultiplierOptions {
    std::size_t basis_cap = kDefaultBasisCap;
    bool force = false;  // skip hypothesis validation
};

/// Direct sum over basic commutators u of weight in the window of Z_{modulus_of(u)}.
AbelianStructure multiplier_general(const ProductSpec& spec, unsigned c, const MultiplierOptions& options = {});

/// Exponents h_0 .. h_t of the closed form (g_k when n >= c, f_k otherwise).
std::vector<BigInt> closed_form_exponents(std::size_t m, std::size_t t, unsigned n, unsigned c);

/// Z^(h_0) + Z_{r_1}^(h_1 - h_0) + ... + Z_{r_t}^(h_t - h_{t-1}) for a divisibility chain rs.
AbelianStructure multiplier_closed_form(std::size_t m, std::span<const Order> rs, unsigned n, unsigned c,
                                        bool force = false);

/// Z_d^(sum of the window's Witt counts on 2 generators), d = gcd(r, s).
AbelianStructure multiplier_two_factor(Order r, Order s, unsigned n, unsigned c, bool force = false);

/// Infinite factors first, then the finite orders in descending order, if the
/// finite orders then form a divisibility chain. Returns (m, chain).
std::optional<std::pair<std::size_t, std::vector<Order>>> as_divisibility_chain(std::span<const Order> orders);

}  // namespace nilmult
