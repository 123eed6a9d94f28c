#pragma once

#include <cstdint>
#include <span>

#include <boost/multiprecision/cpp_int.hpp>

namespace nilmult {

using BigInt = boost::multiprecision::cpp_int;

/// Orders of cyclic factors use 0 for the infinite cyclic group throughout
/// the library; gcd and modulus computations follow the same convention.
using Order = std::uint64_t;

/// Möbius function by trial division. Throws DomainError for e = 0.
int mobius(std::uint64_t e);

/// Number of basic commutators of weight d on q generators (Witt formula).
BigInt witt_chi(unsigned d, std::uint64_t q);

/// Sum of witt_chi(base + i, q) for i = 1 .. span.
BigInt chi_partial_sum(unsigned base, unsigned span, std::uint64_t q);

/// gcd with gcd(0, x) = x; the gcd of all zeros is 0. Throws on an empty list.
Order gcd_zero_aware(std::span<const Order> values);

/// Prime factorization by trial division, as (prime, exponent) pairs in increasing order.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t value);

/// Primes p <= bound, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

}  // namespace nilmult
