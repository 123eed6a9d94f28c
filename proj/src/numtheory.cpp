#include "nilmult/numtheory.hpp"

#include <numeric>
#include <vector>

#include "nilmult/errors.hpp"

namespace nilmult {

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t value) {
    std::vector<std::pair<std::uint64_t, unsigned>> factors;
    for (std::uint64_t p = 2; p <= value / p; ++p) {
        unsigned exponent = 0;
        while (value % p == 0) {
            value /= p;
            ++exponent;
        }
        if (exponent > 0) factors.emplace_back(p, exponent);
    }
    if (value > 1) factors.emplace_back(value, 1U);
    return factors;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = 2; p <= bound; ++p) {
        bool prime = true;
        for (auto known : primes) {
            if (known * known > p) break;
            if (p % known == 0) {
                prime = false;
                break;
            }
        }
        if (prime) primes.push_back(p);
    }
    return primes;
}

int mobius(std::uint64_t e) {
    if (e == 0) throw DomainError("mobius: argument must be >= 1");
    int sign = 1;
    for (auto [p, exponent] : factorize(e)) {
        if (exponent > 1) return 0;
        sign = -sign;
    }
    return sign;
}

BigInt witt_chi(unsigned d, std::uint64_t q) {
    if (d == 0) throw DomainError("witt_chi: weight must be >= 1");
    BigInt sum = 0;
    const BigInt base = q;
    for (unsigned e = 1; e <= d; ++e) {
        if (d % e != 0) continue;
        const int mu = mobius(e);
        if (mu == 0) continue;
        BigInt term = boost::multiprecision::pow(base, d / e);
        if (mu > 0)
            sum += term;
        else
            sum -= term;
    }
    if (sum % d != 0) throw std::logic_error("witt_chi: Möbius sum not divisible by the weight");
    return sum / d;
}

BigInt chi_partial_sum(unsigned base, unsigned span, std::uint64_t q) {
    if (base < 1 || span < 1) throw DomainError("chi_partial_sum: base and span must be >= 1");
    BigInt total = 0;
    for (unsigned i = 1; i <= span; ++i) total += witt_chi(base + i, q);
    return total;
}

Order gcd_zero_aware(std::span<const Order> values) {
    if (values.empty()) throw DomainError("gcd_zero_aware: empty list");
    Order g = 0;
    for (auto v : values) g = std::gcd(g, v);
    return g;
}

}  // namespace nilmult
