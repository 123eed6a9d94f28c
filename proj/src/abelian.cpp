#include "nilmult/abelian.hpp"

#include <algorithm>
#include <sstream>

#include "nilmult/errors.hpp"

namespace nilmult {

AbelianStructure canonicalize(std::span<const CyclicFactor> raw) {
    AbelianStructure out;
    std::map<Order, BigInt, std::greater<>> merged;
    for (const auto& f : raw) {
        if (f.multiplicity < 0) throw DomainError("canonicalize: negative multiplicity");
        if (f.multiplicity == 0 || f.modulus == 1) continue;
        if (f.modulus == 0) {
            out.free_rank_ += f.multiplicity;
            continue;
        }
        merged[f.modulus] += f.multiplicity;
        for (auto [p, e] : factorize(f.modulus)) {
            std::uint64_t power = 1;
            for (unsigned k = 0; k < e; ++k) power *= p;
            out.primary_[power] += f.multiplicity;
        }
    }
    for (auto& [modulus, count] : merged) out.display_.push_back({modulus, count});
    return out;
}

BigInt AbelianStructure::order() const {
    if (!is_finite()) throw DomainError("order of an infinite abelian group");
    BigInt total = 1;
    for (const auto& [power, count] : primary_) {
        if (count > 1'000'000) throw SizeError("group order too large to compute");
        total *= boost::multiprecision::pow(BigInt(power), static_cast<unsigned>(count));
    }
    return total;
}

std::string AbelianStructure::to_text() const {
    std::vector<std::string> parts;
    if (free_rank_ > 0) parts.push_back(free_rank_ == 1 ? "Z" : "Z^" + free_rank_.str());
    for (const auto& f : display_) {
        std::string part = "Z_" + std::to_string(f.modulus);
        if (f.multiplicity != 1) part += "^" + f.multiplicity.str();
        parts.push_back(std::move(part));
    }
    if (parts.empty()) return "0";
    std::ostringstream out;
    for (std::size_t i = 0; i < parts.size(); ++i) out << (i ? " + " : "") << parts[i];
    return out.str();
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw SizeError("element order exceeds 64 bits");
    return r;
}

}  // namespace

OrderStatistics order_statistics(const AbelianStructure& group) {
    if (!group.is_finite()) throw DomainError("order statistics of an infinite group");

    // Per prime: exponent a -> multiplicity of Z_{p^a}.
    std::map<std::uint64_t, std::map<unsigned, BigInt>> by_prime;
    for (const auto& [power, count] : group.primary()) {
        auto f = factorize(power);
        by_prime[f.front().first][f.front().second] += count;
    }

    OrderStatistics stats{{1, 1}};
    for (const auto& [p, exps] : by_prime) {
        const unsigned top = exps.rbegin()->first;
        // dividing[j] = #elements of the p-part with order dividing p^j
        std::vector<BigInt> dividing(top + 1);
        for (unsigned j = 0; j <= top; ++j) {
            BigInt log = 0;
            for (const auto& [a, m] : exps) log += BigInt(std::min(a, j)) * m;
            if (log > 100'000) throw SizeError("group too large for order statistics");
            dividing[j] = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(log));
        }
        OrderStatistics next;
        std::uint64_t pj = 1;
        for (unsigned j = 0; j <= top; ++j) {
            const BigInt exact = j == 0 ? dividing[0] : dividing[j] - dividing[j - 1];
            for (const auto& [ord, count] : stats) next[checked_mul(ord, pj)] += count * exact;
            if (j < top) pj = checked_mul(pj, p);
        }
        stats = std::move(next);
    }
    return stats;
}

}  // namespace nilmult
