#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "nilmult/numtheory.hpp"

namespace nilmult {

/// Z_modulus^(multiplicity); modulus 0 stands for Z.
struct CyclicFactor {
    Order modulus = 0;
    BigInt multiplicity = 0;
};

/// Element order -> number of elements of that order.
using OrderStatistics = std::map<std::uint64_t, BigInt>;

/// A finitely generated abelian group Z^free_rank + torsion.
///
/// Equality compares the free rank and the primary decomposition (multiset of
/// prime powers); the display factors only remember how the group was produced,
/// e.g. Z^(g0) + Z_{r1}^(g1-g0) + ..., for human-facing output.
class AbelianStructure {
public:
    const BigInt& free_rank() const noexcept { return free_rank_; }
    /// prime power -> multiplicity
    const std::map<std::uint64_t, BigInt>& primary() const noexcept { return primary_; }
    /// Finite cyclic factors as produced, merged by modulus, sorted by modulus descending.
    const std::vector<CyclicFactor>& display() const noexcept { return display_; }

    bool is_trivial() const { return free_rank_ == 0 && primary_.empty(); }
    bool is_finite() const { return free_rank_ == 0; }
    BigInt order() const;  // requires is_finite()

    /// "Z^2 + Z_5^3"; the trivial group prints as "0".
    std::string to_text() const;

    friend bool operator==(const AbelianStructure& a, const AbelianStructure& b) {
        return a.free_rank_ == b.free_rank_ && a.primary_ == b.primary_;
    }

    friend AbelianStructure canonicalize(std::span<const CyclicFactor> raw);

private:
    BigInt free_rank_ = 0;
    std::map<std::uint64_t, BigInt> primary_;
    std::vector<CyclicFactor> display_;
};

/// Builds the canonical form: modulus-0 entries add to the free rank, modulus-1
/// entries vanish, every other modulus is split into prime powers.
AbelianStructure canonicalize(std::span<const CyclicFactor> raw);

/// Order statistics of a finite abelian group, computed from its primary decomposition.
/// Throws DomainError for infinite groups and SizeError if an element order overflows 64 bits.
OrderStatistics order_statistics(const AbelianStructure& group);

}  // namespace nilmult
