#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nilmult {

inline constexpr std::size_t kDefaultBasisCap = 1'000'000;

/// A commutator tree over 1-based generator indices: either a leaf x_g or a
/// pair [u,v]. Value type; subtrees are shared and immutable.
class BasicCommutator {
public:
    static BasicCommutator leaf(unsigned generator);
    static BasicCommutator pair(BasicCommutator left, BasicCommutator right);

    bool is_leaf() const noexcept { return left_ == nullptr; }
    unsigned generator() const noexcept { return generator_; }
    const BasicCommutator& left() const { return *left_; }
    const BasicCommutator& right() const { return *right_; }
    unsigned weight() const noexcept { return weight_; }

    /// Sorted, duplicate-free generator indices appearing as leaves.
    const std::vector<unsigned>& occurrence() const noexcept { return occurrence_; }

    friend bool operator==(const BasicCommutator& a, const BasicCommutator& b);

private:
    BasicCommutator() = default;

    unsigned generator_ = 0;
    unsigned weight_ = 1;
    std::shared_ptr<const BasicCommutator> left_;
    std::shared_ptr<const BasicCommutator> right_;
    std::vector<unsigned> occurrence_;
};

/// Canonical rendering: leaves as x1, x2, ...; pairs as [u,v] without whitespace.
/// The letter is configurable so group elements can print with g1, g2, ...
std::string render(const BasicCommutator& u, char letter = 'x');

/// Inverse of render. Accepts either letter 'x' or 'g'. Throws DomainError on malformed input.
BasicCommutator parse_commutator(std::string_view text);

std::vector<unsigned> occurring_generators(const BasicCommutator& u);

/// One row of a basis table. Leaves have left == right == npos.
struct BasisEntry {
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    unsigned weight = 1;
    unsigned generator = 0;
    std::size_t left = npos;
    std::size_t right = npos;
    std::vector<unsigned> occurrence;

    bool is_leaf() const noexcept { return left == npos; }
};

/// All Hall basic commutators of weight 1..max_weight on q generators, in the
/// fixed total order: by weight, then generator index for weight 1, then
/// lexicographically by (index of left part, index of right part).
class BasisTable {
public:
    BasisTable() = default;

    std::size_t generators() const noexcept { return generators_; }
    unsigned max_weight() const noexcept { return max_weight_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const BasisEntry& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<BasisEntry>& entries() const noexcept { return entries_; }

    /// Index of the first entry of weight d; weight_begin(max_weight + 1) == size().
    std::size_t weight_begin(unsigned d) const;
    std::size_t weight_end(unsigned d) const { return weight_begin(d + 1); }
    std::size_t count_of_weight(unsigned d) const { return weight_end(d) - weight_begin(d); }

    BasicCommutator commutator(std::size_t i) const;
    std::string render(std::size_t i, char letter = 'x') const;

    /// Position of u in the table, if u is one of its entries.
    std::optional<std::size_t> find(const BasicCommutator& u) const;

    /// Checks the Hall condition for entry i against the table order.
    bool satisfies_hall_condition(std::size_t i) const;

private:
    friend BasisTable enumerate_basis(std::size_t q, unsigned max_weight, std::size_t cap);

    std::size_t generators_ = 0;
    unsigned max_weight_ = 0;
    std::vector<BasisEntry> entries_;
    std::vector<std::size_t> weight_start_;  // weight_start_[d] for d = 1 .. max_weight + 1
};

/// Throws SizeError if the table would exceed `cap` entries.
BasisTable enumerate_basis(std::size_t q, unsigned max_weight, std::size_t cap = kDefaultBasisCap);

/// Number of basic commutators of weight in [lo, hi] on q generators that involve generator q.
std::uint64_t count_involving_last(std::size_t q, unsigned lo, unsigned hi,
                                   std::size_t cap = kDefaultBasisCap);

}  // namespace nilmult
