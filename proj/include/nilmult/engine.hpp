#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nilmult/abelian.hpp"
#include "nilmult/hall_basis.hpp"
#include "nilmult/multiplier.hpp"

namespace nilmult {

inline constexpr std::size_t kDefaultSubgroupCap = 1'000'000;

/// Collected form prod u_i^{m_i} over the context's basis. Exponents with a
/// nonzero modulus N_i live in [0, N_i); modulus 0 leaves them unreduced.
class GroupElement {
public:
    GroupElement() = default;
    explicit GroupElement(std::vector<std::int64_t> exponents) : exponents_(std::move(exponents)) {}

    const std::vector<std::int64_t>& exponents() const noexcept { return exponents_; }
    std::int64_t operator[](std::size_t i) const { return exponents_[i]; }
    bool is_identity() const;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;

private:
    std::vector<std::int64_t> exponents_;
};

struct GroupElementHash {
    std::size_t operator()(const GroupElement& g) const noexcept;
};

/// A product of generator powers, e.g. "g1 g2 g1^-1 g2^-1".
struct GeneratorWord {
    struct Letter {
        unsigned generator = 1;  // 1-based
        std::int64_t exponent = 1;
    };
    std::vector<Letter> letters;

    /// Concatenation.
    GeneratorWord operator*(const GeneratorWord& other) const;
};

/// Parses whitespace-separated tokens gK or gK^E. Throws DomainError.
GeneratorWord parse_word(std::string_view text);
std::string render(const GeneratorWord& word);

struct EngineOptions {
    bool force = false;  // skip the prime hypothesis
    std::size_t basis_cap = kDefaultBasisCap;
    std::size_t subgroup_cap = kDefaultSubgroupCap;
};

/// Arithmetic in the class-n nilpotent product of cyclic groups with the given
/// orders. Construction precomputes, for every pair of basis elements i < k
/// that do not commute, the collected form of u_i^{-s} u_k u_i^{s} (s = +-1) in
/// the free nilpotent group; after that the context is immutable.
class GroupContext {
public:
    /// Requires class_n >= 2 and every prime dividing a nonzero order to exceed class_n.
    static GroupContext build(const ProductSpec& spec, const EngineOptions& options = {});

    const ProductSpec& spec() const noexcept { return spec_; }
    unsigned nilpotency_class() const noexcept { return spec_.class_n; }
    const BasisTable& basis() const noexcept { return *basis_; }
    const std::vector<Order>& moduli() const noexcept { return moduli_; }
    const EngineOptions& options() const noexcept { return options_; }
    bool is_finite() const;
    /// Product of the moduli of basis elements with weight >= k; 0 if any is infinite.
    BigInt normal_form_count(unsigned k = 1) const;

    GroupElement identity() const;
    GroupElement basis_element(std::size_t i, std::int64_t exponent = 1) const;
    GroupElement collect(const GeneratorWord& word) const;
    GroupElement multiply(const GroupElement& g, const GroupElement& h) const;
    GroupElement inverse(const GroupElement& g) const;
    GroupElement power(const GroupElement& g, std::int64_t e) const;
    /// g^-1 h^-1 g h
    GroupElement commutator(const GroupElement& g, const GroupElement& h) const;

    /// Reduces every exponent into [0, N_i).
    GroupElement reduce(const GroupElement& g) const;
    /// Product in the free nilpotent group of the same class and rank (no reduction).
    GroupElement multiply_free(const GroupElement& g, const GroupElement& h) const;

    /// Collected form rendered with g-letters, e.g. "g1^2 g2^2 [g2,g1]"; identity is "1".
    std::string render(const GroupElement& g) const;

    /// Collected form of u_i^{-s} u_k u_i^{s}, i < k, as (basis index, exponent) pairs.
    const std::vector<std::pair<std::size_t, std::int64_t>>& conjugate(std::size_t k, std::size_t i, int s) const;

private:
    using Word = std::vector<std::pair<std::size_t, std::int64_t>>;

    GroupContext() = default;

    void check(const GroupElement& g) const;
    void reduce_at(std::vector<std::int64_t>& x, std::size_t i, bool reduce) const;
    void mul_power(std::vector<std::int64_t>& x, std::size_t i, std::int64_t e, bool reduce) const;
    void mul_letter(std::vector<std::int64_t>& x, std::size_t i, int s, bool reduce) const;
    GroupElement multiply_impl(const GroupElement& g, const GroupElement& h, bool reduce) const;

    ProductSpec spec_;
    EngineOptions options_;
    std::shared_ptr<const BasisTable> basis_;
    std::vector<Order> moduli_;
    std::vector<unsigned> weight_;
    // conj_[s][k][i] for i < k; empty when u_i and u_k commute (weight sum > class).
    std::vector<std::vector<Word>> conj_[2];
};

/// The subgroup generated by the basis elements of weight >= k (the k-th term of
/// the lower central series), enumerated by breadth-first closure under right
/// multiplication. k = 1 gives the whole group.
std::vector<GroupElement> gamma_subgroup(const GroupContext& ctx, unsigned k);

/// Closure of `generators` under right multiplication, bounded by `cap`.
std::vector<GroupElement> closure(const GroupContext& ctx, std::span<const GroupElement> generators,
                                  std::size_t cap);

struct Fingerprint {
    bool abelian = false;
    OrderStatistics orders;
    std::vector<GroupElement> generators;  // the generating set used for the checks
};

/// Checks that `elements` is a subgroup (throws DomainError if not), whether it
/// is abelian, and tallies element orders.
Fingerprint abelian_fingerprint(std::span<const GroupElement> elements, const GroupContext& ctx);

struct VerificationReport {
    ProductSpec spec;
    unsigned c = 1;
    unsigned ambient_class = 0;
    unsigned gamma_index = 0;
    std::size_t subgroup_order = 0;
    AbelianStructure predicted;
    OrderStatistics predicted_orders;
    Fingerprint oracle;
    bool match = false;
};

/// Enumerates gamma_{lo}(class n + c product) and compares its order statistics
/// with those of multiplier_general(spec, c). Infinite factors are unsupported.
VerificationReport verify_multiplier(const ProductSpec& spec, unsigned c, const EngineOptions& options = {});

}  // namespace nilmult
