#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nilmult/hall_basis.hpp"

namespace nilmult {

/// Z<X_1..X_q> modulo words of length > degree. The free nilpotent group of
/// class `degree` embeds into its units via x_g -> 1 + X_g, which gives exact
/// arithmetic without any presentation. Coefficients are 64-bit and every
/// operation is overflow-checked.
class TruncatedFreeAlgebra {
public:
    using Element = std::vector<std::int64_t>;

    TruncatedFreeAlgebra(std::size_t generators, unsigned degree);

    std::size_t generators() const noexcept { return q_; }
    unsigned degree() const noexcept { return degree_; }
    std::size_t dimension() const noexcept { return offset_.back(); }

    Element zero() const { return Element(dimension(), 0); }
    Element one() const;
    /// 1 + X_g for a 1-based generator index.
    Element generator(unsigned g) const;

    Element multiply(const Element& a, const Element& b) const;
    Element subtract(const Element& a, const Element& b) const;
    /// Inverse of an element with constant term 1.
    Element inverse(const Element& a) const;
    Element power(const Element& a, std::int64_t e) const;
    /// a^-1 b^-1 a b
    Element group_commutator(const Element& a, const Element& b) const;

    /// Coefficients of the words of length d, indexed by the base-q value of the word.
    std::span<const std::int64_t> component(const Element& a, unsigned d) const;
    /// Lowest positive degree with a nonzero coefficient, or degree() + 1 if none.
    unsigned lowest_degree(const Element& a) const;

private:
    std::size_t q_;
    unsigned degree_;
    std::vector<std::size_t> offset_;  // offset_[d] = start of degree-d words; offset_[degree+1] = dimension
    std::vector<std::size_t> width_;   // q^d
};

/// Expresses free-nilpotent group elements (given as algebra units) in the
/// collected form prod u_i^{e_i} over a Hall basis, by peeling one weight at a
/// time: the lowest-degree component of the remainder is a Lie polynomial whose
/// coordinates in the basic-commutator Lie basis are the exponents of that weight.
class MagnusCoordinates {
public:
    explicit MagnusCoordinates(const BasisTable& basis);

    const TruncatedFreeAlgebra& algebra() const noexcept { return algebra_; }

    /// Image of basis element i (a group commutator of generators).
    const TruncatedFreeAlgebra::Element& image(std::size_t i) const { return images_[i]; }

    /// Image of prod_i u_i^{e_i}.
    TruncatedFreeAlgebra::Element evaluate(std::span<const std::int64_t> exponents) const;

    /// Exponent vector of the collected form. Throws std::logic_error if the
    /// input is not the image of a group element.
    std::vector<std::int64_t> coordinates(const TruncatedFreeAlgebra::Element& x) const;

private:
    struct WeightSolver {
        std::size_t first = 0;              // first basis index of this weight
        std::size_t count = 0;              // number of basis elements of this weight
        std::vector<std::size_t> rows;      // pivot word indices
        std::vector<std::int64_t> inverse;  // count x count, scaled by denominator
        std::int64_t denominator = 1;
        std::vector<std::vector<std::int64_t>> lie;  // Lie polynomial of each basis element
    };

    std::vector<std::int64_t> solve(const WeightSolver& solver, std::span<const std::int64_t> target) const;

    const BasisTable& basis_;
    TruncatedFreeAlgebra algebra_;
    std::vector<TruncatedFreeAlgebra::Element> images_;
    std::vector<WeightSolver> solvers_;  // index d - 1
};

}  // namespace nilmult
