#include "nilmult/magnus.hpp"

#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "nilmult/errors.hpp"

namespace nilmult {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using boost::multiprecision::cpp_int;

std::int64_t add_checked(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Magnus coefficient overflow");
    return r;
}

std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Magnus coefficient overflow");
    return r;
}

std::int64_t to_int64(const cpp_int& v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("Lie coordinate solver: value exceeds 64 bits");
    return static_cast<std::int64_t>(v);
}

}  // namespace

TruncatedFreeAlgebra::TruncatedFreeAlgebra(std::size_t generators, unsigned degree)
    : q_(generators), degree_(degree) {
    offset_.push_back(0);
    std::size_t width = 1;
    for (unsigned d = 0; d <= degree_; ++d) {
        width_.push_back(width);
        offset_.push_back(offset_.back() + width);
        if (d < degree_) {
            if (q_ != 0 && width > (std::size_t{1} << 40) / q_) throw SizeError("truncated free algebra too large");
            width *= q_;
        }
    }
}

TruncatedFreeAlgebra::Element TruncatedFreeAlgebra::one() const {
    Element e = zero();
    e[0] = 1;
    return e;
}

TruncatedFreeAlgebra::Element TruncatedFreeAlgebra::generator(unsigned g) const {
    if (g < 1 || g > q_) throw DomainError("generator index out of range");
    Element e = one();
    if (degree_ >= 1) e[offset_[1] + (g - 1)] = 1;
    return e;
}

TruncatedFreeAlgebra::Element TruncatedFreeAlgebra::multiply(const Element& a, const Element& b) const {
    Element out = zero();
    for (unsigned da = 0; da <= degree_; ++da) {
        for (std::size_t ia = 0; ia < width_[da]; ++ia) {
            const std::int64_t ca = a[offset_[da] + ia];
            if (ca == 0) continue;
            for (unsigned db = 0; da + db <= degree_; ++db) {
                const std::size_t base = offset_[da + db] + ia * width_[db];
                for (std::size_t ib = 0; ib < width_[db]; ++ib) {
                    const std::int64_t cb = b[offset_[db] + ib];
                    if (cb == 0) continue;
                    out[base + ib] = add_checked(out[base + ib], mul_checked(ca, cb));
                }
            }
        }
    }
    return out;
}

TruncatedFreeAlgebra::Element TruncatedFreeAlgebra::subtract(const Element& a, const Element& b) const {
    Element out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = add_checked(a[i], mul_checked(-1, b[i]));
    return out;
}

TruncatedFreeAlgebra::Element TruncatedFreeAlgebra::inverse(const Element& a) const {
    if (a[0] != 1) throw DomainError("only elements with constant term 1 are inverted");
    // (1 + A)^-1 = sum_k (-A)^k, truncated at the degree bound.
    Element neg_nil = zero();
    for (std::size_t i = 1; i < a.size(); ++i) neg_nil[i] = mul_checked(-1, a[i]);
    Element result = one();
    Element term = one();
    for (unsigned k = 1; k <= degree_; ++k) {
        term = multiply(term, neg_nil);
        for (std::size_t i = 0; i < result.size(); ++i) result[i] = add_checked(result[i], term[i]);
    }
    return result;
}

TruncatedFreeAlgebra::Element TruncatedFreeAlgebra::power(const Element& a, std::int64_t e) const {
    Element base = e < 0 ? inverse(a) : a;
    std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
    Element result = one();
    while (n > 0) {
        if (n & 1U) result = multiply(result, base);
        n >>= 1U;
        if (n > 0) base = multiply(base, base);
    }
    return result;
}

TruncatedFreeAlgebra::Element TruncatedFreeAlgebra::group_commutator(const Element& a, const Element& b) const {
    return multiply(multiply(inverse(a), inverse(b)), multiply(a, b));
}

std::span<const std::int64_t> TruncatedFreeAlgebra::component(const Element& a, unsigned d) const {
    return std::span<const std::int64_t>(a).subspan(offset_[d], width_[d]);
}

unsigned TruncatedFreeAlgebra::lowest_degree(const Element& a) const {
    for (unsigned d = 1; d <= degree_; ++d)
        for (auto c : component(a, d))
            if (c != 0) return d;
    return degree_ + 1;
}

MagnusCoordinates::MagnusCoordinates(const BasisTable& basis)
    : basis_(basis), algebra_(basis.generators(), basis.max_weight()) {
    const std::size_t q = basis.generators();
    images_.reserve(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& e = basis[i];
        if (e.is_leaf())
            images_.push_back(algebra_.generator(e.generator));
        else
            images_.push_back(algebra_.group_commutator(images_[e.left], images_[e.right]));
    }

    // Lie polynomials per weight, then a square invertible subsystem per weight.
    std::vector<std::vector<std::int64_t>> lie(basis.size());
    std::vector<std::size_t> width{1};
    for (unsigned d = 1; d <= basis.max_weight(); ++d) width.push_back(width.back() * q);

    for (unsigned d = 1; d <= basis.max_weight(); ++d) {
        WeightSolver solver;
        solver.first = basis.weight_begin(d);
        solver.count = basis.count_of_weight(d);
        for (std::size_t i = solver.first; i < solver.first + solver.count; ++i) {
            const auto& e = basis[i];
            std::vector<std::int64_t> poly(width[d], 0);
            if (e.is_leaf()) {
                poly[e.generator - 1] = 1;
            } else {
                const auto& lu = lie[e.left];
                const auto& lv = lie[e.right];
                const unsigned du = basis[e.left].weight;
                const unsigned dv = basis[e.right].weight;
                for (std::size_t a = 0; a < lu.size(); ++a) {
                    if (lu[a] == 0) continue;
                    for (std::size_t b = 0; b < lv.size(); ++b) {
                        if (lv[b] == 0) continue;
                        const auto prod = mul_checked(lu[a], lv[b]);
                        poly[a * width[dv] + b] = add_checked(poly[a * width[dv] + b], prod);
                        poly[b * width[du] + a] = add_checked(poly[b * width[du] + a], -prod);
                    }
                }
            }
            lie[i] = std::move(poly);
        }

        // Pivot words: row-reduce the transpose (basis elements x words).
        const std::size_t n = solver.count;
        std::vector<std::vector<Rational>> work(n, std::vector<Rational>(width[d]));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t w = 0; w < width[d]; ++w) work[r][w] = lie[solver.first + r][w];
        std::size_t rank = 0;
        for (std::size_t col = 0; col < width[d] && rank < n; ++col) {
            std::size_t pivot = rank;
            while (pivot < n && work[pivot][col] == 0) ++pivot;
            if (pivot == n) continue;
            std::swap(work[pivot], work[rank]);
            for (std::size_t r = rank + 1; r < n; ++r) {
                if (work[r][col] == 0) continue;
                const Rational factor = work[r][col] / work[rank][col];
                for (std::size_t w = col; w < width[d]; ++w)
                    if (work[rank][w] != 0) work[r][w] -= factor * work[rank][w];
            }
            solver.rows.push_back(col);
            ++rank;
        }
        if (rank != n) throw std::logic_error("basic commutators of one weight are not Lie-independent");

        // Invert the square subsystem S[k][j] = lie_j[rows[k]] by Gauss-Jordan.
        std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(2 * n));
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t j = 0; j < n; ++j) aug[k][j] = lie[solver.first + j][solver.rows[k]];
            aug[k][n + k] = 1;
        }
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t pivot = col;
            while (aug[pivot][col] == 0) ++pivot;
            std::swap(aug[pivot], aug[col]);
            const Rational inv = 1 / aug[col][col];
            for (auto& v : aug[col]) v *= inv;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == col || aug[r][col] == 0) continue;
                const Rational factor = aug[r][col];
                for (std::size_t j = 0; j < 2 * n; ++j)
                    if (aug[col][j] != 0) aug[r][j] -= factor * aug[col][j];
            }
        }
        cpp_int denominator = 1;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t j = 0; j < n; ++j)
                denominator = boost::multiprecision::lcm(denominator,
                                                         boost::multiprecision::denominator(aug[r][n + j]));
        solver.denominator = to_int64(denominator);
        solver.inverse.resize(n * n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t j = 0; j < n; ++j) {
                const Rational scaled = aug[r][n + j] * Rational(denominator);
                solver.inverse[r * n + j] = to_int64(boost::multiprecision::numerator(scaled));
            }
        for (std::size_t i = 0; i < n; ++i) solver.lie.push_back(lie[solver.first + i]);
        solvers_.push_back(std::move(solver));
    }
}

std::vector<std::int64_t> MagnusCoordinates::solve(const WeightSolver& solver,
                                                   std::span<const std::int64_t> target) const {
    const std::size_t n = solver.count;
    std::vector<std::int64_t> x(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
        __int128 acc = 0;
        for (std::size_t k = 0; k < n; ++k)
            acc += static_cast<__int128>(solver.inverse[r * n + k]) * target[solver.rows[k]];
        if (acc % solver.denominator != 0) throw std::logic_error("non-integral Lie coordinates");
        acc /= solver.denominator;
        if (acc > std::numeric_limits<std::int64_t>::max() || acc < std::numeric_limits<std::int64_t>::min())
            throw std::overflow_error("Lie coordinate exceeds 64 bits");
        x[r] = static_cast<std::int64_t>(acc);
    }
    // The full system must hold, not just the pivot rows.
    for (std::size_t w = 0; w < target.size(); ++w) {
        std::int64_t acc = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (x[i] != 0 && solver.lie[i][w] != 0) acc = add_checked(acc, mul_checked(x[i], solver.lie[i][w]));
        if (acc != target[w]) throw std::logic_error("component is not a Lie polynomial");
    }
    return x;
}

TruncatedFreeAlgebra::Element MagnusCoordinates::evaluate(std::span<const std::int64_t> exponents) const {
    auto result = algebra_.one();
    for (std::size_t i = 0; i < exponents.size(); ++i)
        if (exponents[i] != 0) result = algebra_.multiply(result, algebra_.power(images_[i], exponents[i]));
    return result;
}

std::vector<std::int64_t> MagnusCoordinates::coordinates(const TruncatedFreeAlgebra::Element& x) const {
    if (x.size() != algebra_.dimension() || x[0] != 1) throw std::logic_error("not a group element image");
    std::vector<std::int64_t> exps(basis_.size(), 0);
    auto remainder = x;
    for (unsigned d = 1; d <= basis_.max_weight(); ++d) {
        const auto& solver = solvers_[d - 1];
        if (solver.count == 0) {
            for (auto c : algebra_.component(remainder, d))
                if (c != 0) throw std::logic_error("component is not a Lie polynomial");
            continue;
        }
        const auto layer = solve(solver, algebra_.component(remainder, d));
        auto factor = algebra_.one();
        for (std::size_t i = 0; i < layer.size(); ++i) {
            exps[solver.first + i] = layer[i];
            if (layer[i] != 0)
                factor = algebra_.multiply(factor, algebra_.power(images_[solver.first + i], layer[i]));
        }
        remainder = algebra_.multiply(algebra_.inverse(factor), remainder);
    }
    for (std::size_t i = 1; i < remainder.size(); ++i)
        if (remainder[i] != 0) throw std::logic_error("peeling left a nontrivial remainder");
    return exps;
}

}  // namespace nilmult
