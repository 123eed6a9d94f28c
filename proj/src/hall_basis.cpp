#include "nilmult/hall_basis.hpp"

#include <algorithm>
#include <charconv>
#include <iterator>

#include "nilmult/errors.hpp"
#include "nilmult/numtheory.hpp"

namespace nilmult {

namespace {

std::vector<unsigned> merge_sets(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
    std::vector<unsigned> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

class CommutatorParser {
public:
    explicit CommutatorParser(std::string_view text) : text_(text) {}

    BasicCommutator parse() {
        auto result = term();
        if (pos_ != text_.size()) fail("trailing characters");
        return result;
    }

private:
    BasicCommutator term() {
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '[') {
            ++pos_;
            auto left = term();
            expect(',');
            auto right = term();
            expect(']');
            return BasicCommutator::pair(std::move(left), std::move(right));
        }
        if (c == 'x' || c == 'g') {
            ++pos_;
            unsigned index = 0;
            auto [end, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), index);
            if (ec != std::errc{} || index == 0) fail("expected a positive generator index");
            pos_ = static_cast<std::size_t>(end - text_.data());
            return BasicCommutator::leaf(index);
        }
        fail("unexpected character");
    }

    void expect(char c) {
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw DomainError("cannot parse commutator '" + std::string(text_) + "' at offset " +
                          std::to_string(pos_) + ": " + why);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

BasicCommutator BasicCommutator::leaf(unsigned generator) {
    if (generator == 0) throw DomainError("generator indices are 1-based");
    BasicCommutator u;
    u.generator_ = generator;
    u.weight_ = 1;
    u.occurrence_ = {generator};
    return u;
}

BasicCommutator BasicCommutator::pair(BasicCommutator left, BasicCommutator right) {
    BasicCommutator u;
    u.weight_ = left.weight_ + right.weight_;
    u.occurrence_ = merge_sets(left.occurrence_, right.occurrence_);
    u.left_ = std::make_shared<const BasicCommutator>(std::move(left));
    u.right_ = std::make_shared<const BasicCommutator>(std::move(right));
    return u;
}

bool operator==(const BasicCommutator& a, const BasicCommutator& b) {
    if (a.is_leaf() != b.is_leaf()) return false;
    if (a.is_leaf()) return a.generator_ == b.generator_;
    return a.weight_ == b.weight_ && *a.left_ == *b.left_ && *a.right_ == *b.right_;
}

std::string render(const BasicCommutator& u, char letter) {
    if (u.is_leaf()) return letter + std::to_string(u.generator());
    return "[" + render(u.left(), letter) + "," + render(u.right(), letter) + "]";
}

BasicCommutator parse_commutator(std::string_view text) { return CommutatorParser(text).parse(); }

std::vector<unsigned> occurring_generators(const BasicCommutator& u) { return u.occurrence(); }

std::size_t BasisTable::weight_begin(unsigned d) const {
    if (d < 1 || d > max_weight_ + 1) throw DomainError("weight outside the table range");
    return weight_start_[d];
}

BasicCommutator BasisTable::commutator(std::size_t i) const {
    const auto& e = entries_.at(i);
    if (e.is_leaf()) return BasicCommutator::leaf(e.generator);
    return BasicCommutator::pair(commutator(e.left), commutator(e.right));
}

std::string BasisTable::render(std::size_t i, char letter) const {
    const auto& e = entries_.at(i);
    if (e.is_leaf()) return letter + std::to_string(e.generator);
    return "[" + render(e.left, letter) + "," + render(e.right, letter) + "]";
}

std::optional<std::size_t> BasisTable::find(const BasicCommutator& u) const {
    if (u.weight() > max_weight_) return std::nullopt;
    if (u.is_leaf()) {
        if (u.generator() > generators_) return std::nullopt;
        return u.generator() - 1;
    }
    auto left = find(u.left());
    auto right = find(u.right());
    if (!left || !right) return std::nullopt;
    auto first = entries_.begin() + static_cast<std::ptrdiff_t>(weight_begin(u.weight()));
    auto last = entries_.begin() + static_cast<std::ptrdiff_t>(weight_end(u.weight()));
    auto it = std::lower_bound(first, last, std::pair{*left, *right}, [](const BasisEntry& e, const auto& key) {
        return std::pair{e.left, e.right} < key;
    });
    if (it == last || it->left != *left || it->right != *right) return std::nullopt;
    return static_cast<std::size_t>(it - entries_.begin());
}

bool BasisTable::satisfies_hall_condition(std::size_t i) const {
    const auto& e = entries_.at(i);
    if (e.is_leaf()) return e.generator >= 1 && e.generator <= generators_;
    if (e.left >= i || e.right >= i) return false;
    if (!(e.left > e.right)) return false;
    const auto& u = entries_[e.left];
    if (!u.is_leaf() && e.right < u.right) return false;
    return e.weight == u.weight + entries_[e.right].weight;
}

BasisTable enumerate_basis(std::size_t q, unsigned max_weight, std::size_t cap) {
    if (max_weight < 1) throw DomainError("enumerate_basis: max_weight must be >= 1");

    BigInt expected = 0;
    for (unsigned d = 1; d <= max_weight; ++d) {
        expected += witt_chi(d, q);
        if (expected > cap)
            throw SizeError("basis of weight <= " + std::to_string(max_weight) + " on " + std::to_string(q) +
                            " generators exceeds the cap of " + std::to_string(cap) + " commutators");
    }

    BasisTable table;
    table.generators_ = q;
    table.max_weight_ = max_weight;
    table.entries_.reserve(static_cast<std::size_t>(expected));
    table.weight_start_.assign(max_weight + 2, 0);

    auto& entries = table.entries_;
    table.weight_start_[1] = 0;
    for (std::size_t g = 1; g <= q; ++g) {
        BasisEntry e;
        e.weight = 1;
        e.generator = static_cast<unsigned>(g);
        e.occurrence = {e.generator};
        entries.push_back(std::move(e));
    }

    for (unsigned w = 2; w <= max_weight; ++w) {
        table.weight_start_[w] = entries.size();
        const std::size_t existing = entries.size();
        // Candidates pair(u, v) in lexicographic (u, v) order: u > v, weights summing to w,
        // and v >= right(u) when u is itself a pair.
        for (std::size_t u = 0; u < existing; ++u) {
            const unsigned wu = entries[u].weight;
            if (wu >= w) break;
            const unsigned wv = w - wu;
            if (wv > wu) continue;  // v < u forces weight(v) <= weight(u)
            const std::size_t v_begin = table.weight_start_[wv];
            const std::size_t v_end = table.weight_start_[wv + 1];
            std::size_t v_lo = v_begin;
            if (!entries[u].is_leaf()) v_lo = std::max(v_lo, entries[u].right);
            for (std::size_t v = v_lo; v < v_end && v < u; ++v) {
                BasisEntry e;
                e.weight = w;
                e.left = u;
                e.right = v;
                e.occurrence = merge_sets(entries[u].occurrence, entries[v].occurrence);
                entries.push_back(std::move(e));
            }
        }
    }
    table.weight_start_[max_weight + 1] = entries.size();
    return table;
}

std::uint64_t count_involving_last(std::size_t q, unsigned lo, unsigned hi, std::size_t cap) {
    if (q < 1) throw DomainError("count_involving_last: need at least one generator");
    if (lo < 2 || hi < lo) throw DomainError("count_involving_last: need 2 <= lo <= hi");
    const auto table = enumerate_basis(q, hi, cap);
    const auto last = static_cast<unsigned>(q);
    std::uint64_t count = 0;
    for (std::size_t i = table.weight_begin(lo); i < table.size(); ++i) {
        const auto& occ = table[i].occurrence;
        if (!occ.empty() && occ.back() == last) ++count;
    }
    return count;
}

}  // namespace nilmult
