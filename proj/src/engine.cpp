#include "nilmult/engine.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <sstream>
#include <unordered_set>

#include "nilmult/errors.hpp"
#include "nilmult/magnus.hpp"

namespace nilmult {

namespace {

std::int64_t add_checked(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("exponent overflow during collection");
    return r;
}

std::int64_t floor_mod(std::int64_t v, Order n) {
    const auto m = static_cast<std::int64_t>(n);
    const std::int64_t r = v % m;
    return r < 0 ? r + m : r;
}

}  // namespace

bool GroupElement::is_identity() const {
    return std::all_of(exponents_.begin(), exponents_.end(), [](auto e) { return e == 0; });
}

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto e : g.exponents()) h = (h ^ static_cast<std::size_t>(e)) * 0x100000001b3ULL;
    return h;
}

GeneratorWord GeneratorWord::operator*(const GeneratorWord& other) const {
    GeneratorWord out = *this;
    out.letters.insert(out.letters.end(), other.letters.begin(), other.letters.end());
    return out;
}

GeneratorWord parse_word(std::string_view text) {
    GeneratorWord word;
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token) {
        auto bad = [&](const std::string& why) {
            return DomainError("bad word token '" + token + "': " + why);
        };
        if (token.size() < 2 || token[0] != 'g') throw bad("expected gK or gK^E");
        const char* first = token.data() + 1;
        const char* last = token.data() + token.size();
        GeneratorWord::Letter letter;
        auto [p, ec] = std::from_chars(first, last, letter.generator);
        if (ec != std::errc{} || letter.generator == 0) throw bad("expected a positive generator index");
        if (p != last) {
            if (*p != '^') throw bad("expected '^'");
            ++p;
            auto [q, ec2] = std::from_chars(p, last, letter.exponent);
            if (ec2 != std::errc{} || q != last) throw bad("expected an integer exponent");
        }
        word.letters.push_back(letter);
    }
    return word;
}

std::string render(const GeneratorWord& word) {
    std::ostringstream out;
    for (std::size_t i = 0; i < word.letters.size(); ++i) {
        const auto& l = word.letters[i];
        out << (i ? " " : "") << 'g' << l.generator;
        if (l.exponent != 1) out << '^' << l.exponent;
    }
    return out.str();
}

GroupContext GroupContext::build(const ProductSpec& spec, const EngineOptions& options) {
    if (spec.orders.empty()) throw PreconditionError("at least one cyclic factor is required");
    if (spec.class_n < 1) throw PreconditionError("nilpotency class must be >= 1");
    if (!options.force) {
        Verdict verdict = validate_orders(spec.orders, spec.class_n);
        if (spec.class_n < 2) verdict.violations.push_back({0, 0, 0, "the normal-form engine needs class >= 2"});
        if (!verdict.ok()) {
            std::vector<std::string> msgs;
            for (const auto& v : verdict.violations) msgs.push_back(v.message);
            throw PreconditionError("engine hypotheses violated: " + verdict.summary(), msgs);
        }
    }

    GroupContext ctx;
    ctx.spec_ = spec;
    ctx.options_ = options;
    ctx.basis_ = std::make_shared<const BasisTable>(enumerate_basis(spec.orders.size(), spec.class_n, options.basis_cap));
    const auto& basis = *ctx.basis_;
    const std::size_t size = basis.size();

    std::vector<Order> involved;
    for (std::size_t i = 0; i < size; ++i) {
        involved.clear();
        for (auto g : basis[i].occurrence) involved.push_back(spec.orders[g - 1]);
        ctx.moduli_.push_back(gcd_zero_aware(involved));
        ctx.weight_.push_back(basis[i].weight);
    }

    const MagnusCoordinates magnus(basis);
    const auto& algebra = magnus.algebra();
    for (int s = 0; s < 2; ++s) ctx.conj_[s].assign(size, {});
    for (std::size_t k = 0; k < size; ++k) {
        for (int s = 0; s < 2; ++s) ctx.conj_[s][k].resize(k);
        for (std::size_t i = 0; i < k; ++i) {
            if (ctx.weight_[i] + ctx.weight_[k] > spec.class_n) continue;
            for (int s = 0; s < 2; ++s) {
                const std::int64_t sign = s == 0 ? 1 : -1;
                const auto x = algebra.multiply(algebra.multiply(algebra.power(magnus.image(i), -sign), magnus.image(k)),
                                                algebra.power(magnus.image(i), sign));
                const auto exps = magnus.coordinates(x);
                Word word;
                for (std::size_t j = 0; j < size; ++j)
                    if (exps[j] != 0) word.emplace_back(j, exps[j]);
                if (word.empty() || word.front() != std::pair<std::size_t, std::int64_t>{k, 1})
                    throw std::logic_error("conjugate does not lead with the conjugated element");
                ctx.conj_[s][k][i] = std::move(word);
            }
        }
    }
    return ctx;
}

bool GroupContext::is_finite() const {
    return std::none_of(moduli_.begin(), moduli_.end(), [](Order n) { return n == 0; });
}

BigInt GroupContext::normal_form_count(unsigned k) const {
    BigInt count = 1;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        if (weight_[i] < k) continue;
        if (moduli_[i] == 0) return 0;
        count *= moduli_[i];
    }
    return count;
}

const std::vector<std::pair<std::size_t, std::int64_t>>& GroupContext::conjugate(std::size_t k, std::size_t i,
                                                                                  int s) const {
    if (i >= k || k >= moduli_.size()) throw DomainError("conjugate requires i < k within the basis");
    return conj_[s > 0 ? 0 : 1][k][i];
}

GroupElement GroupContext::identity() const { return GroupElement(std::vector<std::int64_t>(moduli_.size(), 0)); }

GroupElement GroupContext::basis_element(std::size_t i, std::int64_t exponent) const {
    if (i >= moduli_.size()) throw DomainError("basis index out of range");
    std::vector<std::int64_t> x(moduli_.size(), 0);
    x[i] = exponent;
    reduce_at(x, i, true);
    return GroupElement(std::move(x));
}

void GroupContext::check(const GroupElement& g) const {
    if (g.exponents().size() != moduli_.size()) throw DomainError("element does not belong to this context");
}

void GroupContext::reduce_at(std::vector<std::int64_t>& x, std::size_t i, bool reduce) const {
    if (reduce && moduli_[i] != 0) x[i] = floor_mod(x[i], moduli_[i]);
}

void GroupContext::mul_power(std::vector<std::int64_t>& x, std::size_t i, std::int64_t e, bool reduce) const {
    if (e == 0) return;
    if (reduce && moduli_[i] != 0) {
        e = floor_mod(e, moduli_[i]);
        if (e == 0) return;
    }
    bool commutes = true;
    for (std::size_t k = i + 1; k < x.size() && commutes; ++k)
        if (x[k] != 0 && weight_[i] + weight_[k] <= spec_.class_n) commutes = false;
    if (commutes) {
        x[i] = add_checked(x[i], e);
        reduce_at(x, i, reduce);
        return;
    }
    const int s = e > 0 ? 1 : -1;
    for (std::int64_t rep = 0; rep < (e > 0 ? e : -e); ++rep) mul_letter(x, i, s, reduce);
}

// x <- x * u_i^s. The collected tail beyond i is conjugated past u_i^s:
// (prod_{k>i} u_k^{t_k})^{u_i^s} = prod_{k>i} (u_k^{u_i^s})^{t_k}.
void GroupContext::mul_letter(std::vector<std::int64_t>& x, std::size_t i, int s, bool reduce) const {
    std::vector<std::pair<std::size_t, std::int64_t>> tail;
    for (std::size_t k = i + 1; k < x.size(); ++k) {
        if (x[k] != 0) {
            tail.emplace_back(k, x[k]);
            x[k] = 0;
        }
    }
    x[i] = add_checked(x[i], s);
    reduce_at(x, i, reduce);
    const auto& table = conj_[s > 0 ? 0 : 1];
    for (auto [k, t] : tail) {
        if (weight_[i] + weight_[k] > spec_.class_n) {
            mul_power(x, k, t, reduce);
            continue;
        }
        const Word& word = table[k][i];
        if (t > 0) {
            for (std::int64_t rep = 0; rep < t; ++rep)
                for (auto [idx, e] : word) mul_power(x, idx, e, reduce);
        } else {
            for (std::int64_t rep = 0; rep < -t; ++rep)
                for (auto it = word.rbegin(); it != word.rend(); ++it) mul_power(x, it->first, -it->second, reduce);
        }
    }
}

GroupElement GroupContext::multiply_impl(const GroupElement& g, const GroupElement& h, bool reduce) const {
    check(g);
    check(h);
    auto x = g.exponents();
    for (std::size_t i = 0; i < x.size(); ++i) mul_power(x, i, h[i], reduce);
    return GroupElement(std::move(x));
}

GroupElement GroupContext::multiply(const GroupElement& g, const GroupElement& h) const {
    return multiply_impl(g, h, true);
}

GroupElement GroupContext::multiply_free(const GroupElement& g, const GroupElement& h) const {
    return multiply_impl(g, h, false);
}

GroupElement GroupContext::reduce(const GroupElement& g) const {
    check(g);
    auto x = g.exponents();
    for (std::size_t i = 0; i < x.size(); ++i) reduce_at(x, i, true);
    return GroupElement(std::move(x));
}

GroupElement GroupContext::collect(const GeneratorWord& word) const {
    auto x = identity().exponents();
    const std::size_t q = spec_.orders.size();
    for (const auto& l : word.letters) {
        if (l.generator < 1 || l.generator > q)
            throw DomainError("generator g" + std::to_string(l.generator) + " out of range for " + std::to_string(q) +
                              " factors");
        mul_power(x, l.generator - 1, l.exponent, true);
    }
    return GroupElement(std::move(x));
}

GroupElement GroupContext::inverse(const GroupElement& g) const {
    check(g);
    auto x = identity().exponents();
    for (std::size_t i = x.size(); i-- > 0;) mul_power(x, i, -g[i], true);
    return GroupElement(std::move(x));
}

GroupElement GroupContext::power(const GroupElement& g, std::int64_t e) const {
    GroupElement base = e < 0 ? inverse(g) : g;
    std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
    GroupElement result = identity();
    while (n > 0) {
        if (n & 1U) result = multiply(result, base);
        n >>= 1U;
        if (n > 0) base = multiply(base, base);
    }
    return result;
}

GroupElement GroupContext::commutator(const GroupElement& g, const GroupElement& h) const {
    return multiply(multiply(inverse(g), inverse(h)), multiply(g, h));
}

std::string GroupContext::render(const GroupElement& g) const {
    check(g);
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < g.exponents().size(); ++i) {
        if (g[i] == 0) continue;
        out << (first ? "" : " ") << basis_->render(i, 'g');
        if (g[i] != 1) out << '^' << g[i];
        first = false;
    }
    return first ? "1" : out.str();
}

std::vector<GroupElement> closure(const GroupContext& ctx, std::span<const GroupElement> generators,
                                  std::size_t cap) {
    std::unordered_set<GroupElement, GroupElementHash> seen;
    std::vector<GroupElement> order;
    std::deque<GroupElement> queue;
    const auto id = ctx.identity();
    seen.insert(id);
    order.push_back(id);
    queue.push_back(id);
    while (!queue.empty()) {
        const auto x = std::move(queue.front());
        queue.pop_front();
        for (const auto& g : generators) {
            auto y = ctx.multiply(x, g);
            if (seen.contains(y)) continue;
            if (seen.size() >= cap)
                throw SizeError("subgroup closure exceeds the cap of " + std::to_string(cap) + " elements");
            seen.insert(y);
            order.push_back(y);
            queue.push_back(std::move(y));
        }
    }
    return order;
}

std::vector<GroupElement> gamma_subgroup(const GroupContext& ctx, unsigned k) {
    if (k < 1) throw DomainError("lower central index must be >= 1");
    if (!ctx.is_finite()) throw UnsupportedError("subgroup enumeration needs a finite group (infinite factor present)");
    if (k > ctx.nilpotency_class()) return {ctx.identity()};

    const BigInt expected = ctx.normal_form_count(k);
    if (expected > ctx.options().subgroup_cap)
        throw SizeError("gamma_" + std::to_string(k) + " has " + expected.str() + " elements, above the cap of " +
                        std::to_string(ctx.options().subgroup_cap));

    std::vector<GroupElement> generators;
    for (std::size_t i = ctx.basis().weight_begin(k); i < ctx.basis().size(); ++i)
        generators.push_back(ctx.basis_element(i));
    auto elements = closure(ctx, generators, ctx.options().subgroup_cap);

    std::unordered_set<GroupElement, GroupElementHash> members(elements.begin(), elements.end());
    for (const auto& x : elements)
        if (!members.contains(ctx.inverse(x))) throw std::logic_error("subgroup closure is not closed under inverses");
    return elements;
}

Fingerprint abelian_fingerprint(std::span<const GroupElement> elements, const GroupContext& ctx) {
    std::unordered_set<GroupElement, GroupElementHash> members(elements.begin(), elements.end());
    if (members.size() != elements.size()) throw DomainError("element list contains duplicates");
    if (!members.contains(ctx.identity())) throw DomainError("element set does not contain the identity");

    // Greedy generating set; every product formed along the way must stay inside the set.
    Fingerprint fp;
    std::unordered_set<GroupElement, GroupElementHash> span{ctx.identity()};
    for (const auto& x : elements) {
        if (span.contains(x)) continue;
        fp.generators.push_back(x);
        std::deque<GroupElement> queue(span.begin(), span.end());
        while (!queue.empty()) {
            const auto y = std::move(queue.front());
            queue.pop_front();
            for (const auto& g : fp.generators) {
                auto z = ctx.multiply(y, g);
                if (!members.contains(z)) throw DomainError("element set is not closed under multiplication");
                if (span.insert(z).second) queue.push_back(std::move(z));
            }
        }
    }

    // The set is generated by fp.generators, so it is abelian iff they commute with everything.
    fp.abelian = true;
    for (const auto& x : elements) {
        for (const auto& g : fp.generators) {
            if (ctx.multiply(x, g) != ctx.multiply(g, x)) {
                fp.abelian = false;
                break;
            }
        }
        if (!fp.abelian) break;
    }

    for (const auto& x : elements) {
        std::uint64_t order = 1;
        auto y = x;
        while (!y.is_identity()) {
            y = ctx.multiply(y, x);
            if (++order > elements.size()) throw std::logic_error("element order exceeds the subgroup size");
        }
        fp.orders[order] += 1;
    }
    return fp;
}

VerificationReport verify_multiplier(const ProductSpec& spec, unsigned c, const EngineOptions& options) {
    if (std::any_of(spec.orders.begin(), spec.orders.end(), [](Order o) { return o == 0; }))
        throw UnsupportedError("infinite factor in oracle: subgroup enumeration needs finite orders");
    if (!options.force) {
        const auto verdict = validate_spec(spec, c);
        if (!verdict.ok()) {
            std::vector<std::string> msgs;
            for (const auto& v : verdict.violations) msgs.push_back(v.message);
            throw PreconditionError("hypotheses violated: " + verdict.summary(), msgs);
        }
    }

    VerificationReport report;
    report.spec = spec;
    report.c = c;
    report.ambient_class = spec.class_n + c;
    report.gamma_index = weight_window(spec.class_n, c).first;

    const auto ctx = GroupContext::build(ProductSpec{report.ambient_class, spec.orders}, options);
    const auto elements = gamma_subgroup(ctx, report.gamma_index);
    report.subgroup_order = elements.size();
    report.oracle = abelian_fingerprint(elements, ctx);

    report.predicted = multiplier_general(spec, c, MultiplierOptions{options.basis_cap, options.force});
    report.predicted_orders = order_statistics(report.predicted);
    report.match = report.oracle.abelian && report.oracle.orders == report.predicted_orders;
    return report;
}

}  // namespace nilmult
