#include "cli.hpp"

#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nilmult/engine.hpp"
#include "nilmult/errors.hpp"
#include "nilmult/hall_basis.hpp"
#include "nilmult/json_io.hpp"
#include "nilmult/multiplier.hpp"
#include "nilmult/numtheory.hpp"

namespace nilmult::cli {

namespace {

using nlohmann::json;

struct RunConfig {
    std::string format = "text";
    std::size_t basis_cap = kDefaultBasisCap;
    std::size_t subgroup_cap = kDefaultSubgroupCap;
    bool force = false;
    std::uint64_t seed = 1;
};

/// What a subcommand produced: a JSON result plus its text rendering.
struct Outcome {
    json result = json::object();
    std::string text;
    std::vector<std::string> warnings;
    int code = kSuccess;
    std::string error;  // set together with a nonzero code for soft failures
};

const char* const kForceWarning =
    "--force: hypothesis validation bypassed; results are outside the formula hypotheses and unverified";

std::vector<Order> parse_orders(const std::string& text) {
    std::vector<Order> orders;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        unsigned long long value = 0;
        try {
            value = std::stoull(item, &used);
        } catch (const std::exception&) {
            throw DomainError("bad order '" + item + "' in --orders");
        }
        if (used != item.size() || item.find('-') != std::string::npos)
            throw DomainError("bad order '" + item + "' in --orders");
        orders.push_back(value);
    }
    if (orders.empty()) throw DomainError("--orders needs at least one entry");
    return orders;
}

Outcome cmd_witt(unsigned d, std::uint64_t q) {
    Outcome o;
    const auto chi = witt_chi(d, q);
    o.result = {{"weight", d}, {"generators", q}, {"chi", big_to_json(chi)}};
    o.text = chi.str();
    return o;
}

Outcome cmd_hall(std::size_t q, unsigned max_weight, bool count_only, const RunConfig& cfg) {
    Outcome o;
    const auto table = enumerate_basis(q, max_weight, cfg.basis_cap);
    std::ostringstream text;
    if (count_only) {
        json counts = json::object();
        for (unsigned d = 1; d <= max_weight; ++d) {
            counts[std::to_string(d)] = table.count_of_weight(d);
            text << d << ": " << table.count_of_weight(d) << '\n';
        }
        o.result = {{"generators", q}, {"max_weight", max_weight}, {"counts", counts}};
    } else {
        json listing = json::array();
        for (std::size_t i = 0; i < table.size(); ++i) {
            listing.push_back({{"index", i}, {"weight", table[i].weight}, {"commutator", table.render(i)}});
            text << table.render(i) << '\n';
        }
        o.result = {{"generators", q}, {"max_weight", max_weight}, {"basis", listing}};
    }
    o.text = text.str();
    if (!o.text.empty()) o.text.pop_back();
    return o;
}

Outcome cmd_multiplier(unsigned n, unsigned c, const std::vector<Order>& orders, const std::string& method,
                       const RunConfig& cfg) {
    Outcome o;
    const ProductSpec spec{n, orders};
    const auto verdict = validate_spec(spec, c);
    o.result["class"] = n;
    o.result["c"] = c;
    o.result["orders"] = orders;
    o.result["validation"] = to_json(verdict);
    if (!verdict.ok()) {
        if (!cfg.force) {
            o.code = kPreconditionFailure;
            o.error = "prime condition violated: " + verdict.summary();
            return o;
        }
        o.warnings.push_back(kForceWarning);
        o.result["outside_hypotheses"] = true;
    }

    json structures = json::object();
    std::vector<std::pair<std::string, AbelianStructure>> computed;
    json notes = json::array();
    std::ostringstream text;

    auto record = [&](const std::string& name, const AbelianStructure& g) {
        structures[name] = to_json(g);
        computed.emplace_back(name, g);
        text << (method == "all" ? name + ": " : "") << g.to_text() << '\n';
    };

    if (method == "general" || method == "all")
        record("general", multiplier_general(spec, c, {cfg.basis_cap, cfg.force}));

    if (method == "closed" || method == "all") {
        const auto chain = as_divisibility_chain(orders);
        if (chain) {
            record("closed", multiplier_closed_form(chain->first, chain->second, n, c, cfg.force));
        } else if (method == "closed") {
            o.code = kPreconditionFailure;
            o.error = "closed form needs the finite orders to form a divisibility chain";
            return o;
        } else {
            notes.push_back("closed form skipped: finite orders do not form a divisibility chain");
        }
    }

    if (method == "two-factor" || method == "all") {
        const bool applicable = orders.size() == 2 && orders[0] != 0 && orders[1] != 0;
        if (applicable) {
            record("two-factor", multiplier_two_factor(orders[0], orders[1], n, c, cfg.force));
        } else if (method == "two-factor") {
            o.code = kPreconditionFailure;
            o.error = "two-factor form needs exactly two finite orders";
            return o;
        } else {
            notes.push_back("two-factor form skipped: needs exactly two finite orders");
        }
    }

    o.result["structures"] = structures;
    if (!notes.empty()) o.result["notes"] = notes;
    if (method == "all") {
        bool agree = true;
        for (const auto& [name, g] : computed) agree = agree && g == computed.front().second;
        o.result["agree"] = agree;
        text << "agreement: " << (agree ? "yes" : "NO") << '\n';
        for (const auto& note : notes) text << "note: " << note.get<std::string>() << '\n';
        if (!agree) {
            o.code = kMismatch;
            o.error = "computation paths disagree";
        }
    }
    o.text = text.str();
    if (!o.text.empty()) o.text.pop_back();
    return o;
}

EngineOptions engine_options(const RunConfig& cfg) { return {cfg.force, cfg.basis_cap, cfg.subgroup_cap}; }

Outcome cmd_normal_form(unsigned n, const std::vector<Order>& orders, const std::string& word_text,
                        const RunConfig& cfg) {
    Outcome o;
    if (cfg.force) o.warnings.push_back(kForceWarning);
    const auto ctx = GroupContext::build({n, orders}, engine_options(cfg));
    const auto word = parse_word(word_text);
    const auto g = ctx.collect(word);
    json basis = json::array();
    for (std::size_t i = 0; i < ctx.basis().size(); ++i)
        basis.push_back({{"commutator", ctx.basis().render(i, 'g')}, {"modulus", ctx.moduli()[i]}});
    o.result = {{"class", n},
                {"orders", orders},
                {"word", render(word)},
                {"normal_form", ctx.render(g)},
                {"exponents", g.exponents()},
                {"basis", basis}};
    o.text = ctx.render(g);
    return o;
}

Outcome cmd_verify(unsigned n, unsigned c, const std::vector<Order>& orders, const RunConfig& cfg) {
    Outcome o;
    if (cfg.force) o.warnings.push_back(kForceWarning);
    const auto report = verify_multiplier({n, orders}, c, engine_options(cfg));
    o.result = to_json(report);
    o.text = std::string(report.match ? "match" : "MISMATCH") + ": " + report.predicted.to_text() + " (gamma_" +
             std::to_string(report.gamma_index) + " of the class-" + std::to_string(report.ambient_class) +
             " product, " + std::to_string(report.subgroup_order) + " elements)";
    if (!report.match) {
        o.code = kMismatch;
        o.error = "oracle fingerprint does not match the predicted structure";
    }
    return o;
}

// Random divisibility chain r_1, ..., r_t built from primes above the bound.
std::vector<Order> random_chain(std::mt19937_64& rng, std::size_t t, unsigned bound) {
    std::vector<std::uint64_t> primes;
    for (auto p : primes_up_to(40))
        if (p > bound) primes.push_back(p);
    std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
    std::uniform_int_distribution<int> coin(0, 2);
    std::vector<Order> chain(t);
    Order value = primes[pick(rng)];
    for (std::size_t j = t; j-- > 0;) {
        chain[j] = value;
        if (coin(rng) != 0 && value < 100'000) value *= primes[pick(rng)];
    }
    return chain;
}

Outcome cmd_crosscheck(std::size_t trials, const RunConfig& cfg) {
    Outcome o;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<unsigned> small(1, 4);
    std::uniform_int_distribution<std::size_t> infinite(0, 2);
    std::uniform_int_distribution<std::size_t> finite(0, 3);
    std::size_t failures = 0;
    json failed = json::array();
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const unsigned n = small(rng);
        const unsigned c = small(rng);
        std::size_t m = infinite(rng);
        const std::size_t t = finite(rng);
        if (m + t == 0) m = 1;
        const auto chain = random_chain(rng, t, n + c);
        std::vector<Order> orders(m, 0);
        orders.insert(orders.end(), chain.begin(), chain.end());
        const auto general = multiplier_general({n, orders}, c, {cfg.basis_cap, false});
        const auto closed = multiplier_closed_form(m, chain, n, c);
        if (!(general == closed)) {
            ++failures;
            failed.push_back({{"class", n}, {"c", c}, {"orders", orders}});
        }
    }
    o.result = {{"seed", cfg.seed}, {"trials", trials}, {"failures", failures}, {"failed", failed}};
    o.text = std::to_string(trials - failures) + "/" + std::to_string(trials) + " specs agree (seed " +
             std::to_string(cfg.seed) + ")";
    if (failures > 0) {
        o.code = kMismatch;
        o.error = "general and closed-form paths disagree";
    }
    return o;
}

void emit(std::ostream& out, std::ostream& err, const RunConfig& cfg, const Outcome& o) {
    if (cfg.format == "json") {
        json envelope{{"ok", o.code == kSuccess},
                      {"result", o.result},
                      {"warnings", o.warnings},
                      {"error", o.error.empty() ? json(nullptr) : json(o.error)}};
        out << envelope.dump(2) << '\n';
        return;
    }
    for (const auto& w : o.warnings) err << "warning: " << w << '\n';
    if (!o.text.empty()) out << o.text << '\n';
    if (!o.error.empty()) err << "error: " << o.error << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nilpotent multipliers of nilpotent products of cyclic groups"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--basis-cap", cfg.basis_cap, "Maximum number of basic commutators to enumerate")
        ->envname("NILMULT_BASIS_CAP")
        ->check(CLI::PositiveNumber);
    app.add_option("--subgroup-cap", cfg.subgroup_cap, "Maximum subgroup size for the oracle")
        ->envname("NILMULT_SUBGROUP_CAP")
        ->check(CLI::PositiveNumber);
    app.add_flag("--force", cfg.force, "Bypass hypothesis validation (results are then unverified)");
    app.add_option("--seed", cfg.seed, "Random seed for crosscheck");

    unsigned weight = 1, max_weight = 1, n = 2, c = 1;
    std::uint64_t generators = 0;
    std::size_t trials = 200;
    bool count_only = false;
    std::string orders_text, method = "general", word;

    auto* witt = app.add_subcommand("witt", "Number of basic commutators of a given weight (Witt formula)");
    witt->add_option("--weight", weight)->required()->check(CLI::PositiveNumber);
    witt->add_option("--generators", generators)->required();

    auto* hall = app.add_subcommand("hall", "List Hall basic commutators");
    hall->add_option("--generators", generators)->required();
    hall->add_option("--max-weight", max_weight)->required()->check(CLI::PositiveNumber);
    hall->add_flag("--count-only", count_only, "Print per-weight counts instead of the listing");

    auto* mult = app.add_subcommand("multiplier", "c-nilpotent multiplier of the class-n nilpotent product");
    mult->add_option("--class", n)->required()->check(CLI::PositiveNumber);
    mult->add_option("--c", c)->required()->check(CLI::PositiveNumber);
    mult->add_option("--orders", orders_text, "Comma-separated cyclic orders, 0 = infinite")->required();
    mult->add_option("--method", method)->check(CLI::IsMember({"general", "closed", "two-factor", "all"}));

    auto* nf = app.add_subcommand("normal-form", "Collected normal form of a generator word");
    nf->add_option("--class", n)->required()->check(CLI::PositiveNumber);
    nf->add_option("--orders", orders_text)->required();
    nf->add_option("--word", word, "e.g. \"g1 g2 g1^-1 g2^-1\"")->required();

    auto* verify = app.add_subcommand("verify", "Check the multiplier against brute-force group arithmetic");
    verify->add_option("--class", n)->required()->check(CLI::PositiveNumber);
    verify->add_option("--c", c)->required()->check(CLI::PositiveNumber);
    verify->add_option("--orders", orders_text)->required();

    auto* cross = app.add_subcommand("crosscheck", "Randomized general-vs-closed-form agreement run");
    cross->add_option("--trials", trials)->check(CLI::PositiveNumber);

    for (auto* sub : {witt, hall, mult, nf, verify, cross}) sub->fallthrough();

    std::vector<std::string> argv_storage{"nilmult"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kPreconditionFailure;
    }

    Outcome outcome;
    try {
        if (witt->parsed())
            outcome = cmd_witt(weight, generators);
        else if (hall->parsed())
            outcome = cmd_hall(generators, max_weight, count_only, cfg);
        else if (mult->parsed())
            outcome = cmd_multiplier(n, c, parse_orders(orders_text), method, cfg);
        else if (nf->parsed())
            outcome = cmd_normal_form(n, parse_orders(orders_text), word, cfg);
        else if (verify->parsed())
            outcome = cmd_verify(n, c, parse_orders(orders_text), cfg);
        else
            outcome = cmd_crosscheck(trials, cfg);
    } catch (const SizeError& e) {
        outcome.code = kResourceCap;
        outcome.error = e.what();
    } catch (const UnsupportedError& e) {
        outcome.code = kPreconditionFailure;
        outcome.error = std::string("unsupported: ") + e.what();
    } catch (const PreconditionError& e) {
        outcome.code = kPreconditionFailure;
        outcome.error = e.what();
    } catch (const DomainError& e) {
        outcome.code = kPreconditionFailure;
        outcome.error = e.what();
    }
    if (cfg.force && outcome.warnings.empty() && outcome.code == kSuccess) outcome.warnings.push_back(kForceWarning);
    emit(out, err, cfg, outcome);
    return outcome.code;
}

}  // namespace nilmult::cli
