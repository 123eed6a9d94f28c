#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "nilmult/engine.hpp"
#include "nilmult/errors.hpp"
#include "nilmult/hall_basis.hpp"
#include "nilmult/json_io.hpp"
#include "nilmult/multiplier.hpp"
#include "nilmult/numtheory.hpp"

namespace py = pybind11;
using namespace nilmult;

namespace {

py::object to_py(const BigInt& v) {
    return py::reinterpret_steal<py::object>(PyLong_FromString(v.str().c_str(), nullptr, 10));
}

py::object to_py(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "c-nilpotent multipliers of nilpotent products of cyclic groups";

    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<SizeError>(m, "SizeError", PyExc_RuntimeError);
    py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    m.def("mobius", &mobius, py::arg("e"));
    m.def("witt_chi", [](unsigned d, std::uint64_t q) { return to_py(witt_chi(d, q)); }, py::arg("d"), py::arg("q"));
    m.def("chi_partial_sum",
          [](unsigned base, unsigned span, std::uint64_t q) { return to_py(chi_partial_sum(base, span, q)); },
          py::arg("base"), py::arg("span"), py::arg("q"));
    m.def("gcd_zero_aware", [](const std::vector<Order>& v) { return gcd_zero_aware(v); }, py::arg("values"));

    m.def("hall_basis",
          [](std::size_t q, unsigned max_weight, std::size_t cap) {
              const auto t = enumerate_basis(q, max_weight, cap);
              std::vector<std::string> out;
              for (std::size_t i = 0; i < t.size(); ++i) out.push_back(t.render(i));
              return out;
          },
          py::arg("generators"), py::arg("max_weight"), py::arg("cap") = kDefaultBasisCap,
          "Hall basic commutators of weight <= max_weight in the canonical order.");
    m.def("count_involving_last", &count_involving_last, py::arg("q"), py::arg("lo"), py::arg("hi"),
          py::arg("cap") = kDefaultBasisCap);

    py::class_<AbelianStructure>(m, "AbelianStructure")
        .def_property_readonly("free_rank", [](const AbelianStructure& g) { return to_py(g.free_rank()); })
        .def_property_readonly("factors",
                               [](const AbelianStructure& g) {
                                   py::list out;
                                   for (const auto& f : g.display())
                                       out.append(py::make_tuple(f.modulus, to_py(f.multiplicity)));
                                   return out;
                               })
        .def_property_readonly("primary",
                               [](const AbelianStructure& g) {
                                   py::dict out;
                                   for (const auto& [power, count] : g.primary()) out[py::int_(power)] = to_py(count);
                                   return out;
                               })
        .def("to_json", [](const AbelianStructure& g) { return to_py(to_json(g)); })
        .def("__eq__", [](const AbelianStructure& a, const AbelianStructure& b) { return a == b; })
        .def("__str__", &AbelianStructure::to_text)
        .def("__repr__", [](const AbelianStructure& g) { return "AbelianStructure('" + g.to_text() + "')"; });

    m.def("validate_spec",
          [](unsigned n, const std::vector<Order>& orders, unsigned c) {
              return to_py(to_json(validate_spec({n, orders}, c)));
          },
          py::arg("n"), py::arg("orders"), py::arg("c"));
    m.def("multiplier_general",
          [](unsigned n, const std::vector<Order>& orders, unsigned c, bool force, std::size_t cap) {
              return multiplier_general({n, orders}, c, {cap, force});
          },
          py::arg("n"), py::arg("orders"), py::arg("c"), py::arg("force") = false,
          py::arg("basis_cap") = kDefaultBasisCap);
    m.def("multiplier_closed_form",
          [](std::size_t m_inf, const std::vector<Order>& rs, unsigned n, unsigned c, bool force) {
              return multiplier_closed_form(m_inf, rs, n, c, force);
          },
          py::arg("m"), py::arg("rs"), py::arg("n"), py::arg("c"), py::arg("force") = false);
    m.def("multiplier_two_factor", &multiplier_two_factor, py::arg("r"), py::arg("s"), py::arg("n"), py::arg("c"),
          py::arg("force") = false);

    py::class_<GroupContext>(m, "GroupContext")
        .def(py::init([](unsigned n, const std::vector<Order>& orders, bool force) {
                 return GroupContext::build({n, orders}, {.force = force});
             }),
             py::arg("n"), py::arg("orders"), py::arg("force") = false)
        .def_property_readonly("basis",
                               [](const GroupContext& ctx) {
                                   std::vector<std::string> out;
                                   for (std::size_t i = 0; i < ctx.basis().size(); ++i)
                                       out.push_back(ctx.basis().render(i, 'g'));
                                   return out;
                               })
        .def_property_readonly("moduli", &GroupContext::moduli)
        .def("collect", [](const GroupContext& ctx, const std::string& word) {
            return ctx.collect(parse_word(word)).exponents();
        })
        .def("multiply", [](const GroupContext& ctx, std::vector<std::int64_t> g, std::vector<std::int64_t> h) {
            return ctx.multiply(GroupElement(std::move(g)), GroupElement(std::move(h))).exponents();
        })
        .def("inverse", [](const GroupContext& ctx, std::vector<std::int64_t> g) {
            return ctx.inverse(GroupElement(std::move(g))).exponents();
        })
        .def("commutator", [](const GroupContext& ctx, std::vector<std::int64_t> g, std::vector<std::int64_t> h) {
            return ctx.commutator(GroupElement(std::move(g)), GroupElement(std::move(h))).exponents();
        })
        .def("render", [](const GroupContext& ctx, std::vector<std::int64_t> g) {
            return ctx.render(GroupElement(std::move(g)));
        });

    m.def("normal_form",
          [](unsigned n, const std::vector<Order>& orders, const std::string& word) {
              const auto ctx = GroupContext::build({n, orders});
              return ctx.render(ctx.collect(parse_word(word)));
          },
          py::arg("n"), py::arg("orders"), py::arg("word"));
    m.def("verify_multiplier",
          [](unsigned n, const std::vector<Order>& orders, unsigned c, std::size_t subgroup_cap) {
              return to_py(to_json(verify_multiplier({n, orders}, c, {.subgroup_cap = subgroup_cap})));
          },
          py::arg("n"), py::arg("orders"), py::arg("c"), py::arg("subgroup_cap") = kDefaultSubgroupCap);
}
