#include <memory>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "knotfert/codes.hpp"
#include "knotfert/diagram.hpp"
#include "knotfert/error.hpp"
#include "knotfert/fertility.hpp"
#include "knotfert/homfly.hpp"
#include "knotfert/knotbase.hpp"
#include "knotfert/report.hpp"

namespace py = pybind11;
using namespace knotfert;

namespace {

py::object to_py(const nlohmann::ordered_json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

// Owns everything the fertility engine refers to.
struct Session {
  std::shared_ptr<const KnotBase> base;
  std::unique_ptr<HomflyEngine> homfly;
  std::unique_ptr<FertilityEngine> engine;

  Session(std::shared_ptr<const KnotBase> b, FertilityOptions o, int homfly_ceiling)
      : base(std::move(b)),
        homfly(std::make_unique<HomflyEngine>(HomflyOptions{homfly_ceiling, true, true})),
        engine(std::make_unique<FertilityEngine>(*base, *homfly, o)) {}

  template <class F>
  py::object run(F&& f) {
    nlohmann::ordered_json out;
    {
      py::gil_scoped_release release;
      out = f(*engine);
    }
    return to_py(out);
  }
};

}  // namespace

PYBIND11_MODULE(_knotfert, m) {
  m.doc() = "Shadows, HOMFLY polynomials and fertility of knots.";

  // Owned by the module for the life of the process.
  static PyObject* error_type = PyErr_NewException("knotfert.KnotfertError", PyExc_RuntimeError, nullptr);
  m.attr("KnotfertError") = py::handle(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string kind(to_string(e.kind()));
      py::object exc = py::handle(error_type)(kind + ": " + e.what());
      py::setattr(exc, "kind", py::str(kind));
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  py::class_<Shadow>(m, "Shadow")
      .def(py::init([](const std::string& code) { return parse_shadow(code); }), py::arg("code"))
      .def_property_readonly("crossings", &Shadow::crossings)
      .def_property_readonly("word", [](const Shadow& s) { return s.word().letters(); })
      .def_property_readonly("marks",
                             [](const Shadow& s) { return std::vector<int>(s.marks().begin(), s.marks().end()); })
      .def("canonical_form", [](const Shadow& s, bool reflection) { return canonical_form(s, reflection); },
           py::arg("quotient_reflection") = false)
      .def("reflected", &Shadow::reflected)
      .def("stats", [](const Shadow& s) { return to_py(to_json(stats_shadow(s))); })
      .def("diagram", [](const Shadow& s, std::uint64_t bits) { return assign(s, bits); }, py::arg("bits"))
      .def("__eq__", [](const Shadow& a, const Shadow& b) { return a == b; })
      .def("__str__", [](const Shadow& s) { return shadow_code(s); })
      .def("__repr__", [](const Shadow& s) { return "Shadow('" + shadow_code(s) + "')"; });

  m.def("is_realizable", [](const std::vector<int>& letters) {
    return is_realizable(DoubleOccurrenceWord::from_letters(letters));
  });

  m.def(
      "enumerate_shadows",
      [](int n, bool allow_reducible, bool quotient_reflection, int threads) {
        EnumerateOptions o;
        o.allow_reducible = allow_reducible;
        o.quotient_reflection = quotient_reflection;
        o.threads = threads;
        py::gil_scoped_release release;
        return enumerate_shadows(n, o);
      },
      py::arg("n"), py::arg("allow_reducible") = true, py::arg("quotient_reflection") = false,
      py::arg("threads") = 1);

  py::class_<Diagram>(m, "Diagram")
      .def(py::init([](const std::string& code) { return parse_diagram(code); }), py::arg("code"))
      .def_property_readonly("crossings", &Diagram::crossings)
      .def_property_readonly("components", &Diagram::component_count)
      .def_property_readonly("signs", &Diagram::signs)
      .def("stats", [](const Diagram& d) { return to_py(to_json(stats(d))); })
      .def("mirror", [](const Diagram& d) { return mirror(d); })
      .def("simplify", [](const Diagram& d) { return simplify(d); })
      .def("shadow", [](const Diagram& d) { return shadow_of(d); })
      .def("pd", [](const Diagram& d) { return to_pd(d); })
      .def("code", [](const Diagram& d) { return to_code_string(d); })
      .def("key", [](const Diagram& d) { return diagram_key(d); })
      .def(
          "homfly",
          [](const Diagram& d, bool serialized) {
            const Laurent2 p = homfly(d);
            return serialized ? p.serialize() : p.to_string();
          },
          py::arg("serialized") = false)
      .def("__eq__", [](const Diagram& a, const Diagram& b) { return a == b; })
      .def("__repr__", [](const Diagram& d) { return "Diagram('" + to_pd(d) + "')"; });

  py::class_<KnotBase, std::shared_ptr<KnotBase>>(m, "Table")
      .def(py::init([](const std::string& path) { return std::make_shared<KnotBase>(KnotBase::load(path)); }),
           py::arg("path"))
      .def_static("parse",
                  [](const std::string& text) { return std::make_shared<KnotBase>(KnotBase::parse(text)); })
      .def("__len__", &KnotBase::size)
      .def_property_readonly("complete_through", &KnotBase::complete_through)
      .def_property_readonly("names", [](const KnotBase& b) {
        std::vector<std::string> out;
        for (const auto& r : b.records()) out.push_back(r.name);
        return out;
      })
      .def("homfly", [](const KnotBase& b, const std::string& name) { return b.at(name).homfly.to_string(); })
      .def("identify", [](const KnotBase& b, const Diagram& d) { return b.names(b.identify(d).matches); })
      .def("identify_report", [](const KnotBase& b, const Diagram& d, const std::string& input) {
        return to_py(identify_json(input, b.identify(d), b));
      }, py::arg("diagram"), py::arg("input") = "");

  py::class_<Session>(m, "Fertility")
      .def(py::init([](std::shared_ptr<KnotBase> base, int threads, bool allow_reducible,
                       bool quotient_reflection, bool include_unknot_target, int crossing_ceiling,
                       int homfly_ceiling) {
             FertilityOptions o;
             o.threads = threads;
             o.allow_reducible = allow_reducible;
             o.quotient_reflection = quotient_reflection;
             o.include_unknot_target = include_unknot_target;
             o.crossing_ceiling = crossing_ceiling;
             return std::make_unique<Session>(std::move(base), o, homfly_ceiling);
           }),
           py::arg("table"), py::arg("threads") = 1, py::arg("allow_reducible") = true,
           py::arg("quotient_reflection") = true, py::arg("include_unknot_target") = true,
           py::arg("crossing_ceiling") = 7, py::arg("homfly_ceiling") = 16)
      .def("census",
           [](Session& s, const Shadow& shadow) {
             return s.run([&](FertilityEngine& e) { return to_json(e.support_census(shadow), *s.base); });
           })
      .def("is_fertile",
           [](Session& s, const std::string& knot) {
             return s.run([&](FertilityEngine& e) { return to_json(e.is_fertile(knot)); });
           })
      .def("is_mn_fertile",
           [](Session& s, const std::string& knot, int mm, int n) {
             return s.run([&](FertilityEngine& e) { return to_json(e.is_mn_fertile(knot, mm, n)); });
           },
           py::arg("knot"), py::arg("m"), py::arg("n"))
      .def("fertility_number",
           [](Session& s, const std::string& knot) {
             return s.run([&](FertilityEngine& e) { return to_json(e.fertility_number(knot)); });
           })
      .def("variation",
           [](Session& s, const std::string& knot) {
             return s.run([&](FertilityEngine& e) {
               return to_json(variation_stats(e.minimal_diagrams(knot), e.gc_interval(knot), true));
             });
           })
      .def("verify",
           [](Session& s, const std::string& knot, int n_max) {
             return s.run([&](FertilityEngine& e) {
               return to_json(verify_bounds(s.base->at(knot), *s.base, e.collect(knot, n_max)));
             });
           },
           py::arg("knot"), py::arg("n_max") = 7);
}
