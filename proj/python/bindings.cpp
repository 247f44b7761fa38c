#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include "lorentz/construct.hpp"
#include "lorentz/demo.hpp"
#include "lorentz/embedding.hpp"
#include "lorentz/io.hpp"
#include "lorentz/rearrange.hpp"

namespace py = pybind11;
using namespace lorentz;

namespace {

py::object end_or_none(DivergentEnd end) {
  if (end == DivergentEnd::none) return py::none();
  return py::str(to_string(end));
}

// Divergent values come back as inf with the end in "divergent".
py::dict functional_dict(const FunctionalValue& v) {
  py::list parts;
  for (const Contribution& c : v.breakdown) {
    parts.append(py::make_tuple(c.label, c.lo, c.hi, c.value.finite() ? c.value.value : kInf));
  }
  py::dict d;
  d["value"] = v.finite() ? v.value : kInf;
  d["divergent"] = end_or_none(v.divergent);
  d["breakdown"] = parts;
  return d;
}

StepFunction as_step(const FunctionDocument& doc) {
  if (const auto* f = std::get_if<StepFunction>(&doc)) return *f;
  throw InputError("expected a step document");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lorentz functionals, Orlicz-type modulars and the admissible-Psi construction";

  py::register_exception<RangeError>(m, "RangeError", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  py::class_<Exponents>(m, "Exponents")
      .def(py::init(&make_exponents), py::arg("p"), py::arg("r"))
      .def_readonly("p", &Exponents::p)
      .def_readonly("r", &Exponents::r)
      .def_readonly("q", &Exponents::q)
      .def("__repr__", [](const Exponents& e) {
        return "Exponents(p=" + format_number(e.p) + ", r=" + format_number(e.r) +
               ", q=" + format_number(e.q) + ")";
      });

  py::class_<StepFunction>(m, "StepFunction")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("breakpoints"),
           py::arg("values"))
      .def_property_readonly("breakpoints", &StepFunction::breakpoints)
      .def_property_readonly("values", &StepFunction::values)
      .def("__call__", &StepFunction::eval)
      .def("__len__", &StepFunction::size)
      .def(py::self == py::self);

  py::class_<TailedDecreasingFunction>(m, "TailedDecreasingFunction")
      .def("__call__", &TailedDecreasingFunction::eval)
      .def("invert", &TailedDecreasingFunction::invert)
      .def("knots", &TailedDecreasingFunction::knots);

  py::class_<OrliczFunction>(m, "OrliczFunction")
      .def_static("power", &OrliczFunction::power, py::arg("coeff"), py::arg("exponent"))
      .def_static("two_power", &OrliczFunction::two_power, py::arg("p"), py::arg("eps"))
      .def_static("piecewise_power",
                  [](std::vector<double> breaks, const std::vector<std::pair<double, double>>& pieces) {
                    std::vector<PowerPiece> pp;
                    for (const auto& [c, e] : pieces) pp.push_back({c, e});
                    return OrliczFunction::piecewise_power(std::move(breaks), std::move(pp));
                  },
                  py::arg("breaks"), py::arg("pieces"), "pieces are (coeff, exponent) pairs")
      .def("__call__", &OrliczFunction::eval)
      .def("log_eval", py::overload_cast<double>(&OrliczFunction::log_eval, py::const_))
      .def_property_readonly("kind", [](const OrliczFunction& psi) {
        static constexpr const char* names[] = {"piecewise_power", "constructed", "convexified"};
        return names[psi.representation().index()];
      });

  m.def("rearrange",
        [](const std::vector<double>& values, const std::vector<double>& measures) {
          if (values.size() != measures.size()) throw InputError("values and measures differ in length");
          std::vector<WeightedSample> s;
          for (std::size_t i = 0; i < values.size(); ++i) s.push_back({values[i], measures[i]});
          return rearrange_samples(s);
        },
        py::arg("values"), py::arg("measures"), "Nonincreasing rearrangement of weighted samples.");

  m.def("lorentz_functional",
        [](const StepFunction& f, const Exponents& e) { return functional_dict(lorentz_functional(f, e)); });
  m.def("orlicz_modular", [](const OrliczFunction& psi, const StepFunction& f) {
    return functional_dict(orlicz_modular(psi, f));
  });
  m.def("condition3_integral", [](const OrliczFunction& psi, const Exponents& e) {
    return functional_dict(condition3_integral(psi, e));
  });
  m.def("embedding_constant", &embedding_constant);

  m.def("verify_embedding", [](const StepFunction& f, const OrliczFunction& psi, const Exponents& e) {
    const EmbeddingReport r = verify_embedding(f, psi, e);
    py::list links;
    for (const ChainLink& l : r.links) links.append(py::make_tuple(l.name, l.log_lhs, l.log_rhs, l.holds));
    py::dict d;
    d["J"] = r.J;
    d["K"] = functional_dict(r.K);
    d["M"] = functional_dict(r.M);
    d["c"] = r.c;
    d["bound"] = r.bound;
    d["links"] = links;
    d["holds"] = r.holds;
    d["hypothesis_failed"] = r.hypothesis_failed;
    return d;
  });

  m.def("construct_psi",
        [](const StepFunction& f, const Exponents& e, int pad) {
          const ConstructionResult res = construct_psi(f, e, pad);
          py::list checks;
          for (const Diagnostic& d : res.diagnostics) {
            checks.append(py::make_tuple(d.name, d.value, d.limit, d.passed));
          }
          py::dict d;
          d["psi"] = res.psi;
          d["g"] = res.g;
          d["J_f"] = res.J_f;
          d["J_g"] = res.J_g;
          d["K"] = functional_dict(res.K);
          d["M_f"] = functional_dict(res.M_f);
          d["M_g"] = functional_dict(res.M_g);
          d["identity_K_residual"] = res.identity_K_residual;
          d["identity_M_residual"] = res.identity_M_residual;
          d["checks"] = checks;
          d["all_passed"] = res.all_passed();
          d["document"] = serialize(ConstructedPsiDoc{e, res.g});
          return d;
        },
        py::arg("f"), py::arg("exponents"), py::arg("pad") = 4);

  m.def("convexify", &convexify);

  m.def("counterexample_demo",
        [](double p, std::vector<double> qs, std::vector<double> eps) {
          const CounterexampleReport r = counterexample_demo(p, std::move(qs), std::move(eps));
          py::list rows;
          for (const auto& row : r.rows) {
            rows.append(py::make_tuple(row.eps, row.p_integral, row.p_exact, row.q_integrals));
          }
          py::dict d;
          d["rows"] = rows;
          d["p_differences_shrink"] = r.p_differences_shrink;
          d["q_increasing"] = r.q_increasing;
          return d;
        },
        py::arg("p"), py::arg("qs"), py::arg("eps"));

  m.def("load_psi", [](const std::string& text) { return to_psi(parse_document(text)); },
        "Psi from a JSON document string.");
  m.def("load_step", [](const std::string& text) { return as_step(parse_document(text)); });
  m.def("dump_step", [](const StepFunction& f) { return serialize(f); });
}
