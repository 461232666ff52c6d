#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "alphatrace/enumeration.hpp"
#include "alphatrace/errors.hpp"
#include "alphatrace/families.hpp"
#include "alphatrace/json_io.hpp"
#include "alphatrace/order.hpp"
#include "alphatrace/trace.hpp"

namespace py = pybind11;
using namespace alphatrace;

namespace {

using Coeffs = std::vector<std::pair<std::string, std::string>>;

Coeffs coeffs(const AlphaPoly& p) {
  Coeffs out;
  for (const auto& c : p.coeffs()) out.emplace_back(c.get_num().get_str(), c.get_den().get_str());
  return out;
}

FamilySpec spec_from(const std::string& name, std::size_t m, std::size_t g,
                     const std::vector<std::size_t>& extra) {
  if (name == "hyperpath") return family::Hyperpath{m};
  if (name == "hyperstar") return family::Hyperstar{m};
  if (name == "hypercycle") return family::Hypercycle{m};
  if (name == "cg-odot-s") return family::CycleWithStar{g, m};
  if (name == "cg-dot-p") return family::CycleWithPath{g, m};
  if (name == "fmk") return family::PathWithTwig{m};
  if (name == "starlike") return family::Starlike{extra};
  if (name == "c3-split") {
    if (extra.size() != 3) throw ParameterError("c3-split takes three pendant counts");
    return family::TriangleSplit{extra[0], extra[1], extra[2]};
  }
  throw ParameterError("unknown family '" + name + "'");
}

FamilyFilter filter_from(const std::string& cls, unsigned k, std::size_t m,
                         std::optional<std::size_t> girth, std::optional<std::size_t> diameter,
                         bool max_degree_two) {
  FamilyFilter f;
  if (cls == "hypertree") {
    f.family = FamilyClass::Hypertree;
  } else if (cls == "unicyclic") {
    f.family = FamilyClass::LinearUnicyclic;
  } else {
    throw ParameterError("class must be 'hypertree' or 'unicyclic'");
  }
  f.k = k;
  f.m = m;
  f.girth = girth;
  f.diameter = diameter;
  f.max_degree_two = max_degree_two;
  return f;
}

py::dict verdict_dict(const OrderVerdict& v) {
  py::dict d;
  d["relation"] = to_string(v.relation);
  d["first_diff_order"] = v.first_diff_order ? py::cast(*v.first_diff_order) : py::none();
  d["d_max"] = v.d_max;
  d["difference"] = rational_string(v.difference);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  static py::exception<ParameterError> parameter_error(mod, "ParameterError", PyExc_ValueError);
  static py::exception<PreconditionError> precondition_error(mod, "PreconditionError",
                                                             PyExc_ValueError);
  static py::exception<BudgetExceeded> budget_exceeded(mod, "BudgetExceeded", PyExc_RuntimeError);
  static py::exception<UnsupportedClosedForm> unsupported(mod, "UnsupportedClosedForm",
                                                          PyExc_ValueError);
  static py::exception<MethodMismatch> mismatch(mod, "MethodMismatch", PyExc_AssertionError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParameterError& e) {
      parameter_error(e.what());
    } catch (const PreconditionError& e) {
      precondition_error(e.what());
    } catch (const BudgetExceeded& e) {
      budget_exceeded(e.what());
    } catch (const UnsupportedClosedForm& e) {
      unsupported(e.what());
    } catch (const MethodMismatch& e) {
      mismatch(e.what());
    }
  });

  py::class_<Hypergraph>(mod, "Hypergraph")
      .def(py::init<unsigned, std::size_t, std::vector<Edge>, std::vector<unsigned>>(),
           py::arg("k"), py::arg("n"), py::arg("edges"), py::arg("mult") = std::vector<unsigned>{})
      .def_property_readonly("k", &Hypergraph::k)
      .def_property_readonly("n", &Hypergraph::n)
      .def_property_readonly("edges", &Hypergraph::edges)
      .def_property_readonly("multiplicities", &Hypergraph::multiplicities)
      .def_property_readonly("degrees", &Hypergraph::degrees)
      .def_property_readonly("m", &Hypergraph::total_edges)
      .def("canonical_form", [](const Hypergraph& h) { return canonical_form(h); })
      .def("classify", [](const Hypergraph& h) { return to_string(classify(h)); })
      .def("to_json", [](const Hypergraph& h) { return hypergraph_to_json(h).dump(); })
      .def_static("from_json", [](const std::string& text) {
        json j;
        try {
          j = json::parse(text);
        } catch (const json::exception& e) {
          throw ParameterError(e.what());
        }
        return hypergraph_from_json(j);
      })
      .def(py::self == py::self)
      .def("__repr__", [](const Hypergraph& h) {
        return "<Hypergraph k=" + std::to_string(h.k()) + " n=" + std::to_string(h.n()) +
               " m=" + std::to_string(h.total_edges()) + ">";
      });

  mod.def(
      "build_family",
      [](const std::string& name, unsigned k, std::size_t m, std::size_t g,
         const std::vector<std::size_t>& extra) {
        auto spec = spec_from(name, m, g, extra);
        return py::make_tuple(build_family(k, spec), family_name(spec));
      },
      py::arg("name"), py::arg("k"), py::arg("m") = 0, py::arg("g") = 0,
      py::arg("extra") = std::vector<std::size_t>{});

  mod.def(
      "trace",
      [](const Hypergraph& h, unsigned d, const std::string& method, unsigned threads) {
        TraceOptions opts;
        opts.threads = threads;
        if (method == "closed") return coeffs(trace_closed(h, d));
        if (method == "brute") return coeffs(trace_bruteforce(h, d, opts));
        if (method == "exhaustive") {
          opts.method = TraceOptions::Method::Exhaustive;
          return coeffs(trace_bruteforce(h, d, opts));
        }
        if (method == "auto")
          return coeffs(closed_form_available(h, d) ? trace_closed(h, d)
                                                    : trace_bruteforce(h, d, opts));
        throw ParameterError("method must be auto, closed, brute or exhaustive");
      },
      py::arg("h"), py::arg("d"), py::arg("method") = "auto", py::arg("threads") = 1);

  mod.def(
      "compare",
      [](const Hypergraph& a, const Hypergraph& b, const std::string& alpha,
         std::optional<unsigned> d_max) {
        return verdict_dict(compare_at_alpha(a, b, parse_rational(alpha), d_max));
      },
      py::arg("a"), py::arg("b"), py::arg("alpha") = "1/2", py::arg("d_max") = py::none());

  mod.def(
      "compare_symbolic",
      [](const Hypergraph& a, const Hypergraph& b, std::optional<unsigned> d_max) {
        return symbolic_to_json(compare_symbolic(a, b, d_max)).dump();
      },
      py::arg("a"), py::arg("b"), py::arg("d_max") = py::none());

  mod.def(
      "enumerate",
      [](const std::string& cls, unsigned k, std::size_t m, std::optional<std::size_t> girth,
         std::optional<std::size_t> diameter, bool max_degree_two) {
        return enumerate_family(filter_from(cls, k, m, girth, diameter, max_degree_two));
      },
      py::arg("cls"), py::arg("k"), py::arg("m"), py::arg("girth") = py::none(),
      py::arg("diameter") = py::none(), py::arg("max_degree_two") = false);

  mod.def(
      "sort_family",
      [](const std::vector<Hypergraph>& members, const std::string& alpha,
         std::optional<unsigned> d_max, unsigned threads) {
        TraceCache cache;
        SortedFamily s = sort_family(members, parse_rational(alpha), d_max, cache, threads);
        return py::make_tuple(s.order, s.tie_class);
      },
      py::arg("members"), py::arg("alpha") = "1/2", py::arg("d_max") = py::none(),
      py::arg("threads") = 1);

  mod.def(
      "verify",
      [](const std::string& theorem, unsigned k, std::size_t m, const std::string& alpha,
         std::optional<unsigned> d_max, unsigned threads) {
        TraceCache cache;
        return report_to_json(
                   verify_theorem(theorem, k, m, parse_rational(alpha), d_max, cache, threads))
            .dump();
      },
      py::arg("theorem"), py::arg("k"), py::arg("m"), py::arg("alpha") = "1/2",
      py::arg("d_max") = py::none(), py::arg("threads") = 1);

  mod.def("theorems", [] {
    std::vector<std::tuple<std::string, std::string, unsigned, std::string>> out;
    for (const auto& t : theorem_catalog()) out.emplace_back(t.id, t.alias, t.min_k, t.statement);
    return out;
  });
}
