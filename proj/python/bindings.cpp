#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vostokov/error.hpp"
#include "vostokov/oracles.hpp"
#include "vostokov/pairing.hpp"
#include "vostokov/shafarevich.hpp"
#include "vostokov/verify.hpp"

namespace py = pybind11;
using namespace vostokov;

namespace {

std::vector<FieldElement> parse_all(const FieldSpecPtr& K, const std::vector<std::string>& xs) {
  std::vector<FieldElement> out;
  for (const auto& x : xs) out.push_back(parse_element(x, K));
  return out;
}

// pybind11 holders cannot point to const objects
struct Field {
  FieldSpecPtr spec;
  operator const FieldSpecPtr&() const { return spec; }
};

py::dict plan_dict(const PrecisionPlan& p) {
  py::dict d;
  d["N"] = p.N;
  d["window"] = p.window;
  return d;
}

}  // namespace

PYBIND11_MODULE(_vostokov, m) {
  m.doc() = "Explicit reciprocity symbols for cyclotomic local fields";

  static py::exception<PrecisionError> precision_exc(m, "PrecisionError", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const PrecisionError& e) {
      py::set_error(precision_exc, e.what());
    } catch (const DomainError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.attr("SIGN") = kGlobalSign;
  m.attr("TUPLE_ORDER") = kTupleOrder;

  py::class_<Field>(m, "Field")
      .def(py::init([](unsigned p, unsigned mm, unsigned n, unsigned f, unsigned precision) {
             return Field{FieldSpec::cyclotomic(p, mm, n, f, precision)};
           }),
           py::arg("p"), py::arg("m") = 1, py::arg("n") = 1, py::arg("f") = 1,
           py::arg("precision") = 0)
      .def_property_readonly("p", [](const Field& F) { return F.spec->p(); })
      .def_property_readonly("m", [](const Field& F) { return F.spec->m(); })
      .def_property_readonly("n", [](const Field& F) { return F.spec->n(); })
      .def_property_readonly("f", [](const Field& F) { return F.spec->f(); })
      .def_property_readonly("e", [](const Field& F) { return F.spec->e(); })
      .def_property_readonly("modulus", [](const Field& F) { return F.spec->pm(); })
      .def_property_readonly("kind", [](const Field& F) { return F.spec->kind(); })
      .def("__repr__", [](const Field& F) { return F.spec->kind(); });

  m.def(
      "symbol",
      [](const Field& K, const std::vector<std::string>& args) {
        const SymbolExponent r = vostokov_exponent(parse_all(K, args));
        py::dict d;
        d["exponent"] = r.value;
        d["modulus"] = r.modulus;
        d["plan"] = plan_dict(r.plan);
        d["confirmed_plan"] = plan_dict(r.confirmed);
        d["attempts"] = r.attempts;
        d["sign"] = kGlobalSign;
        d["tuple_order"] = kTupleOrder;
        return d;
      },
      py::arg("field"), py::arg("args"), "pairing exponent of n+1 elements in the field grammar");

  m.def(
      "kummer",
      [](const Field& K, const std::string& a, const std::string& b) {
        return kummer_exponent(lift_element(parse_element(a, K)), lift_element(parse_element(b, K)));
      },
      py::arg("field"), py::arg("eps"), py::arg("eta"));
  m.def(
      "artin_hasse_zeta",
      [](const Field& K, const std::string& a) { return artin_hasse_zeta(parse_element(a, K)); },
      py::arg("field"), py::arg("eps"));
  m.def(
      "artin_hasse_pi",
      [](const Field& K, const std::string& a) { return artin_hasse_pi(parse_element(a, K)); },
      py::arg("field"), py::arg("eps"));
  m.def(
      "sen",
      [](const Field& K, const std::string& a, const std::string& b) {
        const FieldElement beta = parse_element(b, K);
        return sen_exponent(parse_element(a, K), beta, polynomial_of(beta),
                            polynomial_of(FieldElement::zeta(K)));
      },
      py::arg("field"), py::arg("alpha"), py::arg("beta"));
  m.def(
      "tame",
      [](const Field& K, const std::string& a, const std::string& b, std::uint64_t l) {
        return tame_symbol(parse_element(a, K), parse_element(b, K), l);
      },
      py::arg("field"), py::arg("a"), py::arg("b"), py::arg("l"));

  m.def(
      "orthogonality",
      [](const Field& K) {
        py::list out;
        for (const auto& e : verify_orthogonality(build_basis(K)).entries) {
          py::dict d;
          d["label"] = e.label;
          d["exponent"] = e.exponent;
          d["expected"] = e.expected;
          d["pass"] = e.pass;
          out.append(d);
        }
        return out;
      },
      py::arg("field"));
  m.def(
      "decompose",
      [](const Field& K, const std::string& a) {
        const FieldElement alpha = parse_element(a, K);
        const BasisDescription B = build_basis(K);
        const Decomposition dec = decompose(alpha, B);
        py::dict d;
        d["i"] = dec.i;
        d["b"] = dec.b;
        d["c"] = dec.c;
        d["certificate"] = dec.certificate.to_string();
        d["certificate_holds"] = certificate_holds(alpha, dec, B);
        return d;
      },
      py::arg("field"), py::arg("alpha"));

  m.def("suites", &suite_names);
  m.def(
      "verify",
      [](const std::string& suite, int trials, std::uint64_t seed) {
        SuiteOptions o;
        o.trials = trials;
        o.seed = seed;
        const SuiteReport r = run_suite(suite, o);
        py::dict d;
        d["suite"] = r.name;
        d["checks"] = r.checks;
        d["passed"] = r.passed();
        d["nonstabilized"] = r.nonstabilized;
        py::list fails;
        for (const auto& c : r.failures) {
          py::dict f;
          f["check"] = c.check;
          f["config"] = c.config;
          f["inputs"] = c.inputs;
          f["observed"] = c.observed;
          f["expected"] = c.expected;
          fails.append(f);
        }
        d["failures"] = fails;
        return d;
      },
      py::arg("suite"), py::arg("trials") = 50, py::arg("seed") = 1);
}
