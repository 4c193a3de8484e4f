#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "smallparts/forms.hpp"
#include "smallparts/generators.hpp"
#include "smallparts/hecke.hpp"
#include "smallparts/number_theory.hpp"
#include "smallparts/qseries.hpp"
#include "smallparts/verify.hpp"

namespace py = pybind11;
using namespace smallparts;

namespace {

py::object fraction_type() { return py::module_::import("fractions").attr("Fraction"); }

py::object to_fraction(const Rational& r) {
  return fraction_type()(py::int_(py::str(r.get_num().get_str())), py::int_(py::str(r.get_den().get_str())));
}

Rational from_python(const py::handle& value) {
  const py::object frac = fraction_type()(value);
  Rational r(Integer(py::str(frac.attr("numerator")).cast<std::string>()),
             Integer(py::str(frac.attr("denominator")).cast<std::string>()));
  r.canonicalize();
  return r;
}

FormName form_or_throw(const std::string& name) {
  const auto f = parse_form_name(name);
  if (!f) throw Error(ErrorKind::InvalidArgument, "unknown form '" + name + "'");
  return *f;
}

Statistic statistic_or_throw(const std::string& name) {
  const auto s = parse_statistic(name);
  if (!s) throw Error(ErrorKind::InvalidArgument, "unknown statistic '" + name + "'");
  return *s;
}

std::optional<std::int64_t> python_precision(std::int64_t p) {
  return p == QSeries::kExact ? std::nullopt : std::optional(p);
}

}  // namespace

PYBIND11_MODULE(_smallparts, m) {
  m.doc() = "Exact q-series, Hecke operators and congruence checks for smallest-parts functions";

  // Leaked on purpose: the translator may run during interpreter shutdown.
  static PyObject* error_type = PyErr_NewException("smallparts.SmallpartsError", PyExc_RuntimeError, nullptr);
  m.add_object("SmallpartsError", py::handle(error_type));
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      // args = (message, kind, index)
      const py::tuple args = py::make_tuple(e.what(), to_string(e.kind()), e.index());
      PyErr_SetObject(error_type, args.ptr());
    }
  });

  py::class_<QSeries>(m, "QSeries",
                      "Truncated Laurent series in q with rational coefficients. Exponents are exact "
                      "Fractions with denominator dividing 24.")
      .def_static("monomial",
                  [](const py::object& exponent, const py::object& coeff, std::optional<std::int64_t> q_precision) {
                    const Rational e = from_python(exponent) * QSeries::kUnit;
                    if (!is_integer(e)) throw Error(ErrorKind::NonIntegralExponent, "exponent not in (1/24)Z");
                    return QSeries::monomial(to_int64(e.get_num()), from_python(coeff),
                                             q_precision ? *q_precision * QSeries::kUnit : QSeries::kExact);
                  },
                  py::arg("exponent"), py::arg("coeff") = 1, py::arg("q_precision") = py::none())
      .def_static("from_json", &series_from_json)
      .def("to_json", &to_json)
      .def_property_readonly("precision", [](const QSeries& s) { return python_precision(s.precision()); },
                             "precision in 1/24 units, None for an exact series")
      .def_property_readonly("q_precision", [](const QSeries& s) { return python_precision(s.q_precision()); })
      .def("coeff", [](const QSeries& s, std::int64_t exponent) { return to_fraction(s.coeff_q(exponent)); },
           py::arg("exponent"), "coefficient of q^exponent for an integral exponent")
      .def("terms",
           [](const QSeries& s) {
             py::list out;
             for (const auto& t : s.terms())
               out.append(py::make_tuple(to_fraction(make_rational(to_integer(t.index), to_integer(QSeries::kUnit))),
                                         to_fraction(t.coeff)));
             return out;
           },
           "list of (exponent, coefficient) Fractions")
      .def("truncate", [](const QSeries& s, std::int64_t q) { return s.truncate(q * QSeries::kUnit); })
      .def("__len__", &QSeries::size)
      .def("__add__", &add)
      .def("__sub__", &sub)
      .def("__mul__", &mul)
      .def("__mul__", [](const QSeries& s, const py::object& c) { return scale(s, from_python(c)); })
      .def("__rmul__", [](const QSeries& s, const py::object& c) { return scale(s, from_python(c)); })
      .def("__neg__", &negate)
      .def("__pow__", [](const QSeries& s, std::int64_t k) { return pow(s, k); })
      .def("__eq__", [](const QSeries& a, const QSeries& b) { return a == b; })
      .def("__repr__", [](const QSeries& s) { return "QSeries(" + to_display_string(s) + ")"; });

  m.def("invert", [](const QSeries& s, std::optional<std::int64_t> q) {
    return invert(s, q ? *q * QSeries::kUnit : QSeries::kExact);
  }, py::arg("series"), py::arg("q_precision") = py::none());
  m.def("q_derivative", &q_derivative);
  m.def("dilate", &dilate);
  m.def("rescale_exponents", &rescale_exponents);
  m.def("restrict_progression", &restrict_progression);
  m.def("reduce_mod", &reduce_mod);
  m.def("agree", &agree);

  m.def("kronecker", &kronecker);
  m.def("delta", &delta);
  m.def("hurwitz_class_number", [](std::int64_t n) { return to_fraction(hurwitz_class_number(n)); });
  m.def("sturm_bound", [](const py::object& weight, std::int64_t level) {
    const Rational w2 = from_python(weight) * 2;
    if (!is_integer(w2)) throw Error(ErrorKind::InvalidArgument, "weight must be a multiple of 1/2");
    return sturm_bound(to_int64(w2.get_num()), level);
  }, py::arg("weight"), py::arg("level"));
  m.def("residue_mod", [](const py::object& x, std::int64_t ell, int power) {
    return py::int_(py::str(residue_mod(from_python(x), ell, power).get_str()));
  });

  m.def("statistic", [](const std::string& name, std::int64_t q_precision) {
    return statistic_series(statistic_or_throw(name), q_precision);
  }, py::arg("name"), py::arg("q_precision"), "generating function of p, pbar, spt, sptbar1, m2spt or podd");
  m.def("oracle_count", [](const std::string& name, std::int64_t n, std::int64_t ceiling) {
    return py::int_(py::str(enumerate_oracle(statistic_or_throw(name), n, ceiling).get_str()));
  }, py::arg("name"), py::arg("n"), py::arg("ceiling") = 60, "count by exhaustive enumeration");

  m.def("form_names", [] {
    std::vector<std::string> out;
    for (FormName f : kAllForms) out.emplace_back(to_string(f));
    return out;
  });

  py::class_<FormBuilder>(m, "FormBuilder", "Builds and memoizes named forms")
      .def(py::init([](std::optional<std::string> cache_dir, bool self_check) {
             BuilderOptions o;
             if (cache_dir) o.cache_dir = *cache_dir;
             o.self_check = self_check;
             return std::make_unique<FormBuilder>(o);
           }),
           py::arg("cache_dir") = py::none(), py::arg("self_check") = true)
      .def("form",
           [](FormBuilder& b, const std::string& name, std::int64_t q_precision, std::optional<std::int64_t> ell,
              std::optional<int> power) {
             std::optional<FormParams> params;
             if (ell || power) params = FormParams{ell.value_or(5), power.value_or(1)};
             py::gil_scoped_release release;
             return b.build(form_or_throw(name), params, q_precision).series;
           },
           py::arg("name"), py::arg("q_precision"), py::arg("ell") = py::none(), py::arg("m") = py::none())
      .def("statistic", [](FormBuilder& b, const std::string& name, std::int64_t q_precision) {
        py::gil_scoped_release release;
        return b.statistic(statistic_or_throw(name), q_precision);
      });

  m.def("hecke",
        [](const QSeries& source, std::int64_t ell, int power, std::int64_t character,
           std::optional<std::int64_t> q_precision) {
          HeckeSpec{ell, power, Character{character}}.validate();
          HeckeTriple triple(source, ell, Character{character});
          return apply_T_power(triple, power, q_precision);
        },
        py::arg("series"), py::arg("ell"), py::arg("m") = 1, py::arg("character") = 1,
        py::arg("q_precision") = py::none(), "F | T(ell^{2m}) with the character (character/.)");
  m.def("hecke_combination",
        [](const QSeries& source, std::int64_t ell, int power, std::int64_t character,
           std::optional<std::int64_t> q_precision) {
          HeckeTriple triple(source, ell, Character{character});
          return build_F_m(triple, power, q_precision);
        },
        py::arg("series"), py::arg("ell"), py::arg("m") = 1, py::arg("character") = 1,
        py::arg("q_precision") = py::none(), "F | T(ell^{2m}) - chi(ell) F | T(ell^{2m-2})");

  m.def("suite_claim_ids", [](const std::string& suite, std::optional<std::int64_t> ell, std::optional<int> power) {
    const auto s = parse_suite(suite);
    if (!s) throw Error(ErrorKind::InvalidArgument, "unknown suite '" + suite + "'");
    std::vector<std::string> out;
    for (const auto& c : suite_claims(*s, SuiteFilter{ell, power, std::nullopt})) out.push_back(c.id);
    return out;
  }, py::arg("suite"), py::arg("ell") = py::none(), py::arg("m") = py::none());

  m.def("verify_json",
        [](const std::string& suite, std::optional<std::int64_t> ell, std::optional<int> power,
           std::optional<std::pair<std::int64_t, std::int64_t>> range, int jobs, bool metadata) {
          const auto s = parse_suite(suite);
          if (!s) throw Error(ErrorKind::InvalidArgument, "unknown suite '" + suite + "'");
          std::optional<IndexRange> r;
          if (range) r = IndexRange{range->first, range->second};
          py::gil_scoped_release release;
          FormBuilder builder;
          return reports_to_json(run_claims(suite_claims(*s, SuiteFilter{ell, power, r}), builder, jobs), metadata);
        },
        py::arg("suite") = "paper-all", py::arg("ell") = py::none(), py::arg("m") = py::none(),
        py::arg("range") = py::none(), py::arg("jobs") = 1, py::arg("metadata") = false,
        "runs a verification suite and returns the JSON report");
}
