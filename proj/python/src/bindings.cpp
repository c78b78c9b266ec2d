#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cyclotome/charsums.hpp"
#include "cyclotome/construct.hpp"
#include "cyclotome/error.hpp"
#include "cyclotome/serialize.hpp"
#include "cyclotome/verify.hpp"

namespace py = pybind11;
namespace cy = cyclotome;

namespace {

// pybind11 holders cannot be pointers to const; the objects are never mutated.
using FieldPtr = std::shared_ptr<cy::FiniteField>;
using SchemeHolder = std::shared_ptr<cy::CyclotomicScheme>;

FieldPtr unconst(std::shared_ptr<const cy::FiniteField> p) { return std::const_pointer_cast<cy::FiniteField>(p); }
SchemeHolder unconst(cy::SchemePtr p) { return std::const_pointer_cast<cy::CyclotomicScheme>(p); }

py::dict report_dict(const cy::VerificationReport& r) {
  py::dict d;
  d["verdict"] = cy::verdict_name(r.verdict);
  d["method"] = cy::method_name(r.method);
  d["v"] = r.v;
  d["k"] = r.k;
  d["lambda"] = r.lambda;
  d["mu"] = r.mu;
  d["max_abs_deviation"] = r.max_abs_deviation;
  d["histogram_min"] = r.histogram_min;
  d["histogram_max"] = r.histogram_max;
  d["sign_pattern"] = r.sign_pattern;
  d["warnings"] = r.warnings;
  return d;
}

cy::Method parse_method(const std::string& name) {
  if (name == "brute") return cy::Method::BruteForce;
  if (name == "chars") return cy::Method::CharacterSums;
  if (name == "both") return cy::Method::Both;
  throw cy::Error(cy::Errc::InvalidInput, "method must be brute, chars or both");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cyclotomic difference sets over finite fields";
  m.attr("__version__") = cy::tool_version();
  m.attr("DEFAULT_BUDGET") = cy::kDefaultBudget;

  static py::exception<cy::Error> error(m, "CyclotomeError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const cy::Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("is_prime", &cy::is_prime);
  m.def("mult_order", &cy::mult_order, py::arg("a"), py::arg("n"));
  m.def("is_index_two", &cy::is_index_two, py::arg("p"), py::arg("N"));
  m.def("class_number", &cy::class_number, py::arg("p1"));
  m.def("digit_sum", &cy::digit_sum_s, py::arg("a"), py::arg("p"), py::arg("f"));

  py::class_<cy::CaseAParams>(m, "CaseAParams")
      .def_static("make", &cy::CaseAParams::make, py::arg("p1"), py::arg("m"), py::arg("p"))
      .def_readonly("p1", &cy::CaseAParams::p1)
      .def_readonly("m", &cy::CaseAParams::m)
      .def_readonly("p", &cy::CaseAParams::p)
      .def_readonly("f", &cy::CaseAParams::f)
      .def_readonly("pds", &cy::CaseAParams::pds_flag)
      .def_property_readonly("N", &cy::CaseAParams::N)
      .def("__repr__", [](const cy::CaseAParams& a) {
        return "CaseAParams(p1=" + std::to_string(a.p1) + ", m=" + std::to_string(a.m) + ", p=" + std::to_string(a.p) +
               ")";
      });
  py::class_<cy::CaseBParams>(m, "CaseBParams")
      .def_static("make", &cy::CaseBParams::make, py::arg("p1"), py::arg("p"))
      .def_readonly("p1", &cy::CaseBParams::p1)
      .def_readonly("p", &cy::CaseBParams::p)
      .def_readonly("h", &cy::CaseBParams::h)
      .def_readonly("f", &cy::CaseBParams::f)
      .def_property_readonly("N", &cy::CaseBParams::N)
      .def("__repr__", [](const cy::CaseBParams& b) {
        return "CaseBParams(p1=" + std::to_string(b.p1) + ", p=" + std::to_string(b.p) + ", h=" + std::to_string(b.h) +
               ")";
      });
  m.def("search_case_A", &cy::search_case_A, py::arg("p1_max"), py::arg("m_max"), py::arg("p_max"));
  m.def("search_case_B", &cy::search_case_B, py::arg("p1_max"), py::arg("p_max"));

  py::class_<cy::FiniteField, FieldPtr>(m, "FiniteField")
      .def_property_readonly("p", &cy::FiniteField::p)
      .def_property_readonly("degree", &cy::FiniteField::degree)
      .def_property_readonly("order", &cy::FiniteField::order)
      .def_property_readonly("modulus", &cy::FiniteField::modulus)
      .def_property_readonly("gamma", &cy::FiniteField::gamma)
      .def_property_readonly("orientation_flipped", &cy::FiniteField::orientation_flipped)
      .def("exp", &cy::FiniteField::exp)
      .def("dlog", &cy::FiniteField::dlog)
      .def("add", &cy::FiniteField::add)
      .def("sub", &cy::FiniteField::sub)
      .def("neg", &cy::FiniteField::neg)
      .def("mul", &cy::FiniteField::mul)
      .def("inv", &cy::FiniteField::inv)
      .def("pow", &cy::FiniteField::pow)
      .def("trace", &cy::FiniteField::trace)
      .def("element_order", &cy::FiniteField::element_order);
  m.def(
      "build_field",
      [](std::uint32_t p, unsigned f, std::uint64_t budget, std::uint64_t seed) {
        return std::make_shared<cy::FiniteField>(cy::build_field(p, f, budget, seed));
      },
      py::arg("p"), py::arg("f"), py::arg("budget") = cy::kDefaultBudget, py::arg("seed") = cy::kDefaultSeed);

  py::class_<cy::CyclotomicScheme, SchemeHolder>(m, "CyclotomicScheme")
      .def_property_readonly("field", [](const cy::CyclotomicScheme& s) { return unconst(s.field_ptr()); })
      .def_property_readonly("order", &cy::CyclotomicScheme::order)
      .def_property_readonly("class_size", &cy::CyclotomicScheme::class_size)
      .def("class_of", &cy::CyclotomicScheme::class_of)
      .def("minus_one_class", &cy::CyclotomicScheme::minus_one_class)
      .def_property_readonly("periods", [](const cy::CyclotomicScheme& s) {
        return std::vector<std::complex<double>>(s.periods().begin(), s.periods().end());
      })
      .def("gauss_sum", [](const cy::CyclotomicScheme& s, std::int64_t j) { return cy::gauss_sum(s, j).value; });
  m.def(
      "build_scheme", [](FieldPtr field, std::uint32_t N) { return unconst(cy::build_scheme(field, N)); },
      py::arg("field"), py::arg("N"));

  py::class_<cy::CandidateSet>(m, "CandidateSet")
      .def_property_readonly("scheme", [](const cy::CandidateSet& s) { return unconst(s.scheme_ptr()); })
      .def_property_readonly("index_set", [](const cy::CandidateSet& s) -> std::optional<std::vector<std::uint32_t>> {
        if (!s.index_set()) return std::nullopt;
        return s.index_set()->values();
      })
      .def_property_readonly("provenance", [](const cy::CandidateSet& s) { return cy::provenance_tag(s.provenance()); })
      .def("__len__", &cy::CandidateSet::size)
      .def("__contains__", &cy::CandidateSet::contains)
      .def("elements", &cy::CandidateSet::elements)
      .def("to_text", &cy::format_difference_set)
      .def("restricted_sums", [](const cy::CandidateSet& s) { return cy::restricted_sums(s.scheme(), s); });
  m.def(
      "union_of_classes",
      [](SchemeHolder scheme, std::vector<std::uint32_t> I) {
        const auto N = scheme->order();
        return cy::union_of_classes(std::move(scheme), cy::IndexSet(std::move(I), N));
      },
      py::arg("scheme"), py::arg("index_set"));
  m.def(
      "construct_case_A",
      [](std::uint64_t p1, unsigned mm, std::uint64_t p, std::vector<std::uint32_t> I, unsigned s,
         std::uint64_t budget, std::uint64_t seed) {
        const auto params = cy::CaseAParams::make(p1, mm, p);
        return cy::construct_case_A(params, s, cy::IndexSet(std::move(I), static_cast<std::uint32_t>(params.N())),
                                    budget, seed);
      },
      py::arg("p1"), py::arg("m"), py::arg("p"), py::arg("index_set"), py::arg("s") = 1,
      py::arg("budget") = cy::kDefaultBudget, py::arg("seed") = cy::kDefaultSeed);
  m.def(
      "construct_case_B",
      [](std::uint64_t p1, std::uint64_t p, std::uint64_t budget, std::uint64_t seed) {
        return cy::construct_case_B(cy::CaseBParams::make(p1, p), budget, seed);
      },
      py::arg("p1"), py::arg("p"), py::arg("budget") = cy::kDefaultBudget, py::arg("seed") = cy::kDefaultSeed);
  m.def(
      "random_transversal",
      [](std::uint64_t p1, unsigned mm, std::uint64_t seed) { return cy::random_transversal(p1, mm, seed).values(); },
      py::arg("p1"), py::arg("m"), py::arg("seed"));
  m.def(
      "load_text",
      [](const std::string& text, std::uint64_t budget) {
        auto loaded = cy::parse_difference_set(text, budget);
        return py::make_tuple(std::move(loaded.set), loaded.warnings);
      },
      py::arg("text"), py::arg("budget") = cy::kDefaultBudget);

  m.def(
      "verify",
      [](const cy::CandidateSet& set, const std::string& method, unsigned threads) {
        cy::VerificationReport r;
        {
          py::gil_scoped_release release;
          r = cy::verify(set, parse_method(method), threads);
        }
        return report_dict(r);
      },
      py::arg("set"), py::arg("method") = "both", py::arg("threads") = 1);
  m.def("difference_histogram", &cy::difference_histogram, py::arg("set"), py::arg("threads") = 1);
  m.def(
      "davenport_hasse_holds",
      [](std::uint32_t p, unsigned f_base, unsigned s, std::uint32_t N) {
        return cy::davenport_hasse_check(p, f_base, s, N).holds;
      },
      py::arg("p"), py::arg("f_base"), py::arg("s"), py::arg("N"));
}
