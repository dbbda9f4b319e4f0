#include "sperner/bounds.hpp"
#include "sperner/construct.hpp"
#include "sperner/io.hpp"
#include "sperner/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace sperner;

// Arbitrary-precision integers cross the boundary as Python ints.
namespace pybind11::detail {
template <>
struct type_caster<BigNat> {
  PYBIND11_TYPE_CASTER(BigNat, const_name("int"));

  bool load(handle src, bool) {
    if (!PyLong_Check(src.ptr())) return false;
    value = BigNat(py::str(src).cast<std::string>());
    return true;
  }
  static handle cast(const BigNat& v, return_value_policy, handle) {
    return PyLong_FromString(v.str().c_str(), nullptr, 10);
  }
};
}  // namespace pybind11::detail

namespace {

py::object fraction(const BigRat& v) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(BigNat(numerator(v)), BigNat(denominator(v)));
}

py::dict record(const BoundRecord& r) {
  py::dict d;
  d["value"] = r.value;
  d["direction"] = to_string(r.direction);
  d["source"] = r.source.str();
  py::list ties;
  for (const auto& t : r.ties) ties.append(t.str());
  d["ties"] = ties;
  return d;
}

py::dict report(const VerifyReport& r) {
  py::dict d;
  d["ok"] = r.ok;
  d["message"] = r.message;
  if (r.kind == FailureKind::subset) d["witness"] = py::make_tuple(r.a_part, r.a_class, r.b_part, r.b_class);
  return d;
}

PartitionSystem build(int n, int k, const std::string& method, int u, std::uint64_t seed) {
  const Params p(n, k);
  if (method == "main") return realize(plan_main(p, u), seed);
  if (method == "alt") return realize(plan_alt(p, u), seed);
  if (method == "family3k6") {
    if (n != 3 * k - 6) throw std::invalid_argument("family3k6 requires n = 3k - 6");
    return build_3k6(k, seed);
  }
  if (method == "direct") return build_direct(p, seed).system;
  throw std::invalid_argument("unknown method '" + method + "' (main, alt, family3k6, direct)");
}

}  // namespace

PYBIND11_MODULE(_sperner, m) {
  m.doc() = "Bounds, constructions and verification for Sperner partition systems";

  py::register_exception<NotApplicable>(m, "NotApplicable", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<PartitionSystem>(m, "PartitionSystem")
      .def(py::init<>())
      .def(py::init([](int n, int k, std::vector<Partition> parts) { return PartitionSystem{n, k, std::move(parts)}; }),
           py::arg("n"), py::arg("k"), py::arg("partitions"))
      .def_readwrite("n", &PartitionSystem::n)
      .def_readwrite("k", &PartitionSystem::k)
      .def_readwrite("partitions", &PartitionSystem::partitions)
      .def("__len__", &PartitionSystem::size)
      .def("__eq__", [](const PartitionSystem& a, const PartitionSystem& b) { return a == b; })
      .def("to_json", &system_to_json)
      .def_static("from_json", &system_from_json)
      .def("__repr__", [](const PartitionSystem& s) {
        return "PartitionSystem(n=" + std::to_string(s.n) + ", k=" + std::to_string(s.k) +
               ", partitions=<" + std::to_string(s.size()) + ">)";
      });

  m.def("binom", &binom, py::arg("n"), py::arg("i"));
  m.def("ll_leq", &ll_leq, py::arg("c"), py::arg("x"), py::arg("bound"), "Exact decision of LL_c(x) <= bound.");
  m.def(
      "ll_eval",
      [](int c, const BigNat& x) {
        const auto e = ll_eval(c, x);
        return py::make_tuple(fraction(e.lo), fraction(e.hi), e.exact ? fraction(*e.exact) : py::none());
      },
      py::arg("c"), py::arg("x"), "Enclosure (lo, hi, exact_or_None) of LL_c(x), width at most 1e-9.");

  m.def("nlb", [](int n, int k) { return nlb(Params(n, k)); }, py::arg("n"), py::arg("k"));
  m.def("mms", [](int n, int k) { return fraction(mms(Params(n, k))); }, py::arg("n"), py::arg("k"));
  m.def("mms_floor", [](int n, int k) { return mms_floor(Params(n, k)); }, py::arg("n"), py::arg("k"));
  m.def(
      "thm_upper",
      [](int n, int k) {
        const Params p(n, k);
        if (auto why = thm_upper_violation(p)) throw NotApplicable(*why);
        return thm_upper(p);
      },
      py::arg("n"), py::arg("k"));
  m.def(
      "exact_known",
      [](int n, int k) -> py::object {
        if (auto r = exact_known(Params(n, k))) return py::cast(r->value);
        return py::none();
      },
      py::arg("n"), py::arg("k"));
  m.def("main_construction_p", [](int n, int k, int u) { return main_construction_p(Params(n, k), u); },
        py::arg("n"), py::arg("k"), py::arg("u"));
  m.def("alt_construction_p", [](int n, int k, int u) { return alt_construction_p(Params(n, k), u); },
        py::arg("n"), py::arg("k"), py::arg("u"));
  m.def("admissible_main_u", [](int n, int k) { return admissible_main_u(Params(n, k)); }, py::arg("n"),
        py::arg("k"));
  m.def("admissible_alt_u", [](int n, int k) { return admissible_alt_u(Params(n, k)); }, py::arg("n"),
        py::arg("k"));
  m.def(
      "bounds",
      [](int n, int k) {
        const auto cell = aggregate(k, n).back();
        return py::make_tuple(record(cell.lower), record(cell.upper));
      },
      py::arg("n"), py::arg("k"), "(lower, upper) records for SP(n, k).");
  m.def(
      "table",
      [](int k_min, int k_max, int n_max) {
        py::list rows;
        for (const auto& r : bounds_table(k_min, k_max, n_max)) {
          py::dict d;
          d["n"] = r.n;
          d["k"] = r.k;
          d["lower"] = r.lower;
          d["lower_source"] = r.lower_source;
          d["upper"] = r.upper;
          d["upper_gap"] = r.upper_gap;
          d["nlb"] = r.nlb;
          d["mms_floor"] = r.mms_floor;
          rows.append(d);
        }
        return rows;
      },
      py::arg("k_min") = 4, py::arg("k_max") = 7, py::arg("n_max") = 33);

  m.def("construct", &build, py::arg("n"), py::arg("k"), py::arg("method") = "direct", py::arg("u") = 1,
        py::arg("seed") = 0, py::call_guard<py::gil_scoped_release>());
  m.def("product", &product_build, py::arg("a"), py::arg("b"));
  m.def("verify", [](const PartitionSystem& s) { return report(verify_system(s)); }, py::arg("system"));
  m.def("verify_detecting", [](const PartitionSystem& s) { return report(verify_detecting(to_detecting_array(s))); },
        py::arg("system"));
  m.def(
      "almost_uniform", [](const PartitionSystem& s) { return verify_almost_uniform(s, Params(s.n, s.k)); },
      py::arg("system"));
  m.def(
      "brute_force",
      [](int n, int k, bool canonical) {
        BruteResult r;
        {
          py::gil_scoped_release release;
          r = brute_force_sp(Params(n, k), 9, canonical);
        }
        return py::make_tuple(r.value, r.witness);
      },
      py::arg("n"), py::arg("k"), py::arg("canonical") = false, "Exact SP(n, k) and a witness, n <= 9.");
}
