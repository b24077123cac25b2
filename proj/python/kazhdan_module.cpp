#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kazhdan/balanced.hpp"
#include "kazhdan/errors.hpp"
#include "kazhdan/lab.hpp"
#include "kazhdan/report_io.hpp"
#include "kazhdan/spectra.hpp"

namespace py = pybind11;
using namespace kazhdan;

namespace {

// Reports cross the boundary as plain dicts with the CLI's JSON schema.
py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

SpectralReport run_gap(const FiniteGroup& g, const std::vector<Element>& gens, const std::string& method,
                       double tol, std::uint64_t seed) {
  for (Element x : gens) {
    if (x >= g.order()) throw InvalidArgument("generator out of range");
  }
  const auto op = build_cayley(g, gens);
  IterativeOptions it;
  it.tol = tol;
  it.seed = seed;
  if (method == "dense") return gap_dense(op);
  if (method == "iterative") return gap_iterative(op, it);
  if (method == "characters") return abelian_gap_characters(op);
  if (method == "auto") return best_gap(op, SolverConfig{kTableLimit, it});
  throw InvalidArgument("method must be auto, dense, iterative or characters");
}

std::vector<GroupAlgebraElement> algebra_elements(unsigned p, const std::vector<std::vector<unsigned>>& coeffs) {
  std::vector<GroupAlgebraElement> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) out.emplace_back(p, c);
  return out;
}

MetabelianInstance metabelian(unsigned p, unsigned n, bool split) {
  return split ? build_split_metabelian(p, n) : build_nonsplit_metabelian(p, n);
}

}  // namespace

PYBIND11_MODULE(kazhdan, m) {
  m.doc() = "Kazhdan constants of finite groups: spectral gaps, extension constructions and bounds.";

  auto base = py::register_exception<Error>(m, "KazhdanError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<SizeGuardError>(m, "SizeGuardError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<SearchCapError>(m, "SearchCapError", base.ptr());

  py::class_<FiniteGroup>(m, "Group")
      .def_property_readonly("order", &FiniteGroup::order)
      .def_property_readonly("label", &FiniteGroup::label)
      .def("mul", &FiniteGroup::mul)
      .def("inv", &FiniteGroup::inv)
      .def("is_abelian", &FiniteGroup::is_abelian)
      .def("__repr__", [](const FiniteGroup& g) {
        return "<Group " + g.label() + " of order " + std::to_string(g.order()) + ">";
      });

  m.def("cyclic", [](std::size_t n) { return make_cyclic(n); }, py::arg("n"));
  m.def("elementary_abelian", &make_elementary_abelian, py::arg("p"), py::arg("d"));
  m.def("group_algebra", [](unsigned p) { return make_group_algebra(p, 1).additive; }, py::arg("p"),
        "Additive group of F_p[C_p]; element index is sum_x f(x) p^x.");
  m.def("metabelian", [](unsigned p, unsigned n, bool split) { return metabelian(p, n, split).group; },
        py::arg("p"), py::arg("n"), py::arg("split") = true);
  m.def("gamma_k2", [](unsigned p, unsigned k) { return build_gamma_k2(p, k).group; }, py::arg("p"), py::arg("k"));

  m.def(
      "gap",
      [](const FiniteGroup& g, const std::vector<Element>& gens, const std::string& method, double tol,
         std::uint64_t seed) {
        SpectralReport r;
        {
          py::gil_scoped_release release;
          r = run_gap(g, gens, method, tol, seed);
        }
        return to_py(to_json(r));
      },
      py::arg("group"), py::arg("gens"), py::arg("method") = "auto", py::arg("tol") = 1e-7, py::arg("seed") = 0);

  m.def(
      "verify_main_theorem",
      [](unsigned p, unsigned n, bool split, const std::vector<Element>& s,
         const std::vector<std::vector<unsigned>>& b) {
        const auto inst = metabelian(p, n, split);
        return to_py(to_json(verify_main_theorem(inst, s, algebra_elements(p, b))));
      },
      py::arg("p"), py::arg("n"), py::arg("split"), py::arg("s"), py::arg("b"));
  m.def(
      "verify_nonsplit", [](unsigned p, unsigned n) { return to_py(to_json(verify_nonsplit(build_nonsplit_metabelian(p, n)))); },
      py::arg("p"), py::arg("n"));
  m.def(
      "verify_gamma_k2", [](unsigned p, unsigned k) { return to_py(to_json(verify_gamma_k2(build_gamma_k2(p, k)))); },
      py::arg("p"), py::arg("k"));
  m.def(
      "verify_serre",
      [](unsigned p, unsigned k) {
        const auto inst = build_gamma_k2(p, k);
        return to_py(to_json(verify_serre(inst.group, commutator_subgroup(inst.group), inst.generators)));
      },
      py::arg("p"), py::arg("k"), "Central-extension bound on Gamma_{k,2} over its commutator subgroup.");

  m.def(
      "balance_defect",
      [](unsigned p, const std::vector<std::vector<unsigned>>& multiset) {
        return to_py(to_json(balance_defect(algebra_elements(p, multiset))));
      },
      py::arg("p"), py::arg("multiset"));
  m.def("rank_census", &rank_census, py::arg("p"));
  m.def("required_s", &required_s, py::arg("p"), py::arg("delta"), py::arg("c"), py::arg("cap") = 1'000'000);
  m.def(
      "sample_orbit_union",
      [](unsigned p, unsigned n, std::size_t s, std::uint64_t seed) {
        std::vector<std::vector<unsigned>> out;
        for (const auto& h : sample_orbit_union(p, n, s, seed)) out.push_back(h.coeffs);
        return out;
      },
      py::arg("p"), py::arg("n"), py::arg("s"), py::arg("seed"));

  m.def("tame_delta", &tame_delta, py::arg("k"), py::arg("c"));
  m.def(
      "tame_kazhdan_bound", [](unsigned k, unsigned c) { return to_py(to_json(tame_kazhdan_bound(k, c))); },
      py::arg("k"), py::arg("c"));
  m.def("theorem1_bound", &theorem1_bound, py::arg("eps_h"), py::arg("eps_a"), py::arg("size_s"),
        py::arg("size_b"));

  m.def(
      "g_epsilon_search",
      [](const FiniteGroup& g, double eps, std::size_t trials, std::uint64_t seed, std::size_t cap) {
        GEpsilonReport r;
        {
          py::gil_scoped_release release;
          r = g_epsilon_search(g, eps, trials, seed, cap);
        }
        return to_py(to_json(r));
      },
      py::arg("group"), py::arg("eps"), py::arg("trials") = 20, py::arg("seed") = 0, py::arg("cap") = 0);
}
