#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ehc/core.hpp"
#include "ehc/harness.hpp"
#include "ehc/io.hpp"
#include "ehc/keys.hpp"
#include "ehc/leaf_vectors.hpp"
#include "ehc/recognizers.hpp"
#include "ehc/smooth.hpp"

namespace py = pybind11;
using namespace ehc;

namespace {

Tournament from_arcs(int n, const std::vector<std::pair<int, int>>& arcs) {
  Tournament t(n);
  for (auto [u, v] : arcs) t.set_arc(u, v);
  t.require_complete();
  return t;
}

std::optional<Ordering> maybe_ordering(const std::optional<std::vector<int>>& perm) {
  if (!perm) return std::nullopt;
  return Ordering(*perm);
}

}  // namespace

PYBIND11_MODULE(_ehc, m) {
  m.doc() = "tournament structure toolkit";

  py::class_<Tournament>(m, "Tournament")
      .def(py::init<int>())
      .def("size", &Tournament::size)
      .def("has_arc", &Tournament::has_arc)
      .def("set_arc", &Tournament::set_arc)
      .def_static("transitive", &Tournament::transitive)
      .def_static("three_cycle", &Tournament::three_cycle)
      .def_static("canonical_k6", &Tournament::canonical_k6)
      .def("__eq__", [](const Tournament& a, const Tournament& b) { return a == b; });

  m.def("from_arcs", &from_arcs, py::arg("n"), py::arg("arcs"));
  m.def("to_text", &tournament_to_text);
  m.def("from_text", &tournament_from_text);

  m.def("tr_exact", [](const Tournament& t) {
    auto r = tr_exact(t);
    return std::make_pair(r.size, mask_to_vector(r.witness));
  });
  m.def("ramsey_transitive",
        [](const Tournament& t) { return mask_to_vector(ramsey_transitive(t)); });
  m.def("contains_subtournament", &contains_subtournament);
  m.def("is_epsilon_critical", [](const Tournament& t, long long num, long long den) {
    return is_epsilon_critical(t, Rational(num, den));
  });

  m.def(
      "recognize",
      [](const Tournament& t, const std::string& grammar,
         const std::optional<std::vector<int>>& ordering) -> std::optional<std::string> {
        auto w = recognize_decomposition(t, grammar_from_tag(grammar), maybe_ordering(ordering));
        if (!w) return std::nullopt;
        return witness_to_json(*w);
      },
      py::arg("t"), py::arg("grammar"), py::arg("ordering") = std::nullopt);

  m.def("is_canonical_k6", [](const Tournament& t, const std::vector<int>& ordering) {
    return is_canonical_K6(t, Ordering(ordering));
  });

  m.def(
      "build_key",
      [](const Tournament& n_host, const std::vector<int>& theta, const Tournament& g,
         const std::vector<int>& alpha) {
        RecognizeOptions opt;
        opt.require_regular = true;
        auto nd = recognize_decomposition(n_host, Grammar::SuperNebula, Ordering(theta), opt);
        if (!nd) throw std::invalid_argument("base is not a regular super nebula");
        auto key = ehc::build_key(n_host, *nd, g, Ordering(alpha));
        return std::make_pair(tournament_to_text(key.K), key.base_vertices);
      },
      py::arg("n"), py::arg("theta"), py::arg("g"), py::arg("alpha"));

  m.def(
      "verify_smooth",
      [](const Tournament& t, const std::vector<std::vector<int>>& sets,
         const std::vector<int>& w, long long c_num, long long c_den, long long l_num,
         long long l_den) {
        SmoothStructure chi;
        for (const auto& s : sets) chi.sets.push_back(vector_to_mask(s));
        chi.w = w;
        chi.c = Rational(c_num, c_den);
        chi.lambda = Rational(l_num, l_den);
        return verify_smooth(t, chi).violations;
      },
      py::arg("t"), py::arg("sets"), py::arg("w"), py::arg("c_num"), py::arg("c_den"),
      py::arg("lambda_num"), py::arg("lambda_den"));

  m.def("sample_tournament", [](int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_tournament(n, rng);
  });
  m.def("run_experiment", [](const std::string& config_text) {
    ExperimentSummary sum;
    auto records = run_experiment(ExperimentConfig::parse(config_text), &sum);
    std::vector<std::string> lines;
    for (const auto& r : records) lines.push_back(record_to_json(r));
    return std::make_pair(lines, sum.epsilon_estimate);
  });
}
