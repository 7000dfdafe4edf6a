#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gmoea/harness.hpp"
#include "gmoea/metrics.hpp"
#include "gmoea/selection.hpp"

namespace py = pybind11;
using namespace gmoea;

namespace {

RunConfig config_from_dict(const py::dict& d) {
  nlohmann::json j = nlohmann::json::object();
  for (auto item : d) {
    const std::string key = py::cast<std::string>(item.first);
    const py::handle v = item.second;
    if (py::isinstance<py::bool_>(v)) j[key] = py::cast<bool>(v);
    else if (py::isinstance<py::int_>(v)) j[key] = py::cast<long long>(v);
    else if (py::isinstance<py::float_>(v)) j[key] = py::cast<double>(v);
    else if (py::isinstance<py::str>(v)) j[key] = py::cast<std::string>(v);
    else throw ConfigError("config key '" + key + "': unsupported value type");
  }
  // seeds must stay unsigned 64-bit
  if (d.contains("seed")) j["seed"] = py::cast<std::uint64_t>(d["seed"]);
  return parse_run_config(j);
}

py::object json_to_py(const nlohmann::ordered_json& j) {
  namespace nj = nlohmann;
  switch (j.type()) {
    case nj::detail::value_t::object: {
      py::dict d;
      for (auto it = j.begin(); it != j.end(); ++it)
        d[py::str(it.key())] = json_to_py(it.value());
      return d;
    }
    case nj::detail::value_t::array: {
      py::list l;
      for (const auto& v : j) l.append(json_to_py(v));
      return l;
    }
    case nj::detail::value_t::string: return py::str(j.get<std::string>());
    case nj::detail::value_t::boolean: return py::bool_(j.get<bool>());
    case nj::detail::value_t::number_integer: return py::int_(j.get<long long>());
    case nj::detail::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case nj::detail::value_t::number_float: return py::float_(j.get<double>());
    default: return py::none();
  }
}

}  // namespace

PYBIND11_MODULE(_gmoea, m) {
  m.doc() = "GAN-assisted multiobjective evolutionary optimization";

  // Base first: pybind11 tries translators newest-first, so ConfigError must
  // be registered after Error to win for its own subtree.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("problem_names", &problem_names, "Benchmark problem names in canonical order");
  m.def(
      "problem_info",
      [](const std::string& name, int D) {
        const ProblemSpec spec = make_problem(name, D);
        py::dict d;
        d["name"] = spec.name;
        d["D"] = spec.D;
        d["M"] = spec.M;
        d["lower"] = spec.bounds.lower;
        d["upper"] = spec.bounds.upper;
        return d;
      },
      py::arg("name"), py::arg("D") = 30);
  m.def(
      "evaluate",
      [](const std::string& name, int D, const DecisionVector& x) {
        return objective_eval(make_problem(name, D), x);
      },
      py::arg("name"), py::arg("D"), py::arg("x"),
      "Objective vector of one decision vector");
  m.def(
      "pareto_front",
      [](const std::string& name, int D, int points) {
        return sample_pf(make_problem(name, D), points);
      },
      py::arg("name"), py::arg("D") = 30, py::arg("points") = 10000,
      "Reference front sample used by the indicators");

  m.def("dominates", &dominates, py::arg("a"), py::arg("b"),
        "Pareto dominance (minimization)");
  m.def(
      "spea2_fitness",
      [](const std::vector<ObjectiveVector>& objs) { return spea2_fitness(objs).fitness; },
      py::arg("objectives"), "Strength/raw/density fitness, one value per row");
  m.def("environmental_select", &environmental_select_indices, py::arg("objectives"),
        py::arg("n"), "Indices kept by the archive truncation rule");

  m.def("igd", &igd, py::arg("reference"), py::arg("front"),
        "Mean distance from reference points to the front");
  m.def("hv", &hv, py::arg("front"), py::arg("reference_point"),
        "Exact dominated hypervolume (2 or 3 objectives)");
  m.def(
      "wilcoxon",
      [](const std::vector<double>& a, const std::vector<double>& b, double alpha) {
        const WilcoxonResult r = wilcoxon_rank_sum(a, b, alpha);
        py::dict d;
        d["p"] = r.p;
        d["z"] = r.z;
        d["significant"] = r.significant;
        d["a_lower"] = r.a_lower;
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("alpha") = 0.05,
      "Two-sided rank-sum test with tie and continuity corrections");

  m.def(
      "run",
      [](const py::dict& config) {
        const RunConfig cfg = config_from_dict(config);
        RunRecord rec;
        {
          py::gil_scoped_release release;
          rec = run_algorithm(cfg);
        }
        return json_to_py(run_record_to_json(rec, false));
      },
      py::arg("config"),
      "Execute one optimization run; returns the full record as a dict");
}
