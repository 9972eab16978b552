#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lipext/cli.hpp"
#include "lipext/covers.hpp"
#include "lipext/extension.hpp"
#include "lipext/free_space.hpp"
#include "lipext/generate.hpp"
#include "lipext/kpr.hpp"
#include "lipext/metric.hpp"
#include "lipext/minor.hpp"
#include "lipext/parallel.hpp"
#include "lipext/trace.hpp"

namespace py = pybind11;
using namespace lipext;

namespace {

PointSet to_set(const FiniteMetricSpace& space, const std::vector<std::size_t>& idx) {
  for (std::size_t i : idx)
    if (i >= space.size()) throw Error(ErrorKind::InvalidInput, "point index " + std::to_string(i) + " out of range");
  return PointSet(space.size(), idx);
}

WeightedGraph to_graph(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges) {
  std::vector<Edge> out;
  for (const auto& [u, v, w] : edges) out.push_back({u, v, w});
  return WeightedGraph(n, out);
}

py::dict metric_report(const Matrix& dist) {
  const MetricReport r = check_metric(dist);
  py::list triangle;
  for (const auto& t : r.triangle) triangle.append(py::make_tuple(t.i, t.j, t.k, t.excess));
  py::dict d;
  d["ok"] = r.ok();
  d["non_square"] = r.non_square;
  d["negative_entries"] = r.negative_entries;
  d["asymmetric_pairs"] = r.asymmetric_pairs;
  d["nonzero_diagonal"] = r.nonzero_diagonal;
  d["zero_off_diagonal"] = r.zero_off_diagonal;
  d["triangle"] = triangle;
  return d;
}

py::dict nagata_cover(const FiniteMetricSpace& space, const std::vector<std::size_t>& subset, double s, bool exact) {
  const PointSet n = to_set(space, subset);
  const NagataCover cover = build_nagata_from_doubling(space, n, s);
  const NagataReport rep = verify_nagata(space, n, cover, exact);
  std::vector<std::vector<std::size_t>> clusters;
  for (const auto& c : cover.clusters) clusters.push_back(c.members());
  py::dict d;
  d["scale"] = cover.scale;
  d["gamma"] = cover.gamma;
  d["d"] = cover.d;
  d["clusters"] = clusters;
  d["classes"] = cover.classes;
  d["passed"] = rep.passed();
  d["certificate"] = std::string(to_string(rep.certificate));
  d["witness"] = rep.witness;
  d["max_diameter"] = rep.max_diameter;
  return d;
}

py::dict whitney_cover(const FiniteMetricSpace& space, const std::vector<std::size_t>& subset, double epsilon) {
  const PointSet n = to_set(space, subset);
  const WhitneyCover cover = build_whitney_from_nagata(space, n, epsilon);
  const WhitneyReport rep = verify_whitney(space, n, cover);
  std::vector<std::vector<std::size_t>> sets;
  for (const auto& k : cover.sets) sets.push_back(k.members());
  py::dict params;
  params["o"] = cover.params.o;
  params["s"] = cover.params.s;
  params["d"] = cover.params.d;
  params["a"] = cover.params.a;
  py::dict d;
  d["sets"] = sets;
  d["anchors"] = cover.anchors;
  d["annulus"] = cover.annulus;
  d["params"] = params;
  d["nagata_d"] = cover.nagata_d;
  d["nagata_gamma"] = cover.nagata_gamma;
  d["passed"] = rep.passed();
  return d;
}

py::tuple free_norm(const FiniteMetricSpace& space, const std::vector<double>& coeffs, double p) {
  if (coeffs.size() != space.size()) throw Error(ErrorKind::DomainMismatch, "one coefficient per point expected");
  const FreeNormResult res = pnorm_with_representation(space, FreeElement(coeffs, space.base()), p);
  py::list rep;
  for (const Molecule& m : res.representation) rep.append(py::make_tuple(m.from, m.to, m.amount));
  return py::make_tuple(res.norm, rep);
}

py::dict extend_map(const FiniteMetricSpace& space, const std::vector<std::size_t>& subset,
                    const std::map<std::size_t, std::vector<double>>& values, double p, double epsilon) {
  const PointSet n = to_set(space, subset);
  PValuedMap f;
  f.domain = n;
  f.p = p;
  f.dim = values.empty() ? 0 : values.begin()->second.size();
  f.values.assign(space.size(), std::vector<double>(f.dim, 0.0));
  for (const auto& [x, v] : values) {
    if (x >= space.size() || !n.contains(x)) throw Error(ErrorKind::DomainMismatch, "value given off the subset");
    if (v.size() != f.dim) throw Error(ErrorKind::DomainMismatch, "inconsistent target dimension");
    f.values[x] = v;
  }
  for (std::size_t x : n.members())
    if (!values.count(x)) throw Error(ErrorKind::DomainMismatch, "missing value for point " + std::to_string(x));
  const WhitneyCover cover = build_whitney_from_nagata(space, n, epsilon);
  const PartitionOfUnity pou(space, n, cover);
  const PValuedMap g = extend(space, f, pou);
  const TargetNorm norm = coordinate_pnorm(p);
  py::dict d;
  d["values"] = g.values;
  d["lip_f"] = lipschitz_constant(space, f, norm);
  d["lip_ext"] = lipschitz_constant(space, g, norm);
  d["bound"] = extension_bound(QuasiConstants{p, cover.params.o, cover.params.s, cover.params.d, cover.params.a});
  return d;
}

py::list trace(const FiniteMetricSpace& space, const std::vector<std::size_t>& subset, const std::vector<double>& ps,
               double resolution, std::size_t refine) {
  py::list out;
  for (const auto& est : trace_table(space, to_set(space, subset), ps, resolution, refine)) {
    py::dict d;
    d["p"] = est.p;
    d["estimate"] = est.achieved_lip;
    d["coefficients"] = est.best_coeffs;
    d["certified_upper"] = est.certified_upper;
    d["lower_bound"] = est.lower_bound;
    out.append(d);
  }
  return out;
}

py::list counterexample(const std::vector<double>& ps, double resolution, std::size_t refine) {
  py::list out;
  for (const auto& r : reproduce_counterexample(ps, resolution, refine)) {
    py::dict d;
    d["p"] = r.p;
    d["estimate"] = r.estimate;
    d["best_a"] = r.best_a;
    d["best_b"] = r.best_b;
    d["certified_upper"] = r.certified_upper;
    out.append(d);
  }
  return out;
}

py::dict kpr(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges, double r,
             std::size_t m, std::optional<double> eta) {
  const DiscretizedMetricGraph mg = discretize(to_graph(n, edges), eta.value_or(r / 10.0));
  const KPRDecomposition dec = kpr_decompose(mg, r, m);
  const GraphNagataReport rep = verify_graph_nagata(mg, dec);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < mg.node_count(); ++a) labels.push_back(mg.node_label(a));
  std::vector<std::vector<std::size_t>> clusters;
  for (const auto& c : dec.clusters) clusters.push_back(c.members());
  py::dict d;
  d["nodes"] = labels;
  d["clusters"] = clusters;
  d["classes"] = dec.classes;
  d["trivial"] = dec.trivial;
  d["s"] = dec.s;
  d["d"] = dec.d;
  d["gamma"] = dec.gamma;
  d["max_diameter"] = rep.max_diameter;
  d["diameter_bound"] = rep.diameter_bound;
  d["max_ball_multiplicity"] = rep.max_ball_multiplicity;
  d["multiplicity_bound"] = rep.multiplicity_bound;
  d["passed"] = rep.passed();
  return d;
}

py::tuple cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"lipext"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_lipext, mod) {
  mod.doc() = "Lipschitz extension toolkit: finite metric spaces, covers, free p-spaces and graph decompositions";

  static py::exception<Error> error(mod, "LipextError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = error;
      PyErr_SetObject(err.ptr(), py::make_tuple(e.what(), std::string(to_string(e.kind()))).ptr());
    }
  });

  py::class_<FiniteMetricSpace>(mod, "MetricSpace")
      .def(py::init([](const Matrix& dist, std::optional<std::vector<std::string>> labels, std::size_t base) {
             if (!labels) return FiniteMetricSpace::from_matrix(dist, base);
             return FiniteMetricSpace(*labels, dist, base);
           }),
           py::arg("dist"), py::arg("labels") = py::none(), py::arg("base") = 0)
      .def("__len__", &FiniteMetricSpace::size)
      .def("__call__", [](const FiniteMetricSpace& s, std::size_t i, std::size_t j) {
        if (i >= s.size() || j >= s.size()) throw py::index_error("point index out of range");
        return s(i, j);
      })
      .def_property_readonly("labels", &FiniteMetricSpace::labels)
      .def_property_readonly("base", &FiniteMetricSpace::base)
      .def_property_readonly("diameter", &FiniteMetricSpace::diameter)
      .def("matrix", &FiniteMetricSpace::matrix)
      .def("index_of", &FiniteMetricSpace::index_of)
      .def("__repr__", [](const FiniteMetricSpace& s) {
        return "<MetricSpace with " + std::to_string(s.size()) + " points>";
      });

  mod.def("check_metric", &metric_report, py::arg("dist"));
  mod.def("generate_test_space", &generate_test_space, py::arg("kind"), py::arg("n"), py::arg("seed") = 0);
  mod.def("doubling_constant_upper", &doubling_constant_upper, py::arg("space"));
  mod.def(
      "maximal_separated_net",
      [](const FiniteMetricSpace& space, const std::vector<std::size_t>& subset, double scale) {
        return maximal_separated_net(space, to_set(space, subset), scale).members();
      },
      py::arg("space"), py::arg("subset"), py::arg("scale"));
  mod.def("nagata_cover", &nagata_cover, py::arg("space"), py::arg("subset"), py::arg("s"), py::arg("exact") = false);
  mod.def("whitney_cover", &whitney_cover, py::arg("space"), py::arg("subset"), py::arg("epsilon") = kDefaultEpsilon);
  mod.def("free_norm", &free_norm, py::arg("space"), py::arg("coeffs"), py::arg("p") = 1.0);
  mod.def("pnorm_threepoint", &pnorm_threepoint, py::arg("x"), py::arg("y"), py::arg("p"));
  mod.def("extend", &extend_map, py::arg("space"), py::arg("subset"), py::arg("values"), py::arg("p") = 1.0,
          py::arg("epsilon") = kDefaultEpsilon);
  mod.def("quasi_constant", &quasi_constant, py::arg("p"), py::arg("n"));
  mod.def("extension_bound", py::overload_cast<double, double, double, double, double>(&extension_bound),
          py::arg("p"), py::arg("o"), py::arg("s"), py::arg("d"), py::arg("a"));
  mod.def(
      "means_inequality_check", [](const std::vector<double>& a, double m) { return means_inequality_check(a, m); },
      py::arg("a"), py::arg("m"));
  mod.def("trace", &trace, py::arg("space"), py::arg("subset"), py::arg("p_list"), py::arg("resolution") = 0.05,
          py::arg("refine") = 3);
  mod.def("reproduce_counterexample", &counterexample, py::arg("p_list"), py::arg("resolution") = 0.01,
          py::arg("refine") = 3);
  mod.def("kpr_decompose", &kpr, py::arg("n"), py::arg("edges"), py::arg("r"), py::arg("m") = 3,
          py::arg("eta") = py::none());
  mod.def(
      "has_minor",
      [](std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges, std::size_t m) {
        return has_minor(to_graph(n, edges), m);
      },
      py::arg("n"), py::arg("edges"), py::arg("m"));
  mod.def("set_thread_limit", &set_thread_limit, py::arg("threads"));
  mod.def("thread_count", &thread_count);
  mod.def("run_cli", &cli, py::arg("args"), "Run one command-line invocation; returns (exit_code, stdout, stderr).");
}
