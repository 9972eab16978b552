#include "lipext/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <ostream>
#include <sstream>

#include "lipext/covers.hpp"
#include "lipext/extension.hpp"
#include "lipext/free_space.hpp"
#include "lipext/generate.hpp"
#include "lipext/io.hpp"
#include "lipext/kpr.hpp"
#include "lipext/minor.hpp"
#include "lipext/parallel.hpp"
#include "lipext/trace.hpp"

namespace lipext {

namespace {

using nlohmann::json;

struct Sinks {
  std::ostream& out;
  std::string output;  // JSON artifact path, empty = out
  std::string report;  // CSV report path, empty = out

  void artifact(const json& j) const {
    const std::string text = dump_json(j);
    if (output.empty()) out << text;
    else write_file(output, text);
  }
  void table(const std::string& csv) const {
    if (report.empty()) out << csv;
    else write_file(report, csv);
  }
};

std::string join_csv(std::initializer_list<std::string> cells) {
  std::string line;
  for (const auto& c : cells) line += (line.empty() ? "" : ",") + c;
  return line + "\n";
}

std::string n12(double v) { return format_number(v); }

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, what + ": " + e.what());
  }
}

FiniteMetricSpace load_space(const std::string& path) { return space_from_json(parse_json_text(read_file(path), path)); }

// --- validate-metric ------------------------------------------------------

int cmd_validate(const std::string& path, const Sinks& sinks, std::ostream& err) {
  const Matrix dist = matrix_from_json(parse_json_text(read_file(path), path));
  const MetricReport rep = check_metric(dist);
  if (rep.non_square) throw Error(ErrorKind::NonSquare, "distance matrix is not square");
  if (!rep.negative_entries.empty()) {
    const auto [i, j] = rep.negative_entries.front();
    throw Error(ErrorKind::NegativeEntry, "negative entry at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  }
  std::string csv = "i,j,k,excess\n";
  for (const auto& t : rep.triangle)
    csv += join_csv({std::to_string(t.i), std::to_string(t.j), std::to_string(t.k), n12(t.excess)});
  sinks.table(csv);
  for (const auto& [i, j] : rep.asymmetric_pairs) err << "asymmetric pair " << i << "," << j << "\n";
  for (std::size_t i : rep.nonzero_diagonal) err << "nonzero diagonal at " << i << "\n";
  for (const auto& [i, j] : rep.zero_off_diagonal) err << "zero distance between distinct points " << i << "," << j << "\n";
  if (!rep.ok()) {
    err << rep.triangle.size() << " triangle violation(s)\n";
    return kExitVerificationFailed;
  }
  err << "valid metric on " << dist.size() << " point(s)\n";
  return kExitOk;
}

// --- nagata-cover ---------------------------------------------------------

int cmd_nagata(const std::string& path, double s, const std::string& subset, bool exact, const Sinks& sinks) {
  const FiniteMetricSpace space = load_space(path);
  const PointSet n = subset.empty() ? PointSet::all(space.size()) : parse_subset(space, subset);
  const NagataCover cover = build_nagata_from_doubling(space, n, s);
  const NagataReport rep = verify_nagata(space, n, cover, exact);

  json clusters = json::array();
  for (const auto& c : cover.clusters) clusters.push_back(labels_json(space, c));
  sinks.artifact({{"scale", cover.scale},
                  {"gamma", cover.gamma},
                  {"d", cover.d},
                  {"clusters", clusters},
                  {"classes", cover.classes}});

  std::string csv = "property,status,value\n";
  auto status = [](bool ok) { return std::string(ok ? "pass" : "fail"); };
  csv += join_csv({"cover", status(rep.uncovered.empty() && rep.foreign_clusters.empty()),
                   std::to_string(rep.uncovered.size())});
  csv += join_csv({"diameter", status(rep.oversized.empty()), n12(rep.max_diameter)});
  csv += join_csv({"multiplicity", status(rep.certificate != MultiplicityCertificate::None && !rep.witness),
                   to_string(rep.certificate)});
  csv += join_csv({"ball_multiplicity", "info", std::to_string(rep.max_ball_multiplicity)});
  csv += join_csv({"exact_subsets", rep.exact_checked ? status(!rep.witness) : "skipped", std::to_string(cover.d + 1)});
  sinks.table(csv);
  return rep.passed() ? kExitOk : kExitVerificationFailed;
}

// --- whitney-cover --------------------------------------------------------

json whitney_json(const FiniteMetricSpace& space, const WhitneyCover& cover) {
  json sets = json::array(), anchors = json::array();
  for (std::size_t i = 0; i < cover.sets.size(); ++i) {
    sets.push_back(labels_json(space, cover.sets[i]));
    anchors.push_back(space.label(cover.anchors[i]));
  }
  return {{"sets", sets},
          {"anchors", anchors},
          {"annulus", cover.annulus},
          {"epsilon", cover.epsilon},
          {"params", {{"o", cover.params.o}, {"s", cover.params.s}, {"d", cover.params.d}, {"a", cover.params.a}}},
          {"nagata", {{"d", cover.nagata_d}, {"gamma", cover.nagata_gamma}}}};
}

std::string whitney_csv(const WhitneyReport& rep) {
  std::string csv = "item,violations,worst_slack\n";
  auto row = [&](const char* name, const WhitneyItemReport& item) {
    csv += join_csv({name, std::to_string(item.violations), n12(item.worst_slack)});
  };
  row("overlap", rep.overlap);
  row("depth", rep.depth);
  row("eccentricity", rep.eccentricity);
  row("ratio", rep.ratio);
  row("anchor", rep.anchor);
  return csv;
}

int cmd_whitney(const std::string& path, const std::string& subset, double epsilon, const Sinks& sinks) {
  const FiniteMetricSpace space = load_space(path);
  const PointSet n = parse_subset(space, subset);
  const WhitneyCover cover = build_whitney_from_nagata(space, n, epsilon);
  const WhitneyReport rep = verify_whitney(space, n, cover);
  sinks.artifact(whitney_json(space, cover));
  sinks.table(whitney_csv(rep));
  return rep.passed() ? kExitOk : kExitVerificationFailed;
}

// --- extend ---------------------------------------------------------------

int cmd_extend(const std::string& path, const std::string& subset, const std::string& map_path, double p,
               double epsilon, const Sinks& sinks) {
  const FiniteMetricSpace space = load_space(path);
  const PointSet n = parse_subset(space, subset);
  const PValuedMap f = map_from_json(parse_json_text(read_file(map_path), map_path), space, n, p);
  const WhitneyCover cover = build_whitney_from_nagata(space, n, epsilon);
  const PartitionOfUnity pou(space, n, cover);
  const PValuedMap g = extend(space, f, pou);
  const TargetNorm norm = coordinate_pnorm(p);
  const double lip_f = lipschitz_constant(space, f, norm);
  const double lip_g = lipschitz_constant(space, g, norm);
  const double bound = extension_bound(p, static_cast<double>(cover.params.o), cover.params.s, cover.params.d,
                                       cover.params.a);
  const double ratio = lip_f > 0.0 ? lip_g / lip_f : 0.0;
  sinks.artifact(map_to_json(space, g));
  sinks.table("lip_f,lip_f_ext,bound,ratio\n" + join_csv({n12(lip_f), n12(lip_g), n12(bound), n12(ratio)}));
  return lip_g <= bound * lip_f + kBoundTol * std::max(1.0, bound * lip_f) ? kExitOk : kExitVerificationFailed;
}

// --- free-norm ------------------------------------------------------------

int cmd_free_norm(const std::string& path, const std::string& coeffs, double p, const Sinks& sinks) {
  const FiniteMetricSpace space = load_space(path);
  const json j = parse_json_text(coeffs, "--coeffs");
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "--coeffs must be a JSON object {label: coefficient}");
  FreeElement mu(space.size(), space.base());
  for (const auto& [label, v] : j.items()) {
    if (!v.is_number()) throw Error(ErrorKind::InvalidInput, "coefficient for " + label + " is not a number");
    mu.add(space.index_of(label), v.get<double>());
  }
  const FreeNormResult res = pnorm_with_representation(space, mu, p);
  std::string csv = join_csv({"norm", n12(res.norm)}) + "x,y,a\n";
  for (const Molecule& m : res.representation)
    csv += join_csv({space.label(m.from), space.label(m.to), n12(m.amount)});
  sinks.table(csv);
  return kExitOk;
}

// --- trace / reproduce-counterexample ---------------------------------------

int cmd_trace(const std::string& path, const std::string& subset, const std::string& p_list, double resolution,
              std::size_t refine, const Sinks& sinks) {
  const FiniteMetricSpace space = load_space(path);
  const PointSet n = parse_subset(space, subset);
  const auto ps = parse_number_list(p_list);
  const auto rows = trace_table(space, n, ps, resolution, refine);
  const TraceModel model(make_trace_problem(space, n, ps.front()));
  std::string header = "p,estimate,certified_upper,lower_bound";
  for (std::size_t y : model.added_points())
    for (std::size_t k : model.coordinate_points())
      header += "," + space.label(y) + ":" + space.label(model.subspace_points()[k]);
  std::string csv = header + "\n";
  for (const auto& est : rows) {
    std::string line = n12(est.p) + "," + n12(est.achieved_lip) + "," + n12(est.certified_upper) + "," +
                       n12(est.lower_bound);
    for (const auto& c : est.best_coeffs)
      for (double v : c) line += "," + n12(v);
    csv += line + "\n";
  }
  sinks.table(csv);
  return kExitOk;
}

int cmd_counterexample(const std::string& p_list, double resolution, std::size_t refine, const Sinks& sinks) {
  const auto rows = reproduce_counterexample(parse_number_list(p_list), resolution, refine);
  std::string csv = "p,estimate,best_a,best_b,certified_upper\n";
  for (const auto& r : rows)
    csv += join_csv({n12(r.p), n12(r.estimate), n12(r.best_a), n12(r.best_b), n12(r.certified_upper)});
  sinks.table(csv);
  return kExitOk;
}

// --- kpr-decompose / check-minor -------------------------------------------

WeightedGraph load_graph(const std::string& path) { return graph_from_text(read_file(path)); }

int cmd_kpr(const std::string& path, double r, std::size_t m, double eta, const Sinks& sinks, std::ostream& err) {
  const WeightedGraph graph = load_graph(path);
  const DiscretizedMetricGraph mg = discretize(graph, eta > 0.0 ? eta : r / 10.0);
  KPRDecomposition dec;
  try {
    dec = kpr_decompose(mg, r, m);
  } catch (const ResidualActiveClusterError& e) {
    err << e.what() << "\n";
    std::string delta;
    for (std::size_t d : e.delta()) delta += std::to_string(d);
    err << "branch " << delta << ", anchors";
    for (std::size_t a : e.anchors()) err << " " << mg.node_label(a);
    err << "\n";
    return kExitVerificationFailed;
  }
  const GraphNagataReport rep = verify_graph_nagata(mg, dec);

  json nodes = json::array();
  for (std::size_t a = 0; a < mg.node_count(); ++a) nodes.push_back(mg.node_label(a));
  json branches = json::array();
  for (std::size_t b = 0; b < dec.shrunken.size(); ++b) {
    json clusters = json::array();
    for (const auto& c : dec.shrunken[b]) {
      if (c.empty()) continue;
      json members = json::array();
      for (std::size_t x : c.members()) members.push_back(mg.node_label(x));
      clusters.push_back(members);
    }
    branches.push_back({{"delta", dec.deltas[b]}, {"clusters", clusters}});
  }
  sinks.artifact({{"r", dec.r},
                  {"m", dec.m},
                  {"eta", mg.eta()},
                  {"s", dec.s},
                  {"d", dec.d},
                  {"gamma", dec.gamma},
                  {"trivial", dec.trivial},
                  {"nodes", nodes},
                  {"branches", branches}});

  auto status = [](bool ok) { return std::string(ok ? "pass" : "fail"); };
  std::string csv = "property,value,bound,status\n";
  csv += join_csv({"uncovered", std::to_string(rep.uncovered.size()), "0", status(rep.uncovered.empty())});
  csv += join_csv({"max_diameter", n12(rep.max_diameter), n12(rep.diameter_bound), status(rep.oversized.empty())});
  csv += join_csv({"min_branch_separation", n12(rep.min_separation), n12(dec.r),
                   status(rep.separation_violations == 0 && rep.delta_overlaps == 0)});
  csv += join_csv({"max_ball_multiplicity", std::to_string(rep.max_ball_multiplicity),
                   std::to_string(rep.multiplicity_bound), status(rep.max_ball_multiplicity <= rep.multiplicity_bound)});
  sinks.table(csv);
  return rep.passed() ? kExitOk : kExitVerificationFailed;
}

int cmd_check_minor(const std::string& path, std::size_t m, const Sinks& sinks) {
  const bool found = has_minor(load_graph(path), m);
  sinks.table(join_csv({"has_minor", found ? "true" : "false"}));
  return found ? kExitVerificationFailed : kExitOk;
}

// --- gen-space ------------------------------------------------------------

int cmd_gen_space(const std::string& kind, std::size_t n, std::uint64_t seed, const Sinks& sinks) {
  sinks.artifact(space_to_json(generate_test_space(kind, n, seed)));
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lipschitz extension toolkit for finite metric spaces and weighted graphs", "lipext"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  std::size_t threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: LIPEXT_THREADS or all cores)");

  std::string input, subset, output, report, map_path, coeffs, p_list = "1,0.5,0.25,0.1,0.05", kind;
  double s = 0.0, p = 1.0, epsilon = kDefaultEpsilon, resolution = 0.01, r = 0.0, eta = 0.0;
  std::size_t refine = 3, m = 3, n = 0;
  std::uint64_t seed = 0;
  bool exact = false;

  auto with_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", output, "Write the JSON artifact here instead of stdout");
    sub->add_option("--report", report, "Write the CSV report here instead of stdout");
  };
  auto positive = CLI::PositiveNumber;

  auto* validate = app.add_subcommand("validate-metric", "Check the metric axioms of a distance matrix");
  validate->add_option("space", input, "Space JSON")->required();
  validate->add_option("--report", report, "Write the CSV report here instead of stdout");

  auto* nagata = app.add_subcommand("nagata-cover", "Nagata cover from the doubling structure");
  nagata->add_option("space", input, "Space JSON")->required();
  nagata->add_option("--s", s, "Scale s > 0")->required()->check(positive);
  nagata->add_option("--subset", subset, "Comma-separated labels of N (default: all points)");
  nagata->add_flag("--exact", exact, "Also enumerate all subsets of diameter <= s (|N| <= 16)");
  with_output(nagata);

  auto* whitney = app.add_subcommand("whitney-cover", "Whitney cover of M \\ N");
  whitney->add_option("space", input, "Space JSON")->required();
  whitney->add_option("--subset", subset, "Comma-separated labels of N")->required();
  whitney->add_option("--epsilon", epsilon, "epsilon in (0, 1/2)")->check(CLI::Range(0.0, 0.5));
  with_output(whitney);

  auto* ext = app.add_subcommand("extend", "Extend a map from N to M and measure Lipschitz constants");
  ext->add_option("space", input, "Space JSON")->required();
  ext->add_option("--subset", subset, "Comma-separated labels of N")->required();
  ext->add_option("--map", map_path, "Map JSON {\"values\": {label: [coords]}}")->required();
  ext->add_option("--p", p, "Target exponent p in (0, 1]")->check(CLI::Range(0.0, 1.0));
  ext->add_option("--epsilon", epsilon, "epsilon in (0, 1/2)")->check(CLI::Range(0.0, 0.5));
  with_output(ext);

  auto* free_norm = app.add_subcommand("free-norm", "Norm of an element of the free p-space");
  free_norm->add_option("space", input, "Space JSON")->required();
  free_norm->add_option("--coeffs", coeffs, "JSON object {label: coefficient}")->required();
  free_norm->add_option("--p", p, "p in (0, 1]")->check(CLI::Range(0.0, 1.0));
  free_norm->add_option("--report", report, "Write the CSV report here instead of stdout");

  auto* trace = app.add_subcommand("trace", "Estimate the p-trace of N in M");
  trace->add_option("space", input, "Space JSON")->required();
  trace->add_option("--subset", subset, "Comma-separated labels of N")->required();
  trace->add_option("--p-list", p_list, "Comma-separated exponents");
  trace->add_option("--resolution", resolution, "Grid step")->check(positive);
  trace->add_option("--refine", refine, "Refinement rounds");
  trace->add_option("--report", report, "Write the CSV report here instead of stdout");

  auto* counter = app.add_subcommand("reproduce-counterexample", "p-trace of {0,1,2} in {0,1,3/2,2}");
  counter->add_option("--p-list", p_list, "Comma-separated exponents");
  counter->add_option("--resolution", resolution, "Grid step")->check(positive);
  counter->add_option("--refine", refine, "Refinement rounds");
  counter->add_option("--report", report, "Write the CSV report here instead of stdout");

  auto* kpr = app.add_subcommand("kpr-decompose", "Nagata cover of a metric graph by iterated annuli");
  kpr->add_option("graph", input, "Graph JSON or 'u v w' lines")->required();
  kpr->add_option("--r", r, "Radius r > 0")->required()->check(positive);
  kpr->add_option("--m", m, "Excluded minor size m >= 3")->check(CLI::Range(std::size_t{3}, std::size_t{16}));
  kpr->add_option("--eta", eta, "Subdivision step (default r/10)")->check(positive);
  with_output(kpr);

  auto* minor = app.add_subcommand("check-minor", "Exit 0 iff the graph has no K_m minor");
  minor->add_option("graph", input, "Graph JSON or 'u v w' lines")->required();
  minor->add_option("--m", m, "Minor size")->required();
  minor->add_option("--report", report, "Write the CSV report here instead of stdout");

  auto* gen = app.add_subcommand("gen-space", "Generate a test metric space");
  gen->add_option("--kind", kind, "line | grid-linf | random-doubling-subset")->required();
  gen->add_option("--n", n, "Number of points (1..64)")->required();
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("-o,--output", output, "Write the JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  if (threads > 0) set_thread_limit(threads);
  const Sinks sinks{out, output, report};
  try {
    if (*validate) return cmd_validate(input, sinks, err);
    if (*nagata) return cmd_nagata(input, s, subset, exact, sinks);
    if (*whitney) return cmd_whitney(input, subset, epsilon, sinks);
    if (*ext) return cmd_extend(input, subset, map_path, p, epsilon, sinks);
    if (*free_norm) return cmd_free_norm(input, coeffs, p, sinks);
    if (*trace) return cmd_trace(input, subset, p_list, resolution, refine, sinks);
    if (*counter) return cmd_counterexample(p_list, resolution, refine, sinks);
    if (*kpr) return cmd_kpr(input, r, m, eta, sinks, err);
    if (*minor) return cmd_check_minor(input, m, sinks);
    if (*gen) return cmd_gen_space(kind, n, seed, sinks);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace lipext
