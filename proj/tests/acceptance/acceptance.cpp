// Acceptance run: one PASS/FAIL line per criterion. Criteria 1-9 each build a
// textual artifact; criterion 10 reruns them under LIPEXT_THREADS=4 and
// compares the artifacts byte for byte with the LIPEXT_THREADS=1 run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lipext/cli.hpp"
#include "lipext/extension.hpp"
#include "lipext/free_space.hpp"
#include "lipext/generate.hpp"
#include "lipext/io.hpp"
#include "lipext/kpr.hpp"
#include "lipext/minor.hpp"
#include "lipext/parallel.hpp"
#include "oracles.hpp"

using namespace lipext;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string artifact;
};

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

std::string num(double v) { return format_number(v); }

// Shared instances for criteria 4 and 5: subsets of the 8x8 grid with a
// random non-empty proper N.
struct GridInstance {
  FiniteMetricSpace space;
  PointSet subspace;
};

std::vector<GridInstance> grid_instances() {
  std::vector<GridInstance> out;
  for (std::uint64_t k = 0; k < 25; ++k) {
    std::mt19937_64 rng(1000 + k);
    const std::size_t n = 6 + rng() % 27;
    GridInstance inst{generate_test_space("random-doubling-subset", n, 5000 + k), PointSet(n)};
    for (std::size_t x = 0; x < n; ++x)
      if (rng() % 2) inst.subspace.insert(x);
    if (inst.subspace.empty()) inst.subspace.insert(rng() % n);
    if (inst.subspace.count() == n) inst.subspace.erase(rng() % n);
    out.push_back(std::move(inst));
  }
  return out;
}

// --- 1 ---------------------------------------------------------------------
Outcome counterexample() {
  Outcome o;
  const char* argv[] = {"lipext", "reproduce-counterexample", "--p-list", "1,0.5,0.25,0.1,0.05"};
  std::ostringstream out, err;
  const auto t0 = std::chrono::steady_clock::now();
  const int code = run_cli(4, argv, out, err);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.artifact = out.str();
  if (code != 0) {
    fail(o, "exit code " + std::to_string(code) + ": " + err.str());
    return o;
  }
  std::istringstream lines(o.artifact);
  std::string line;
  std::getline(lines, line);
  std::vector<std::pair<double, double>> rows;  // (p, estimate)
  while (std::getline(lines, line)) {
    std::istringstream cells(line);
    std::string p, est;
    std::getline(cells, p, ',');
    std::getline(cells, est, ',');
    rows.emplace_back(std::stod(p), std::stod(est));
  }
  if (rows.size() != 5) {
    fail(o, "expected 5 rows");
    return o;
  }
  std::ostringstream detail;
  for (const auto& [p, est] : rows) {
    detail << "t(" << num(p) << ")=" << num(est) << " ";
    if (p == 1.0 && std::abs(est - 1.0) > 1e-6) fail(o, "t(1) != 1");
    if (p != 1.0 && !(est > 1.0 + 1e-3)) fail(o, "t(" + num(p) + ") not > 1.001");
    if (est > 2.0 + 1e-9) fail(o, "estimate above 2");
    if (p == 0.05 && est < 1.9) fail(o, "t(0.05) < 1.9");
  }
  for (const auto& [p, est] : rows)
    for (const auto& [q, est2] : rows)
      if (p < q && est < est2 - 1e-12) fail(o, "estimates not non-increasing in p");
  if (secs >= 60.0) fail(o, "runtime " + num(secs) + " s");
  if (o.pass) o.detail = detail.str() + "(" + num(std::round(secs * 10) / 10) + " s)";
  return o;
}

// --- 2 ---------------------------------------------------------------------
Outcome closed_form() {
  Outcome o;
  const auto line = generate_test_space("line", 3, 0);
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::string art;
  for (double p : {1.0, 0.75, 0.5, 0.25, 0.1}) {
    for (int i = 0; i <= 40; ++i) {
      for (int j = 0; j <= 40; ++j) {
        const double x = -2.0 + 0.1 * i, y = -2.0 + 0.1 * j;
        const double general = pnorm(line, FreeElement({0.0, x, y}, 0), p);
        const double closed = pnorm_threepoint(x, y, p);
        worst = std::max(worst, std::abs(general - closed));
        art += num(general) + "\n";
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.artifact = art;
  if (worst > 1e-9) fail(o, "max deviation " + num(worst));
  if (secs >= 30.0) fail(o, "runtime " + num(secs) + " s");
  if (o.pass) o.detail = "41x41x5 grid, max deviation " + num(worst);
  return o;
}

// --- 3 ---------------------------------------------------------------------
Outcome isometry() {
  Outcome o;
  double worst = 0.0;
  std::size_t checks = 0;
  for (std::uint64_t k = 0; k < 50; ++k) {
    std::mt19937_64 rng(300 + k);
    const std::size_t n = 2 + rng() % 7;
    const auto space = FiniteMetricSpace::from_matrix(oracle::random_metric(n, rng), rng() % n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y) {
        const auto d = FreeElement::delta(n, space.base(), x) - FreeElement::delta(n, space.base(), y);
        for (double p : {1.0, 0.5, 0.25}) {
          const double norm = pnorm(space, d, p);
          worst = std::max(worst, std::abs(norm - space(x, y)));
          o.artifact += num(norm) + "\n";
          ++checks;
        }
      }
  }
  if (worst > 1e-9) fail(o, "max deviation " + num(worst));
  if (o.pass) o.detail = std::to_string(checks) + " pairs, max deviation " + num(worst);
  return o;
}

// --- 4 ---------------------------------------------------------------------
Outcome whitney() {
  Outcome o;
  std::size_t sets = 0;
  for (const auto& inst : grid_instances()) {
    const auto cover = build_whitney_from_nagata(inst.space, inst.subspace, 0.25);
    const auto expect = whitney_params(cover.nagata_d, cover.nagata_gamma, 0.25);
    if (cover.params.o != expect.o || cover.params.s != expect.s || cover.params.d != expect.d ||
        cover.params.a != expect.a)
      fail(o, "declared parameters differ from the Nagata constants");
    const auto rep = verify_whitney(inst.space, inst.subspace, cover);
    const std::size_t violations = rep.overlap.violations + rep.depth.violations + rep.eccentricity.violations +
                                   rep.ratio.violations + rep.anchor.violations + rep.empty_sets +
                                   rep.sets_touching_n;
    if (violations != 0) fail(o, std::to_string(violations) + " violation(s) on an instance");
    sets += cover.sets.size();
    o.artifact += "params " + std::to_string(cover.params.o) + " " + num(cover.params.s) + " " +
                  num(cover.params.d) + " " + num(cover.params.a) + "\n";
    for (std::size_t i = 0; i < cover.sets.size(); ++i)
      o.artifact += labels_json(inst.space, cover.sets[i]).dump() + " -> " + inst.space.label(cover.anchors[i]) + "\n";
  }
  if (o.pass) o.detail = "25 instances, " + std::to_string(sets) + " sets, zero violations";
  return o;
}

// --- 5 ---------------------------------------------------------------------
Outcome extension_bound_check() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double worst_ratio = 0.0;
  std::size_t maps = 0;
  std::uint64_t seed = 0;
  for (const auto& inst : grid_instances()) {
    const auto cover = build_whitney_from_nagata(inst.space, inst.subspace, 0.25);
    const PartitionOfUnity pou(inst.space, inst.subspace, cover);
    for (std::size_t x : inst.subspace.complement().members()) {
      const auto w = pou.weights(x);
      double sum = 0.0;
      for (const auto& [i, phi] : w) sum += phi;
      if (std::abs(sum - 1.0) > 1e-12) fail(o, "weights sum to " + num(sum));
      if (w.size() > cover.params.o) fail(o, "weight support exceeds o");
    }
    for (int k = 0; k < 10; ++k) {
      std::mt19937_64 rng(7000 + seed++);
      std::uniform_real_distribution<double> c(-1.0, 1.0);
      for (double p : {1.0, 0.5}) {
        PValuedMap f;
        f.domain = inst.subspace;
        f.dim = 3;
        f.p = p;
        f.values.assign(inst.space.size(), std::vector<double>(3, 0.0));
        for (std::size_t x : inst.subspace.members())
          for (double& v : f.values[x]) v = c(rng);
        const auto g = extend(inst.space, f, pou);
        for (std::size_t x : inst.subspace.members())
          if (g.values[x] != f.values[x]) fail(o, "restriction differs on N");
        const auto norm = coordinate_pnorm(p);
        const double lf = lipschitz_constant(inst.space, f, norm);
        const double lg = lipschitz_constant(inst.space, g, norm);
        const double bound =
            extension_bound(QuasiConstants{p, cover.params.o, cover.params.s, cover.params.d, cover.params.a});
        if (lg > bound * lf * (1.0 + kBoundTol)) fail(o, "Lip(f') above the bound");
        if (lf > 0.0) worst_ratio = std::max(worst_ratio, lg / lf / bound);
        o.artifact += num(lf) + " " + num(lg) + " " + num(bound) + "\n";
        ++maps;
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= 120.0) fail(o, "runtime " + num(secs) + " s");
  if (o.pass)
    o.detail = std::to_string(maps) + " maps, max Lip(f')/(bound Lip(f)) = " + num(worst_ratio) + " (" +
               num(std::round(secs * 10) / 10) + " s)";
  return o;
}

// --- 6 ---------------------------------------------------------------------
Outcome means() {
  Outcome o;
  std::mt19937_64 rng(600);
  std::uniform_real_distribution<double> value(0.0, 10.0), expo(1.0, 12.0);
  std::size_t held = 0;
  for (int k = 0; k < 10000; ++k) {
    std::vector<double> a(1 + rng() % 16);
    for (double& x : a) x = rng() % 6 == 0 ? 0.0 : value(rng);
    if (std::all_of(a.begin(), a.end(), [](double x) { return x == 0.0; })) a[0] = value(rng) + 1e-3;
    if (means_inequality_check(a, expo(rng))) ++held;
  }
  o.artifact = std::to_string(held) + "\n";
  if (held != 10000) fail(o, std::to_string(10000 - held) + " sample(s) violate the inequality");
  if (o.pass) o.detail = "10000/10000 samples";
  return o;
}

// --- 7 ---------------------------------------------------------------------
Outcome graph_decomposition() {
  Outcome o;
  std::vector<std::pair<oracle::Adj, std::size_t>> instances;
  for (std::size_t n = 1; n <= 9; ++n)
    for (const auto& t : oracle::trees_up_to_iso(n)) instances.emplace_back(t, 3);
  const std::size_t trees = instances.size();
  std::mt19937_64 rng(700);
  for (int k = 0; k < 20; ++k) instances.emplace_back(oracle::series_parallel(3 + rng() % 8, rng), 4);

  std::size_t runs = 0, trivial = 0;
  for (const auto& [adj, m] : instances) {
    const auto graph = oracle::to_weighted(adj);
    if (has_minor(graph, m)) fail(o, "instance has a K_" + std::to_string(m) + " minor");
    for (double r : {0.5, 1.0}) {
      const auto mg = discretize(graph, r / 10.0);
      try {
        const auto dec = kpr_decompose(mg, r, m);
        const auto rep = verify_graph_nagata(mg, dec);
        if (!rep.passed()) fail(o, "verify_graph_nagata failed");
        trivial += dec.trivial ? 1 : 0;
        o.artifact += std::to_string(dec.clusters.size()) + " " + num(rep.max_diameter) + " " +
                      num(rep.diameter_bound) + " " + std::to_string(rep.max_ball_multiplicity) + "\n";
      } catch (const ResidualActiveClusterError&) {
        fail(o, "residual active cluster");
      }
      ++runs;
    }
  }
  if (o.pass)
    o.detail = std::to_string(trees) + " trees + 20 series-parallel graphs, " + std::to_string(runs) + " runs (" +
               std::to_string(trivial) + " within 24mr diameter)";
  return o;
}

// --- 8 ---------------------------------------------------------------------
Outcome minor_sanity() {
  Outcome o;
  std::size_t graphs = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto all = oracle::graphs_up_to_iso(n);
    std::size_t with_cycle = 0;
    for (const auto& g : all) {
      const bool cyc = oracle::has_cycle(g);
      if (has_minor(oracle::to_weighted(g), 3) != cyc) fail(o, "disagreement with cycle detection");
      with_cycle += cyc ? 1 : 0;
    }
    graphs += all.size();
    o.artifact += std::to_string(n) + " " + std::to_string(all.size()) + " " + std::to_string(with_cycle) + "\n";
  }
  oracle::Adj k5e(5);
  for (std::size_t v = 0; v < 5; ++v) k5e[v] = 0b11111u & ~(1u << v);
  k5e[0] &= ~0b10u;
  k5e[1] &= ~0b01u;
  if (has_minor(oracle::to_weighted(k5e), 5)) fail(o, "K5 minus an edge reported to contain K5");
  if (o.pass) o.detail = std::to_string(graphs) + " graphs up to isomorphism; K5-e has no K5 minor";
  return o;
}

// --- 9 ---------------------------------------------------------------------
Outcome free_norm_properties() {
  Outcome o;
  std::size_t samples = 0;
  for (std::uint64_t k = 0; k < 200; ++k) {
    std::mt19937_64 rng(900 + k);
    const std::size_t n = 2 + rng() % 6;
    const auto space = FiniteMetricSpace::from_matrix(oracle::random_metric(n, rng), 0);
    std::uniform_real_distribution<double> c(-2.0, 2.0), u(0.05, 1.0);
    FreeElement mu(n, 0), nu(n, 0);
    for (std::size_t x = 1; x < n; ++x) {
      mu.add(x, c(rng));
      nu.add(x, c(rng));
    }
    double p = u(rng), q = u(rng);
    if (p > q) std::swap(p, q);
    const double mp = pnorm(space, mu, p), mq = pnorm(space, mu, q);
    const double sum = pnorm(space, mu + nu, p), np = pnorm(space, nu, p);
    if (mp < mq - 1e-9) fail(o, "norm increased with p");
    if (std::pow(sum, p) > std::pow(mp, p) + std::pow(np, p) + 1e-9) fail(o, "p-triangle inequality failed");
    o.artifact += num(mp) + " " + num(mq) + " " + num(sum) + " " + num(np) + "\n";
    ++samples;
  }
  if (o.pass) o.detail = std::to_string(samples) + " samples";
  return o;
}

std::vector<Criterion> criteria() {
  return {{1, "counterexample reproduction", counterexample},
          {2, "closed-form agreement", closed_form},
          {3, "isometry of point masses", isometry},
          {4, "Whitney cover certification", whitney},
          {5, "extension bound", extension_bound_check},
          {6, "means inequality", means},
          {7, "graph decomposition", graph_decomposition},
          {8, "minor oracle sanity", minor_sanity},
          {9, "free-norm monotonicity and p-triangle", free_norm_properties}};
}

std::vector<Outcome> run_all(const char* threads, bool print) {
  setenv("LIPEXT_THREADS", threads, 1);
  set_thread_limit(0);
  std::vector<Outcome> outcomes;
  for (const auto& c : criteria()) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (print)
      std::cout << "criterion " << c.id << " [" << c.name << "]: " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail
                << std::endl;
    outcomes.push_back(std::move(o));
  }
  return outcomes;
}

}  // namespace

int main() {
  const auto single = run_all("1", true);
  const auto multi = run_all("4", false);
  bool all_pass = true;
  for (const auto& o : single) all_pass = all_pass && o.pass;

  std::vector<int> differing;
  for (std::size_t i = 0; i < single.size(); ++i)
    if (single[i].artifact != multi[i].artifact || single[i].pass != multi[i].pass)
      differing.push_back(static_cast<int>(i + 1));
  const bool deterministic = differing.empty();
  std::cout << "criterion 10 [determinism across LIPEXT_THREADS=1,4]: " << (deterministic ? "PASS" : "FAIL") << " - ";
  if (deterministic) {
    std::size_t bytes = 0;
    for (const auto& o : single) bytes += o.artifact.size();
    std::cout << "artifacts of criteria 1-9 identical (" << bytes << " bytes)";
  } else {
    std::cout << "artifacts differ for criteria";
    for (int i : differing) std::cout << " " << i;
  }
  std::cout << std::endl;
  return all_pass && deterministic ? 0 : 1;
}
