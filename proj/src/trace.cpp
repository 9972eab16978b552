#include "lipext/trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "lipext/parallel.hpp"

namespace lipext {

namespace {

bool close(double a, double b) { return std::abs(a - b) <= kMetricTol * std::max({1.0, std::abs(a), std::abs(b)}); }

void check_problem(const TraceProblem& problem) {
  const PExponent p(problem.p);
  (void)p;
  const std::size_t n = problem.space.size();
  if (problem.subspace.universe() != n) throw Error(ErrorKind::DomainMismatch, "subset is not over this space");
  if (problem.subspace.empty()) throw Error(ErrorKind::EmptySubspace, "N is empty");
  if (problem.subspace.count() == n) throw Error(ErrorKind::EmptyComplement, "N equals M");
}

}  // namespace

TraceProblem counterexample_problem(double p) {
  const std::vector<double> xs{0.0, 1.0, 2.0, 1.5};
  Matrix dist(4, std::vector<double>(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) dist[i][j] = std::abs(xs[i] - xs[j]);
  TraceProblem problem;
  problem.space = FiniteMetricSpace({"0", "1", "2", "1.5"}, dist, 0);
  const std::vector<std::size_t> n{0, 1, 2};
  problem.subspace = PointSet(4, n);
  problem.p = p;
  problem.lower = {0.0, 0.0};
  problem.upper = {2.0, 2.0};
  check_problem(problem);
  return problem;
}

TraceProblem make_trace_problem(const FiniteMetricSpace& space, const PointSet& subspace, double p) {
  TraceProblem problem;
  problem.space = space;
  problem.subspace = subspace;
  problem.p = p;
  check_problem(problem);
  double smallest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < space.size(); ++i)
    for (std::size_t j = i + 1; j < space.size(); ++j)
      if (space(i, j) > 0.0) smallest = std::min(smallest, space(i, j));
  const double bound = 1.0 + (std::isfinite(smallest) ? space.diameter() / smallest : 0.0);
  const std::size_t dim = (space.size() - subspace.count()) * (subspace.count() - 1);
  problem.lower.assign(dim, -bound);
  problem.upper.assign(dim, bound);
  return problem;
}

TraceModel::TraceModel(const TraceProblem& problem) : problem_(problem) {
  check_problem(problem_);
  const std::size_t n = problem_.space.size();
  for (std::size_t i = 0; i < n; ++i) (problem_.subspace.contains(i) ? n_points_ : added_).push_back(i);
  n_space_ = problem_.space.restrict_to(n_points_, 0);
  for (std::size_t k = 0; k < n_points_.size(); ++k)
    if (k != n_space_.base()) coords_.push_back(k);
  if (problem_.lower.size() != dimension() || problem_.upper.size() != dimension())
    throw Error(ErrorKind::DomainMismatch, "box has " + std::to_string(problem_.lower.size()) +
                                               " coordinates, expected " + std::to_string(dimension()));
  for (std::size_t i = 0; i < dimension(); ++i)
    if (!std::isfinite(problem_.lower[i]) || !std::isfinite(problem_.upper[i]) || problem_.lower[i] > problem_.upper[i])
      throw Error(ErrorKind::DomainError, "box bounds must be finite with lower <= upper");

  // A scaled {0, 1, 2} with the base at an end: the closed form applies.
  if (n_points_.size() == 3) {
    const std::size_t b = n_space_.base();
    const std::size_t u = coords_[0], v = coords_[1];
    const double bu = n_space_(b, u), bv = n_space_(b, v), uv = n_space_(u, v);
    if (close(bv, 2.0 * bu) && close(uv, bu)) {
      closed_form_ = true;
      cf_near_ = 0;
      cf_scale_ = bu;
    } else if (close(bu, 2.0 * bv) && close(uv, bv)) {
      closed_form_ = true;
      cf_near_ = 1;
      cf_scale_ = bv;
    }
  }
}

double TraceModel::norm(const std::vector<double>& c) const {
  if (closed_form_) {
    const double x = c[cf_near_];
    const double y = c[1 - cf_near_];
    return cf_scale_ * pnorm_threepoint(x, y, problem_.p);
  }
  std::vector<double> full(n_points_.size(), 0.0);
  for (std::size_t k = 0; k < coords_.size(); ++k) full[coords_[k]] = c[k];
  return pnorm(n_space_, FreeElement(std::move(full), n_space_.base()), problem_.p);
}

double TraceModel::extension_lip(const TraceCoefficients& coeffs) const {
  if (coeffs.size() != added_.size()) throw Error(ErrorKind::DomainMismatch, "one coefficient vector per added point");
  for (const auto& c : coeffs)
    if (c.size() != coords_.size()) throw Error(ErrorKind::DomainMismatch, "coefficient vector length");
  const auto& space = problem_.space;
  double lip = n_points_.size() >= 2 ? 1.0 : 0.0;
  std::vector<double> diff(coords_.size());
  for (std::size_t a = 0; a < added_.size(); ++a) {
    const std::size_t y = added_[a];
    for (std::size_t k = 0; k < n_points_.size(); ++k) {
      for (std::size_t c = 0; c < coords_.size(); ++c) diff[c] = coeffs[a][c] - (coords_[c] == k ? 1.0 : 0.0);
      lip = std::max(lip, norm(diff) / space(y, n_points_[k]));
    }
    for (std::size_t b = a + 1; b < added_.size(); ++b) {
      for (std::size_t c = 0; c < coords_.size(); ++c) diff[c] = coeffs[a][c] - coeffs[b][c];
      lip = std::max(lip, norm(diff) / space(y, added_[b]));
    }
  }
  return lip;
}

TraceCoefficients TraceModel::unflatten(const std::vector<double>& flat) const {
  TraceCoefficients out(added_.size(), std::vector<double>(coords_.size()));
  for (std::size_t a = 0; a < added_.size(); ++a)
    for (std::size_t c = 0; c < coords_.size(); ++c) out[a][c] = flat[a * coords_.size() + c];
  return out;
}

double TraceModel::extension_lip_flat(const std::vector<double>& flat) const { return extension_lip(unflatten(flat)); }

double extension_lip(const TraceProblem& problem, const TraceCoefficients& coeffs) {
  return TraceModel(problem).extension_lip(coeffs);
}

namespace {

struct GridBest {
  std::vector<double> point;
  double value = std::numeric_limits<double>::infinity();
};

// Cells whose value is within this relative gap of the grid minimum count as
// tied; refinement starts from each of them.
constexpr double kTieTol = 1e-9;
constexpr std::size_t kMaxStarts = 64;

// Evaluates the product grid axes[0] x axes[1] x ... in lexicographic order.
// Returns the tied minimisers in lexicographic order (first = strict
// lexicographic winner), at most `max_ties` of them.
std::vector<GridBest> search_grid(const TraceModel& model, const std::vector<std::vector<double>>& axes,
                                  std::size_t max_ties) {
  std::size_t total = 1;
  for (const auto& axis : axes) {
    if (axis.empty()) return {};
    if (total > kMaxTraceGrid / axis.size())
      throw Error(ErrorKind::SizeLimit, "coefficient grid exceeds " + std::to_string(kMaxTraceGrid) +
                                            " cells; use a coarser resolution");
    total *= axis.size();
  }
  auto decode = [&](std::size_t idx) {
    std::vector<double> point(axes.size());
    for (std::size_t d = axes.size(); d-- > 0;) {
      point[d] = axes[d][idx % axes[d].size()];
      idx /= axes[d].size();
    }
    return point;
  };
  std::vector<double> values(total);
  parallel_for(total, [&](std::size_t i) { values[i] = model.extension_lip_flat(decode(i)); });
  std::size_t best = 0;
  for (std::size_t i = 1; i < total; ++i)
    if (values[i] < values[best]) best = i;
  std::vector<GridBest> out{{decode(best), values[best]}};
  const double cutoff = values[best] + kTieTol * std::max(1.0, values[best]);
  for (std::size_t i = 0; i < total && out.size() < max_ties; ++i)
    if (i != best && values[i] <= cutoff) out.push_back({decode(i), values[i]});
  return out;
}

std::vector<double> full_axis(double lo, double hi, double h) {
  const auto steps = static_cast<std::size_t>(std::floor((hi - lo) / h + 1e-9));
  std::vector<double> axis;
  axis.reserve(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) axis.push_back(std::min(hi, lo + static_cast<double>(i) * h));
  return axis;
}

std::vector<double> local_axis(double center, double lo, double hi, double h) {
  std::vector<double> axis;
  for (int t = -10; t <= 10; ++t) {
    const double v = std::clamp(center + t * (h / 10.0), lo, hi);
    if (axis.empty() || v != axis.back()) axis.push_back(v);
  }
  return axis;
}

// Best extension that sends each added point to a single delta(x). Since
// delta is an isometry its Lipschitz constant is read off the metric.
std::pair<double, std::vector<std::size_t>> best_anchor_assignment(const TraceModel& model) {
  const auto& space = model.problem().space;
  const auto& n_pts = model.subspace_points();
  const auto& added = model.added_points();
  auto lip_of = [&](const std::vector<std::size_t>& assign) {
    double lip = n_pts.size() >= 2 ? 1.0 : 0.0;
    for (std::size_t a = 0; a < added.size(); ++a) {
      for (std::size_t x : n_pts) lip = std::max(lip, space(assign[a], x) / space(added[a], x));
      for (std::size_t b = a + 1; b < added.size(); ++b)
        lip = std::max(lip, space(assign[a], assign[b]) / space(added[a], added[b]));
    }
    return lip;
  };
  double combos = std::pow(static_cast<double>(n_pts.size()), static_cast<double>(added.size()));
  std::vector<std::size_t> best(added.size());
  if (combos > 1e5) {
    // Too many assignments: use nearest points of N (still a valid bound).
    for (std::size_t a = 0; a < added.size(); ++a) {
      std::size_t arg = n_pts[0];
      for (std::size_t x : n_pts)
        if (space(added[a], x) < space(added[a], arg)) arg = x;
      best[a] = arg;
    }
    return {lip_of(best), best};
  }
  std::vector<std::size_t> digits(added.size(), 0), assign(added.size());
  double best_lip = std::numeric_limits<double>::infinity();
  while (true) {
    for (std::size_t a = 0; a < added.size(); ++a) assign[a] = n_pts[digits[a]];
    const double lip = lip_of(assign);
    if (lip < best_lip) {
      best_lip = lip;
      best = assign;
    }
    std::size_t pos = added.size();
    while (pos > 0 && ++digits[pos - 1] == n_pts.size()) digits[--pos] = 0;
    if (pos == 0) break;
  }
  return {best_lip, best};
}

}  // namespace

TraceEstimate trace_estimate(const TraceProblem& problem, double resolution, std::size_t refine_rounds) {
  if (!(resolution > 0.0)) throw Error(ErrorKind::DomainError, "resolution must be positive");
  const TraceModel model(problem);
  const std::size_t dim = model.dimension();

  TraceEstimate est;
  est.p = problem.p;
  est.grid_resolution = resolution;
  est.lower_bound = model.subspace_points().size() >= 2 ? 1.0 : 0.0;

  std::vector<std::vector<double>> axes(dim);
  for (std::size_t d = 0; d < dim; ++d) axes[d] = full_axis(problem.lower[d], problem.upper[d], resolution);
  const std::vector<GridBest> starts = search_grid(model, axes, kMaxStarts);

  // Refine from every tied grid minimiser: for p < 1 the objective has
  // infinite-slope ridges, so equal coarse values can hide very different
  // neighbourhoods. The first start that ends strictly best wins.
  GridBest incumbent;
  for (const GridBest& start : starts) {
    GridBest current = start;
    double h = resolution;
    std::size_t used = 0;
    for (std::size_t round = 0; round < refine_rounds; ++round) {
      for (std::size_t d = 0; d < dim; ++d)
        axes[d] = local_axis(current.point[d], problem.lower[d], problem.upper[d], h);
      const GridBest local = search_grid(model, axes, 1).front();
      ++used;
      const double improvement = current.value - local.value;
      if (local.value < current.value) current = local;
      h /= 10.0;
      if (improvement < 1e-7) break;
    }
    if (current.value < incumbent.value) {
      incumbent = current;
      est.refine_rounds_used = used;
    }
  }

  const auto [anchor_lip, anchors] = best_anchor_assignment(model);
  est.certified_upper = anchor_lip;
  if (incumbent.value <= anchor_lip) {
    est.best_coeffs = model.unflatten(incumbent.point);
    est.achieved_lip = incumbent.value;
  } else {
    // The grid missed the single-anchor extension; report that instead.
    est.best_coeffs.assign(model.added_points().size(), std::vector<double>(model.coordinate_points().size(), 0.0));
    const auto& n_pts = model.subspace_points();
    for (std::size_t a = 0; a < anchors.size(); ++a) {
      const std::size_t k = static_cast<std::size_t>(std::find(n_pts.begin(), n_pts.end(), anchors[a]) - n_pts.begin());
      const auto& coords = model.coordinate_points();
      const auto it = std::find(coords.begin(), coords.end(), k);
      if (it != coords.end()) est.best_coeffs[a][static_cast<std::size_t>(it - coords.begin())] = 1.0;
    }
    est.achieved_lip = anchor_lip;
  }
  return est;
}

std::vector<TraceEstimate> trace_table(const FiniteMetricSpace& space, const PointSet& subspace,
                                       const std::vector<double>& p_list, double resolution,
                                       std::size_t refine_rounds, bool counterexample_box) {
  auto problem_for = [&](double p) {
    if (counterexample_box) {
      TraceProblem pr = counterexample_problem(p);
      pr.space = space;
      pr.subspace = subspace;
      return pr;
    }
    return make_trace_problem(space, subspace, p);
  };

  std::vector<double> distinct;
  for (double p : p_list)
    if (std::find(distinct.begin(), distinct.end(), p) == distinct.end()) distinct.push_back(p);

  std::vector<TraceEstimate> own;
  own.reserve(distinct.size());
  for (double p : distinct) own.push_back(trace_estimate(problem_for(p), resolution, refine_rounds));

  std::map<double, TraceEstimate> pooled;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    const TraceModel model(problem_for(distinct[i]));
    TraceEstimate best = own[i];
    for (std::size_t j = 0; j < own.size(); ++j) {
      if (j == i) continue;
      const double v = model.extension_lip(own[j].best_coeffs);
      if (v < best.achieved_lip) {
        best.achieved_lip = v;
        best.best_coeffs = own[j].best_coeffs;
      }
    }
    pooled.emplace(distinct[i], std::move(best));
  }

  std::vector<TraceEstimate> rows;
  rows.reserve(p_list.size());
  for (double p : p_list) rows.push_back(pooled.at(p));
  return rows;
}

std::vector<CounterexampleRow> reproduce_counterexample(const std::vector<double>& p_list, double resolution,
                                                        std::size_t refine_rounds) {
  const TraceProblem base = counterexample_problem(1.0);
  const auto table = trace_table(base.space, base.subspace, p_list, resolution, refine_rounds, true);
  std::vector<CounterexampleRow> rows;
  rows.reserve(table.size());
  for (const auto& est : table)
    rows.push_back({est.p, est.achieved_lip, est.best_coeffs[0][0], est.best_coeffs[0][1], est.certified_upper});
  return rows;
}

}  // namespace lipext
