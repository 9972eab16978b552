#pragma once

#include <cstddef>
#include <vector>

#include "lipext/free_space.hpp"
#include "lipext/metric.hpp"

namespace lipext {

/// Extension problem for the canonical embedding N -> F_p(N), x -> delta(x).
/// Every added point y in M \ N is sent to a free element with coefficient
/// vector c_y over the non-base points of N; the box bounds those
/// coefficients, flattened as [added point][coordinate].
struct TraceProblem {
  FiniteMetricSpace space;
  PointSet subspace;
  double p = 1.0;
  std::vector<double> lower;
  std::vector<double> upper;
};

/// M = {0, 1, 2, 3/2} on the line, N = {0, 1, 2}, base 0, box [0, 2]^2.
TraceProblem counterexample_problem(double p);

/// Problem with the default box [-B, B] per coordinate, where
/// B = 1 + diam(M) / (smallest positive distance) (a heuristic box).
/// Throws Error(EmptySubspace | EmptyComplement | DomainError).
TraceProblem make_trace_problem(const FiniteMetricSpace& space, const PointSet& subspace, double p);

using TraceCoefficients = std::vector<std::vector<double>>;  // [added point][coordinate]

/// Derived data shared by all evaluations of one problem.
class TraceModel {
 public:
  explicit TraceModel(const TraceProblem& problem);

  const TraceProblem& problem() const noexcept { return problem_; }
  const std::vector<std::size_t>& subspace_points() const noexcept { return n_points_; }
  const std::vector<std::size_t>& added_points() const noexcept { return added_; }
  /// Indices into subspace_points() of the coordinates (non-base points).
  const std::vector<std::size_t>& coordinate_points() const noexcept { return coords_; }
  std::size_t dimension() const noexcept { return added_.size() * coords_.size(); }
  bool uses_closed_form() const noexcept { return closed_form_; }
  const FiniteMetricSpace& free_base_space() const noexcept { return n_space_; }

  /// Lipschitz constant over all pairs of M of the map given by `coeffs`.
  double extension_lip(const TraceCoefficients& coeffs) const;
  double extension_lip_flat(const std::vector<double>& flat) const;

  TraceCoefficients unflatten(const std::vector<double>& flat) const;

 private:
  double norm(const std::vector<double>& c) const;

  TraceProblem problem_;
  std::vector<std::size_t> n_points_;
  std::vector<std::size_t> added_;
  std::vector<std::size_t> coords_;
  FiniteMetricSpace n_space_;
  bool closed_form_ = false;
  std::size_t cf_near_ = 0;  // coordinate slot of the point at distance t
  double cf_scale_ = 1.0;
};

/// Lipschitz constant of the extension given by `coeffs`. Pairs inside N
/// contribute exactly 1 (delta is an isometry). Free norms use the 3-point
/// closed form when N is a scaled copy of {0, 1, 2} with the base at an end,
/// the exact Steiner recursion otherwise. Throws Error(SizeLimit) from pnorm.
double extension_lip(const TraceProblem& problem, const TraceCoefficients& coeffs);

struct TraceEstimate {
  double p = 1.0;
  TraceCoefficients best_coeffs;
  double achieved_lip = 0.0;
  double grid_resolution = 0.0;
  std::size_t refine_rounds_used = 0;
  /// Best Lipschitz constant over extensions sending each added point to a
  /// single delta(x), x in N.
  double certified_upper = 0.0;
  double lower_bound = 1.0;
};

/// Largest number of grid cells evaluated by one search pass.
inline constexpr std::size_t kMaxTraceGrid = 4'000'000;

/// Grid search over the box at `resolution`, then up to `refine_rounds`
/// local passes (+-h around the incumbent at step h/10), stopping once a
/// pass improves by less than 1e-7. Ties go to the lexicographically first
/// grid index. Throws Error(EmptyComplement | DomainError | SizeLimit).
TraceEstimate trace_estimate(const TraceProblem& problem, double resolution, std::size_t refine_rounds);

/// Runs trace_estimate for every p, then re-evaluates each p at the pooled
/// incumbents of all p and keeps the best. Because every free norm is
/// non-increasing in p, the pooled minima are non-increasing in p.
std::vector<TraceEstimate> trace_table(const FiniteMetricSpace& space, const PointSet& subspace,
                                       const std::vector<double>& p_list, double resolution,
                                       std::size_t refine_rounds, bool counterexample_box = false);

struct CounterexampleRow {
  double p = 1.0;
  double estimate = 0.0;
  double best_a = 0.0;
  double best_b = 0.0;
  double certified_upper = 0.0;
};

std::vector<CounterexampleRow> reproduce_counterexample(const std::vector<double>& p_list, double resolution = 0.01,
                                                        std::size_t refine_rounds = 3);

}  // namespace lipext
