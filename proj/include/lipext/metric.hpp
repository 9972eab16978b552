#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lipext/error.hpp"

namespace lipext {

/// Tolerance for the metric axioms.
inline constexpr double kMetricTol = 1e-12;
/// Tolerance for comparisons against quantified bounds.
inline constexpr double kBoundTol = 1e-9;

using Matrix = std::vector<std::vector<double>>;

struct TriangleViolation {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  double excess = 0.0;  // dist(i,j) - dist(i,k) - dist(k,j)
};

struct MetricReport {
  bool non_square = false;
  std::vector<std::pair<std::size_t, std::size_t>> negative_entries;
  std::vector<std::pair<std::size_t, std::size_t>> asymmetric_pairs;
  std::vector<std::size_t> nonzero_diagonal;
  std::vector<std::pair<std::size_t, std::size_t>> zero_off_diagonal;
  std::vector<TriangleViolation> triangle;

  bool ok() const {
    return !non_square && negative_entries.empty() && asymmetric_pairs.empty() &&
           nonzero_diagonal.empty() && zero_off_diagonal.empty() && triangle.empty();
  }
};

/// Checks every metric axiom on `dist` and lists all violations. Triangle
/// violations are reported once per unordered pair (i < j) and witness k.
MetricReport check_metric(const Matrix& dist);

/// Finite metric space with an explicit distance matrix and a base point.
/// Immutable after construction.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  /// Throws Error(NonSquare | NegativeEntry | TriangleViolation | InvalidMetric).
  FiniteMetricSpace(std::vector<std::string> labels, const Matrix& dist, std::size_t base = 0);

  /// Labels default to "0", "1", ...
  static FiniteMetricSpace from_matrix(const Matrix& dist, std::size_t base = 0);

  std::size_t size() const noexcept { return labels_.size(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return dist_[i * size() + j]; }
  std::size_t base() const noexcept { return base_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::size_t index_of(const std::string& label) const;
  double diameter() const noexcept;
  Matrix matrix() const;

  /// Sub-space on `indices` (kept in the given order). The base becomes the
  /// position of the old base if present, else `fallback_base`.
  FiniteMetricSpace restrict_to(std::span<const std::size_t> indices, std::size_t fallback_base = 0) const;

 private:
  std::vector<std::string> labels_;
  std::vector<double> dist_;
  std::size_t base_ = 0;
};

/// Membership mask over the points of one space.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t universe) : mask_(universe, 0) {}
  PointSet(std::size_t universe, std::span<const std::size_t> members);

  static PointSet all(std::size_t universe);

  std::size_t universe() const noexcept { return mask_.size(); }
  bool contains(std::size_t i) const noexcept { return i < mask_.size() && mask_[i] != 0; }
  void insert(std::size_t i) { mask_.at(i) = 1; }
  void erase(std::size_t i) { mask_.at(i) = 0; }
  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }
  std::vector<std::size_t> members() const;
  PointSet complement() const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::vector<char> mask_;
};

/// Exponent p of a p-norm, 0 < p <= 1.
class PExponent {
 public:
  explicit PExponent(double p);
  double value() const noexcept { return p_; }
  operator double() const noexcept { return p_; }

 private:
  double p_;
};

/// min over s in S of dist(x, s). Throws Error(EmptySet).
double set_distance(const FiniteMetricSpace& space, std::size_t x, const PointSet& s);

/// Smallest distance between a point of `a` and a point of `b`.
double set_to_set_distance(const FiniteMetricSpace& space, const PointSet& a, const PointSet& b);

double set_diameter(const FiniteMetricSpace& space, const PointSet& s);

/// Greedy s-separated, s-maximal net of S scanned by ascending index:
/// distinct net points are at distance > s, every point of S is within s.
PointSet maximal_separated_net(const FiniteMetricSpace& space, const PointSet& s, double scale);

/// Certified upper bound on the doubling constant. For each center x the ball
/// B(x, 2r) only changes at r = dist(x, y) / 2, and covering by r-balls gets
/// easier as r grows, so checking those radii (plus the diameter) bounds
/// every r > 0. Each ball is covered greedily by r-balls centred at points.
std::size_t doubling_constant_upper(const FiniteMetricSpace& space);

/// Greedy cover size of B(center, 2r) by closed r-balls centred at points
/// of the space (max-coverage, ties by lowest index).
std::size_t greedy_ball_cover(const FiniteMetricSpace& space, std::size_t center, double r);

}  // namespace lipext
