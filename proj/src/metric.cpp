#include "lipext/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lipext {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NegativeEntry: return "NegativeEntry";
    case ErrorKind::TriangleViolation: return "TriangleViolation";
    case ErrorKind::InvalidMetric: return "InvalidMetric";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::EmptySubspace: return "EmptySubspace";
    case ErrorKind::EmptyComplement: return "EmptyComplement";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::UncoveredPoint: return "UncoveredPoint";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::DegeneratePair: return "DegeneratePair";
    case ErrorKind::BasePointNonzero: return "BasePointNonzero";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::NotInCluster: return "NotInCluster";
    case ErrorKind::ResidualActiveCluster: return "ResidualActiveCluster";
    case ErrorKind::UnknownKind: return "UnknownKind";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

MetricReport check_metric(const Matrix& dist) {
  MetricReport report;
  const std::size_t n = dist.size();
  for (const auto& row : dist) {
    if (row.size() != n) {
      report.non_square = true;
      return report;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = dist[i][j];
      if (!std::isfinite(v) || v < 0.0) report.negative_entries.emplace_back(i, j);
    }
  }
  if (!report.negative_entries.empty()) return report;

  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i][i] > kMetricTol) report.nonzero_diagonal.push_back(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(dist[i][j] - dist[j][i]) > kMetricTol) report.asymmetric_pairs.emplace_back(i, j);
      if (dist[i][j] <= kMetricTol) report.zero_off_diagonal.emplace_back(i, j);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double excess = dist[i][j] - dist[i][k] - dist[k][j];
        if (excess > kMetricTol) report.triangle.push_back({i, j, k, excess});
      }
    }
  }
  return report;
}

namespace {

std::string describe(const MetricReport& r) {
  std::ostringstream os;
  if (r.non_square) os << "matrix is not square";
  if (!r.negative_entries.empty()) {
    os << "negative or non-finite entry at (" << r.negative_entries.front().first << ","
       << r.negative_entries.front().second << ")";
  }
  if (!r.triangle.empty()) {
    const auto& t = r.triangle.front();
    os << "triangle inequality fails for (" << t.i << "," << t.j << "," << t.k << ") by " << t.excess;
  }
  if (!r.asymmetric_pairs.empty()) os << " asymmetric pairs: " << r.asymmetric_pairs.size();
  if (!r.nonzero_diagonal.empty()) os << " nonzero diagonal entries: " << r.nonzero_diagonal.size();
  if (!r.zero_off_diagonal.empty()) os << " coincident points: " << r.zero_off_diagonal.size();
  return os.str();
}

}  // namespace

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, const Matrix& dist, std::size_t base)
    : labels_(std::move(labels)), base_(base) {
  const MetricReport report = check_metric(dist);
  if (report.non_square) throw Error(ErrorKind::NonSquare, describe(report));
  if (!report.negative_entries.empty()) throw Error(ErrorKind::NegativeEntry, describe(report));
  if (!report.triangle.empty()) throw Error(ErrorKind::TriangleViolation, describe(report));
  if (!report.ok()) throw Error(ErrorKind::InvalidMetric, describe(report));
  const std::size_t n = dist.size();
  if (n == 0) throw Error(ErrorKind::InvalidMetric, "empty space");
  if (labels_.size() != n) throw Error(ErrorKind::InvalidMetric, "label count does not match matrix size");
  if (base_ >= n) throw Error(ErrorKind::InvalidMetric, "base index out of range");
  dist_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // Symmetrize within tolerance so downstream code sees exact symmetry.
      dist_[i * n + j] = (i == j) ? 0.0 : 0.5 * (dist[i][j] + dist[j][i]);
    }
  }
}

FiniteMetricSpace FiniteMetricSpace::from_matrix(const Matrix& dist, std::size_t base) {
  std::vector<std::string> labels;
  labels.reserve(dist.size());
  for (std::size_t i = 0; i < dist.size(); ++i) labels.push_back(std::to_string(i));
  return FiniteMetricSpace(std::move(labels), dist, base);
}

std::size_t FiniteMetricSpace::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw Error(ErrorKind::InvalidInput, "unknown label '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

double FiniteMetricSpace::diameter() const noexcept {
  return dist_.empty() ? 0.0 : *std::max_element(dist_.begin(), dist_.end());
}

Matrix FiniteMetricSpace::matrix() const {
  const std::size_t n = size();
  Matrix m(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = (*this)(i, j);
  return m;
}

FiniteMetricSpace FiniteMetricSpace::restrict_to(std::span<const std::size_t> indices,
                                                 std::size_t fallback_base) const {
  if (indices.empty()) throw Error(ErrorKind::EmptySet, "cannot restrict to an empty subset");
  Matrix m(indices.size(), std::vector<double>(indices.size()));
  std::vector<std::string> labels;
  std::size_t base = fallback_base;
  for (std::size_t a = 0; a < indices.size(); ++a) {
    labels.push_back(label(indices[a]));
    if (indices[a] == base_) base = a;
    for (std::size_t b = 0; b < indices.size(); ++b) m[a][b] = (*this)(indices[a], indices[b]);
  }
  return FiniteMetricSpace(std::move(labels), m, base);
}

PointSet::PointSet(std::size_t universe, std::span<const std::size_t> members) : mask_(universe, 0) {
  for (std::size_t i : members) {
    if (i >= universe) throw Error(ErrorKind::InvalidInput, "point index out of range");
    mask_[i] = 1;
  }
}

PointSet PointSet::all(std::size_t universe) {
  PointSet s(universe);
  std::fill(s.mask_.begin(), s.mask_.end(), 1);
  return s;
}

std::size_t PointSet::count() const noexcept {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), 1));
}

std::vector<std::size_t> PointSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i]) out.push_back(i);
  return out;
}

PointSet PointSet::complement() const {
  PointSet c(universe());
  for (std::size_t i = 0; i < mask_.size(); ++i) c.mask_[i] = mask_[i] ? 0 : 1;
  return c;
}

PExponent::PExponent(double p) : p_(p) {
  if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorKind::DomainError, "p must lie in (0, 1]");
}

double set_distance(const FiniteMetricSpace& space, std::size_t x, const PointSet& s) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t y = 0; y < s.universe(); ++y)
    if (s.contains(y)) best = std::min(best, space(x, y));
  if (std::isinf(best)) throw Error(ErrorKind::EmptySet, "distance to an empty set");
  return best;
}

double set_to_set_distance(const FiniteMetricSpace& space, const PointSet& a, const PointSet& b) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < a.universe(); ++x) {
    if (!a.contains(x)) continue;
    for (std::size_t y = 0; y < b.universe(); ++y)
      if (b.contains(y)) best = std::min(best, space(x, y));
  }
  return best;
}

double set_diameter(const FiniteMetricSpace& space, const PointSet& s) {
  const auto m = s.members();
  double diam = 0.0;
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = a + 1; b < m.size(); ++b) diam = std::max(diam, space(m[a], m[b]));
  return diam;
}

PointSet maximal_separated_net(const FiniteMetricSpace& space, const PointSet& s, double scale) {
  if (s.empty()) throw Error(ErrorKind::EmptySet, "net of an empty set");
  if (!(scale > 0.0)) throw Error(ErrorKind::DomainError, "net scale must be positive");
  PointSet net(space.size());
  std::vector<std::size_t> chosen;
  for (std::size_t x : s.members()) {
    const bool separated = std::all_of(chosen.begin(), chosen.end(),
                                       [&](std::size_t y) { return space(x, y) > scale; });
    if (separated) {
      chosen.push_back(x);
      net.insert(x);
    }
  }
  return net;
}

std::size_t greedy_ball_cover(const FiniteMetricSpace& space, std::size_t center, double r) {
  const std::size_t n = space.size();
  std::vector<char> uncovered(n, 0);
  std::size_t remaining = 0;
  for (std::size_t y = 0; y < n; ++y) {
    if (space(center, y) <= 2.0 * r + kMetricTol) {
      uncovered[y] = 1;
      ++remaining;
    }
  }
  std::size_t balls = 0;
  while (remaining > 0) {
    std::size_t best_c = 0, best_gain = 0;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t gain = 0;
      for (std::size_t y = 0; y < n; ++y)
        if (uncovered[y] && space(c, y) <= r + kMetricTol) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best_c = c;
      }
    }
    for (std::size_t y = 0; y < n; ++y)
      if (uncovered[y] && space(best_c, y) <= r + kMetricTol) {
        uncovered[y] = 0;
        --remaining;
      }
    ++balls;
  }
  return balls;
}

std::size_t doubling_constant_upper(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  std::size_t worst = 1;
  const double diam = space.diameter();
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<double> radii;
    for (std::size_t y = 0; y < n; ++y)
      if (y != x) radii.push_back(space(x, y) / 2.0);
    if (diam > 0.0) radii.push_back(diam);
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    for (double r : radii) worst = std::max(worst, greedy_ball_cover(space, x, r));
  }
  return worst;
}

}  // namespace lipext
