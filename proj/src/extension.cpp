#include "lipext/extension.hpp"

#include <algorithm>
#include <cmath>

namespace lipext {

double quasi_constant(double p, double n) {
  if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorKind::DomainError, "p must lie in (0, 1]");
  if (!(n >= 1.0)) throw Error(ErrorKind::DomainError, "n must be at least 1");
  return std::pow(n, 1.0 / p - 1.0);
}

double extension_constant_d(double p, double s, double d, double a) {
  if (!(s > 0.0 && d > 0.0 && a > 0.0)) throw Error(ErrorKind::DomainError, "s, d, a must be positive");
  const double first = 32.0 / s * quasi_constant(p, 2.0) * (d + 2.0) * a;
  const double second = (3.0 + d) * std::pow(std::pow(2.0, p + 1.0) / std::pow(s, p) + 1.0, 1.0 / p);
  return std::max(first, second);
}

double extension_bound(double p, double o, double s, double d, double a) {
  if (!(o >= 1.0) || std::floor(o) != o) throw Error(ErrorKind::DomainError, "o must be an integer >= 1");
  return extension_constant_d(p, s, d, a) * quasi_constant(p, o) * std::log2(2.0 * o);
}

double extension_bound(const QuasiConstants& q) {
  return extension_bound(q.p, static_cast<double>(q.o), q.s, q.d, q.a);
}

TargetNorm coordinate_pnorm(double p) {
  const PExponent exponent(p);
  return [p](std::span<const double> v) {
    if (p == 1.0) {
      double sum = 0.0;
      for (double c : v) sum += std::abs(c);
      return sum;
    }
    double sum = 0.0;
    for (double c : v) sum += std::pow(std::abs(c), p);
    return std::pow(sum, 1.0 / p);
  };
}

TargetNorm free_space_norm(const FiniteMetricSpace& space, double p) {
  const PExponent exponent(p);
  return [space, p](std::span<const double> v) {
    return pnorm(space, FreeElement(std::vector<double>(v.begin(), v.end()), space.base()), p);
  };
}

PartitionOfUnity::PartitionOfUnity(const FiniteMetricSpace& space, const PointSet& subspace, WhitneyCover cover)
    : PartitionOfUnity(space, subspace, cover, std::log2(2.0 * static_cast<double>(cover.params.o))) {}

PartitionOfUnity::PartitionOfUnity(const FiniteMetricSpace& space, const PointSet& subspace, WhitneyCover cover,
                                   double m)
    : space_(&space), subspace_(subspace), cover_(std::move(cover)), m_(m) {
  if (!(m_ >= 1.0)) throw Error(ErrorKind::DomainError, "sharpening exponent must be >= 1");
  if (subspace_.universe() != space.size()) throw Error(ErrorKind::DomainMismatch, "subspace mask size");
}

std::vector<std::pair<std::size_t, double>> PartitionOfUnity::weights(std::size_t x) const {
  if (subspace_.contains(x)) throw Error(ErrorKind::DomainError, "partition weights are defined off N only");
  std::vector<std::pair<std::size_t, double>> out;
  double total = 0.0;
  for (std::size_t i = 0; i < cover_.sets.size(); ++i) {
    const PointSet& k = cover_.sets[i];
    if (!k.contains(x)) continue;
    const double raw = std::pow(set_distance(*space_, x, k.complement()), m_);
    if (raw > 0.0) {
      out.emplace_back(i, raw);
      total += raw;
    }
  }
  if (out.empty() || !(total > 0.0))
    throw Error(ErrorKind::UncoveredPoint, "no cover set reaches point " + space_->label(x));
  for (auto& [i, w] : out) w /= total;
  return out;
}

PValuedMap extend(const FiniteMetricSpace& space, const PValuedMap& f, const PartitionOfUnity& pou) {
  const std::size_t n = space.size();
  if (f.domain.universe() != n || f.values.size() != n)
    throw Error(ErrorKind::DomainMismatch, "map is not over this space");
  if (!(f.domain == pou.subspace())) throw Error(ErrorKind::DomainMismatch, "map must be defined on exactly N");
  const auto& cover = pou.cover();
  PValuedMap out;
  out.domain = PointSet::all(n);
  out.dim = f.dim;
  out.p = f.p;
  out.values.assign(n, std::vector<double>(f.dim, 0.0));
  for (std::size_t x = 0; x < n; ++x) {
    if (f.domain.contains(x)) {
      if (f.values[x].size() != f.dim) throw Error(ErrorKind::DomainMismatch, "inconsistent target dimension");
      out.values[x] = f.values[x];
      continue;
    }
    for (const auto& [i, w] : pou.weights(x)) {
      const std::size_t anchor = cover.anchors.at(i);
      if (!f.domain.contains(anchor)) throw Error(ErrorKind::DomainMismatch, "anchor outside the map's domain");
      for (std::size_t c = 0; c < f.dim; ++c) out.values[x][c] += w * f.values[anchor][c];
    }
  }
  return out;
}

double lipschitz_constant(const FiniteMetricSpace& space, const PValuedMap& g, const TargetNorm& norm) {
  const auto pts = g.domain.members();
  double lip = 0.0;
  std::vector<double> diff(g.dim);
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      const auto& u = g.values[pts[a]];
      const auto& v = g.values[pts[b]];
      for (std::size_t c = 0; c < g.dim; ++c) diff[c] = u[c] - v[c];
      const double num = norm(diff);
      const double den = space(pts[a], pts[b]);
      if (den == 0.0) {
        if (num != 0.0) throw Error(ErrorKind::DomainError, "coincident points with different values");
        continue;
      }
      lip = std::max(lip, num / den);
    }
  }
  return lip;
}

bool means_inequality_check(std::span<const double> a, double m) {
  if (!(m >= 1.0)) throw Error(ErrorKind::DomainError, "m must be >= 1");
  double sum_m = 0.0, sum_m1 = 0.0;
  for (double v : a) {
    if (v < 0.0 || !std::isfinite(v)) throw Error(ErrorKind::DomainError, "entries must be finite and nonnegative");
    sum_m += std::pow(v, m);
    sum_m1 += std::pow(v, m - 1.0);
  }
  if (!(sum_m > 0.0)) throw Error(ErrorKind::DomainError, "all entries are zero");
  const double lhs = sum_m1 / sum_m;
  const double rhs = std::pow(static_cast<double>(a.size()), 1.0 / m) / std::pow(sum_m, 1.0 / m);
  return lhs <= rhs * (1.0 + 1e-12);
}

}  // namespace lipext
