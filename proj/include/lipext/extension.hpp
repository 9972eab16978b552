#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "lipext/covers.hpp"
#include "lipext/free_space.hpp"
#include "lipext/metric.hpp"

namespace lipext {

/// C(p, n) = n^(1/p - 1): the p-norm of a sum of n terms is at most
/// C(p, n) times the sum of their norms.
double quasi_constant(double p, double n);

struct QuasiConstants {
  double p = 1.0;
  std::size_t o = 1;
  double s = 0.0;
  double d = 0.0;
  double a = 0.0;
};

/// D(p, s, d, a) = max{32/s C(p,2)(d+2)a, (3+d)(2^(p+1)/s^p + 1)^(1/p)}.
double extension_constant_d(double p, double s, double d, double a);

/// D(p, s, d, a) * C(p, o) * log2(2o). Throws Error(DomainError).
double extension_bound(const QuasiConstants& q);
double extension_bound(double p, double o, double s, double d, double a);

/// Norm on a finite-dimensional target, evaluated on a coordinate vector.
using TargetNorm = std::function<double(std::span<const double>)>;

/// (sum |v_i|^p)^(1/p), a p-norm on R^k.
TargetNorm coordinate_pnorm(double p);

/// Norm of F_p(space) on coefficient vectors indexed by the points of
/// `space` (the base coefficient is ignored).
TargetNorm free_space_norm(const FiniteMetricSpace& space, double p);

/// Map from a subset of a space into a p-normed coordinate target. `values`
/// has one entry per point of the ambient space; only domain entries are
/// meaningful.
struct PValuedMap {
  PointSet domain;
  std::vector<std::vector<double>> values;
  std::size_t dim = 0;
  double p = 1.0;
};

/// Partition of unity phi_i(x) = rho(x, M \ K_i)^m / sum_j rho(x, M \ K_j)^m
/// over a Whitney cover. m defaults to log2(2o).
class PartitionOfUnity {
 public:
  PartitionOfUnity(const FiniteMetricSpace& space, const PointSet& subspace, WhitneyCover cover);
  PartitionOfUnity(const FiniteMetricSpace& space, const PointSet& subspace, WhitneyCover cover, double m);

  double exponent() const noexcept { return m_; }
  const WhitneyCover& cover() const noexcept { return cover_; }
  const PointSet& subspace() const noexcept { return subspace_; }

  /// Sparse weights (set index, phi_i(x)) at x in M \ N, sorted by index.
  /// Throws Error(DomainError) for x in N, Error(UncoveredPoint) when every
  /// raw weight vanishes.
  std::vector<std::pair<std::size_t, double>> weights(std::size_t x) const;

 private:
  const FiniteMetricSpace* space_;
  PointSet subspace_;
  WhitneyCover cover_;
  double m_;
};

/// f'(x) = f(x) on N and sum_i phi_i(x) f(anchor_i) elsewhere.
/// Throws Error(DomainMismatch) when f is not defined on exactly N.
PValuedMap extend(const FiniteMetricSpace& space, const PValuedMap& f, const PartitionOfUnity& pou);

/// max over pairs x != y of the domain of ||g(x) - g(y)|| / rho(x, y).
double lipschitz_constant(const FiniteMetricSpace& space, const PValuedMap& g, const TargetNorm& norm);

/// sum a_i^(m-1) / sum a_i^m <= n^(1/m) / (sum a_i^m)^(1/m), checked with a
/// relative tolerance of 1e-12. Throws Error(DomainError) if every a_i is 0
/// or some a_i is negative.
bool means_inequality_check(std::span<const double> a, double m);

}  // namespace lipext
