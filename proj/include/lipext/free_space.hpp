#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lipext/metric.hpp"

namespace lipext {

/// Largest number of non-base points in the support of an element whose
/// norm we compute.
inline constexpr std::size_t kMaxFreeSupport = 9;

/// Finitely supported element sum_x c_x delta(x) of the Lipschitz free
/// p-space over a finite pointed metric space. delta(base) = 0, so the
/// coefficient stored at the base index is always zero.
class FreeElement {
 public:
  explicit FreeElement(std::size_t n, std::size_t base = 0) : coeffs_(n, 0.0), base_(base) {}
  FreeElement(std::vector<double> coeffs, std::size_t base);

  static FreeElement delta(std::size_t n, std::size_t base, std::size_t x);

  std::size_t size() const noexcept { return coeffs_.size(); }
  std::size_t base() const noexcept { return base_; }
  double operator[](std::size_t i) const { return coeffs_.at(i); }
  void add(std::size_t i, double value);
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::vector<std::size_t> support() const;

  FreeElement& operator+=(const FreeElement& other);
  FreeElement& operator*=(double c);
  friend FreeElement operator+(FreeElement a, const FreeElement& b) { return a += b; }
  friend FreeElement operator-(FreeElement a, const FreeElement& b) { return a += (FreeElement(b) *= -1.0); }
  friend FreeElement operator*(double c, FreeElement a) { return a *= c; }

 private:
  std::vector<double> coeffs_;
  std::size_t base_;
};

/// One molecule a * (delta(from) - delta(to)).
struct Molecule {
  std::size_t from = 0;
  std::size_t to = 0;
  double amount = 0.0;
};

using MoleculeRepresentation = std::vector<Molecule>;

struct FreeNormResult {
  double norm = 0.0;
  MoleculeRepresentation representation;  // attains the norm
};

/// Exact p-norm of `mu` in F_p(space).
///
/// The norm is the least (sum |a_k|^p rho(x_k, y_k)^p)^(1/p) over molecule
/// representations, i.e. a min-cost flow on the complete graph with edge
/// cost |f|^p rho^p and divergence mu (the base absorbs the rest). For
/// p <= 1 that cost is concave and nondecreasing in each arc flow, so a
/// minimum sits at a vertex of the flow polyhedron, whose support is a
/// forest; padding with zero-flow edges makes it a spanning tree of equal
/// cost. Every tree edge carries the total divergence of the terminals on
/// its far side, which is what a Dreyfus-Wagner Steiner-tree recursion over
/// subsets of supp(mu) tracks. Non-support points may act as Steiner
/// junctions; the recursion ranges over all of them.
///
/// Throws Error(DomainError) for p outside (0, 1], Error(SizeLimit) when
/// the support exceeds kMaxFreeSupport points.
FreeNormResult pnorm_with_representation(const FiniteMetricSpace& space, const FreeElement& mu, double p);
double pnorm(const FiniteMetricSpace& space, const FreeElement& mu, double p);

/// Norm of x delta(1) + y delta(2) in F_p({0, 1, 2}) on the real line with
/// base 0: (min{|x|^p + 2^p|y|^p, 2^p|x+y|^p + |x|^p, |x+y|^p + |y|^p})^(1/p).
double pnorm_threepoint(double x, double y, double p);

struct RepresentationValue {
  FreeElement element;
  double cost = 0.0;
};

/// Element represented by `rep` and its cost (sum |a|^p rho^p)^(1/p).
/// Throws Error(DegeneratePair) when a molecule has from == to.
RepresentationValue eval_representation(const FiniteMetricSpace& space, const MoleculeRepresentation& rep,
                                        double p);

/// L_f(mu) = sum_x mu_x f(x) for f given as one coordinate vector per point.
/// Throws Error(BasePointNonzero) if f(base) != 0.
std::vector<double> linearize_apply(const std::vector<std::vector<double>>& f, const FreeElement& mu);

}  // namespace lipext
