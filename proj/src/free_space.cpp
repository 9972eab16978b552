#include "lipext/free_space.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace lipext {

FreeElement::FreeElement(std::vector<double> coeffs, std::size_t base) : coeffs_(std::move(coeffs)), base_(base) {
  if (base_ >= coeffs_.size()) throw Error(ErrorKind::InvalidInput, "base index out of range");
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw Error(ErrorKind::InvalidInput, "non-finite coefficient");
  coeffs_[base_] = 0.0;
}

FreeElement FreeElement::delta(std::size_t n, std::size_t base, std::size_t x) {
  FreeElement e(n, base);
  e.add(x, 1.0);
  return e;
}

void FreeElement::add(std::size_t i, double value) {
  if (i == base_) return;
  coeffs_.at(i) += value;
}

std::vector<std::size_t> FreeElement::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (i != base_ && coeffs_[i] != 0.0) s.push_back(i);
  return s;
}

FreeElement& FreeElement::operator+=(const FreeElement& other) {
  if (other.size() != size() || other.base_ != base_)
    throw Error(ErrorKind::DomainMismatch, "free elements over different spaces");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  coeffs_[base_] = 0.0;
  return *this;
}

FreeElement& FreeElement::operator*=(double c) {
  for (double& v : coeffs_) v *= c;
  coeffs_[base_] = 0.0;
  return *this;
}

namespace {

void check_p(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorKind::DomainError, "p must lie in (0, 1]");
}

struct SteinerTables {
  std::size_t n = 0;
  std::vector<double> cost;          // [mask * n + v]
  std::vector<std::size_t> via;      // [mask * n + v]: node u the flow leaves from
  std::vector<std::size_t> split;    // [mask * n + u]: submask merged at u (0 for singletons)
  std::vector<double> flow;          // [mask]
};

void trace_tree(const SteinerTables& t, const std::vector<std::size_t>& terminals, std::size_t mask, std::size_t v,
                MoleculeRepresentation& out) {
  const std::size_t u = t.via[mask * t.n + v];
  if (u != v && t.flow[mask] != 0.0) out.push_back({u, v, t.flow[mask]});
  if ((mask & (mask - 1)) == 0) return;  // singleton: u is the terminal itself
  const std::size_t sub = t.split[mask * t.n + u];
  trace_tree(t, terminals, sub, u, out);
  trace_tree(t, terminals, mask ^ sub, u, out);
}

}  // namespace

FreeNormResult pnorm_with_representation(const FiniteMetricSpace& space, const FreeElement& mu, double p) {
  check_p(p);
  if (mu.size() != space.size() || mu.base() != space.base())
    throw Error(ErrorKind::DomainMismatch, "free element does not live over this space");
  const std::vector<std::size_t> terminals = mu.support();
  const std::size_t k = terminals.size();
  if (k == 0) return {};
  if (k > kMaxFreeSupport)
    throw Error(ErrorKind::SizeLimit, "support of " + std::to_string(k) + " points exceeds " +
                                          std::to_string(kMaxFreeSupport));

  const std::size_t n = space.size();
  const std::size_t masks = std::size_t{1} << k;
  std::vector<double> rp(n * n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) rp[u * n + v] = std::pow(space(u, v), p);

  double scale = 0.0;
  for (std::size_t t : terminals) scale += std::abs(mu[t]);

  SteinerTables t;
  t.n = n;
  t.cost.assign(masks * n, std::numeric_limits<double>::infinity());
  t.via.assign(masks * n, 0);
  t.split.assign(masks * n, 0);
  t.flow.assign(masks, 0.0);
  std::vector<double> weight(masks, 0.0);
  for (std::size_t mask = 1; mask < masks; ++mask) {
    double f = 0.0;
    for (std::size_t b = 0; b < k; ++b)
      if (mask & (std::size_t{1} << b)) f += mu[terminals[b]];
    // Cancellation residue must not be charged: |f|^p blows up tiny values.
    if (std::abs(f) <= 1e-12 * scale) f = 0.0;
    t.flow[mask] = f;
    weight[mask] = std::pow(std::abs(f), p);
  }

  std::vector<double> merged(n);
  for (std::size_t mask = 1; mask < masks; ++mask) {
    if ((mask & (mask - 1)) == 0) {
      std::size_t b = 0;
      while (!(mask & (std::size_t{1} << b))) ++b;
      const std::size_t term = terminals[b];
      for (std::size_t v = 0; v < n; ++v) {
        t.cost[mask * n + v] = weight[mask] * rp[term * n + v];
        t.via[mask * n + v] = term;
      }
      continue;
    }
    // Merge two disjoint subtrees at u; the lowest set bit stays in `sub`
    // so each unordered split is visited once.
    const std::size_t low = mask & (~mask + 1);
    for (std::size_t u = 0; u < n; ++u) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_sub = 0;
      for (std::size_t sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
        if (!(sub & low)) continue;
        const double c = t.cost[sub * n + u] + t.cost[(mask ^ sub) * n + u];
        if (c < best) {
          best = c;
          best_sub = sub;
        }
      }
      merged[u] = best;
      t.split[mask * n + u] = best_sub;
    }
    for (std::size_t v = 0; v < n; ++v) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_u = v;
      for (std::size_t u = 0; u < n; ++u) {
        const double c = merged[u] + weight[mask] * rp[u * n + v];
        if (c < best) {
          best = c;
          best_u = u;
        }
      }
      t.cost[mask * n + v] = best;
      t.via[mask * n + v] = best_u;
    }
  }

  FreeNormResult result;
  const std::size_t full = masks - 1;
  const double cost = t.cost[full * n + space.base()];
  result.norm = std::pow(cost, 1.0 / p);
  trace_tree(t, terminals, full, space.base(), result.representation);
  return result;
}

double pnorm(const FiniteMetricSpace& space, const FreeElement& mu, double p) {
  return pnorm_with_representation(space, mu, p).norm;
}

double pnorm_threepoint(double x, double y, double p) {
  check_p(p);
  const double two_p = std::pow(2.0, p);
  const double ax = std::pow(std::abs(x), p);
  const double ay = std::pow(std::abs(y), p);
  // Same cancellation rule as the Steiner recursion: x + y that vanishes up
  // to rounding is an exact zero (|t|^p has infinite slope at 0).
  const double sum = std::abs(x + y) <= 1e-12 * (std::abs(x) + std::abs(y)) ? 0.0 : x + y;
  const double axy = std::pow(std::abs(sum), p);
  const double m = std::min({ax + two_p * ay, two_p * axy + ax, axy + ay});
  return std::pow(m, 1.0 / p);
}

RepresentationValue eval_representation(const FiniteMetricSpace& space, const MoleculeRepresentation& rep,
                                        double p) {
  check_p(p);
  RepresentationValue out{FreeElement(space.size(), space.base()), 0.0};
  double sum = 0.0;
  for (const Molecule& m : rep) {
    if (m.from >= space.size() || m.to >= space.size()) throw Error(ErrorKind::InvalidInput, "point out of range");
    if (m.from == m.to) throw Error(ErrorKind::DegeneratePair, "molecule with identical endpoints");
    out.element.add(m.from, m.amount);
    out.element.add(m.to, -m.amount);
    sum += std::pow(std::abs(m.amount), p) * std::pow(space(m.from, m.to), p);
  }
  out.cost = std::pow(sum, 1.0 / p);
  return out;
}

std::vector<double> linearize_apply(const std::vector<std::vector<double>>& f, const FreeElement& mu) {
  if (f.size() != mu.size()) throw Error(ErrorKind::DomainMismatch, "map and element over different spaces");
  const std::size_t dim = f.empty() ? 0 : f.front().size();
  for (const auto& v : f)
    if (v.size() != dim) throw Error(ErrorKind::DomainMismatch, "inconsistent target dimension");
  for (double c : f[mu.base()])
    if (c != 0.0) throw Error(ErrorKind::BasePointNonzero, "map must vanish at the base point");
  std::vector<double> out(dim, 0.0);
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (mu[x] == 0.0) continue;
    for (std::size_t c = 0; c < dim; ++c) out[c] += mu[x] * f[x][c];
  }
  return out;
}

}  // namespace lipext
