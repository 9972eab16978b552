#include "lipext/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <utility>

namespace lipext {

namespace {

FiniteMetricSpace grid_space(const std::vector<std::pair<int, int>>& pts) {
  const std::size_t n = pts.size();
  std::vector<std::string> labels(n);
  Matrix dist(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = std::to_string(pts[i].first) + "_" + std::to_string(pts[i].second);
    for (std::size_t j = 0; j < n; ++j)
      dist[i][j] = std::max(std::abs(pts[i].first - pts[j].first), std::abs(pts[i].second - pts[j].second));
  }
  return FiniteMetricSpace(std::move(labels), dist, 0);
}

}  // namespace

FiniteMetricSpace generate_test_space(const std::string& kind, std::size_t n, std::uint64_t seed) {
  if (kind != "line" && kind != "grid-linf" && kind != "random-doubling-subset")
    throw Error(ErrorKind::UnknownKind, "unknown space kind '" + kind + "'");
  if (n == 0 || n > kMaxGeneratedPoints)
    throw Error(ErrorKind::DomainError, "n must lie in [1, " + std::to_string(kMaxGeneratedPoints) + "]");

  if (kind == "line") {
    Matrix dist(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) dist[i][j] = std::abs(static_cast<double>(i) - static_cast<double>(j));
    return FiniteMetricSpace::from_matrix(dist, 0);
  }
  std::vector<std::pair<int, int>> pts;
  if (kind == "grid-linf") {
    const auto side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)) - 1e-12));
    for (int y = 0; y < side && pts.size() < n; ++y)
      for (int x = 0; x < side && pts.size() < n; ++x) pts.emplace_back(x, y);
    return grid_space(pts);
  }
  // Partial Fisher-Yates over the 64 cells; modulo draws keep the stream
  // identical across standard libraries.
  std::mt19937_64 rng(seed);
  std::vector<int> cells(64);
  std::iota(cells.begin(), cells.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (64 - i));
    std::swap(cells[i], cells[j]);
  }
  std::sort(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(n));
  for (std::size_t i = 0; i < n; ++i) pts.emplace_back(cells[i] % 8, cells[i] / 8);
  return grid_space(pts);
}

}  // namespace lipext
