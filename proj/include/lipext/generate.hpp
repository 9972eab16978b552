#pragma once

#include <cstdint>
#include <string>

#include "lipext/metric.hpp"

namespace lipext {

inline constexpr std::size_t kMaxGeneratedPoints = 64;

/// Deterministic test spaces:
///  - "line": the integers 0..n-1 with |x - y| (seed unused);
///  - "grid-linf": the first n points, row by row, of the smallest square
///    integer grid holding n points, with the l-infinity metric;
///  - "random-doubling-subset": n distinct points of the 8x8 integer grid
///    with the l-infinity metric, drawn with a seeded mt19937_64.
/// Throws Error(UnknownKind) and Error(DomainError) for n = 0 or n > 64.
FiniteMetricSpace generate_test_space(const std::string& kind, std::size_t n, std::uint64_t seed);

}  // namespace lipext
