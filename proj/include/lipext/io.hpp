#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lipext/extension.hpp"
#include "lipext/graph.hpp"
#include "lipext/metric.hpp"

namespace lipext {

/// 12 significant digits, '.' decimal point, independent of the locale.
std::string format_number(double v);

/// v rounded to 12 significant digits (what format_number prints).
double round12(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// {"labels": [...], "dist": [[...]], "base": 0}; labels default to "0".."n-1"
/// and base to 0. The matrix must pass check_metric.
/// Throws Error(InvalidInput | NonSquare | NegativeEntry | TriangleViolation | ...).
FiniteMetricSpace space_from_json(const nlohmann::json& j);
nlohmann::json space_to_json(const FiniteMetricSpace& space);
/// Raw matrix from the same document, without validation.
Matrix matrix_from_json(const nlohmann::json& j);

/// JSON {"n": int, "edges": [[u, v, w], ...]} or whitespace CSV lines
/// "u v w" (blank lines and lines starting with '#' skipped; the vertex
/// count is one more than the largest index).
WeightedGraph graph_from_text(const std::string& text);

/// Comma-separated labels; Throws Error(InvalidInput) on unknown labels.
PointSet parse_subset(const FiniteMetricSpace& space, const std::string& labels);

std::vector<double> parse_number_list(const std::string& text);

/// {"values": {label: [coords]}} with every label in `subspace` present and
/// nothing else. Throws Error(DomainMismatch | InvalidInput).
PValuedMap map_from_json(const nlohmann::json& j, const FiniteMetricSpace& space, const PointSet& subspace, double p);
nlohmann::json map_to_json(const FiniteMetricSpace& space, const PValuedMap& map);

/// Labels of the members of `set`.
nlohmann::json labels_json(const FiniteMetricSpace& space, const PointSet& set);

/// Copy of `j` with every floating value rounded to 12 significant digits,
/// dumped with sorted keys and two-space indent.
std::string dump_json(const nlohmann::json& j);

}  // namespace lipext
