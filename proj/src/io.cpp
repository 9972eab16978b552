#include "lipext/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>
#include <sstream>

namespace lipext {

std::string format_number(double v) {
  if (v == 0.0) return "0";
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(12) << v;
  return os.str();
}

double round12(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  std::istringstream is(format_number(v));
  is.imbue(std::locale::classic());
  double out = 0.0;
  is >> out;
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
  out << text;
}

namespace {

double as_number(const nlohmann::json& v, const char* what) {
  if (!v.is_number()) throw Error(ErrorKind::InvalidInput, std::string(what) + " must be numeric");
  return v.get<double>();
}

std::string label_of(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw Error(ErrorKind::InvalidInput, "labels must be strings or integers");
}

}  // namespace

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dist") || !j["dist"].is_array())
    throw Error(ErrorKind::InvalidInput, "space JSON needs a \"dist\" matrix");
  Matrix dist;
  for (const auto& row : j["dist"]) {
    if (!row.is_array()) throw Error(ErrorKind::NonSquare, "dist rows must be arrays");
    std::vector<double> r;
    for (const auto& v : row) r.push_back(as_number(v, "distance"));
    dist.push_back(std::move(r));
  }
  return dist;
}

FiniteMetricSpace space_from_json(const nlohmann::json& j) {
  const Matrix dist = matrix_from_json(j);
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    for (const auto& l : j["labels"]) labels.push_back(label_of(l));
  } else {
    for (std::size_t i = 0; i < dist.size(); ++i) labels.push_back(std::to_string(i));
  }
  if (labels.size() != dist.size()) throw Error(ErrorKind::InvalidInput, "one label per row of dist");
  std::size_t base = 0;
  if (j.contains("base")) {
    const auto& b = j["base"];
    if (b.is_number_integer() && b.get<long long>() >= 0) {
      base = static_cast<std::size_t>(b.get<long long>());
    } else if (b.is_string()) {
      const auto it = std::find(labels.begin(), labels.end(), b.get<std::string>());
      if (it == labels.end()) throw Error(ErrorKind::InvalidInput, "unknown base label");
      base = static_cast<std::size_t>(it - labels.begin());
    } else {
      throw Error(ErrorKind::InvalidInput, "base must be an index or a label");
    }
  }
  return FiniteMetricSpace(std::move(labels), dist, base);
}

nlohmann::json space_to_json(const FiniteMetricSpace& space) {
  nlohmann::json j;
  j["labels"] = space.labels();
  j["dist"] = space.matrix();
  j["base"] = space.base();
  return j;
}

WeightedGraph graph_from_text(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  std::vector<Edge> edges;
  std::size_t n = 0;
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::InvalidInput, std::string("graph JSON: ") + e.what());
    }
    if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 0)
      throw Error(ErrorKind::InvalidInput, "graph JSON needs a nonnegative integer \"n\"");
    n = static_cast<std::size_t>(j["n"].get<long long>());
    for (const auto& e : j.value("edges", nlohmann::json::array())) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
          e[0].get<long long>() < 0 || e[1].get<long long>() < 0)
        throw Error(ErrorKind::InvalidInput, "edges must be [u, v, w] with vertex indices u, v");
      edges.push_back({static_cast<std::size_t>(e[0].get<long long>()), static_cast<std::size_t>(e[1].get<long long>()),
                       as_number(e[2], "edge weight")});
    }
    return WeightedGraph(n, std::move(edges));
  }
  std::istringstream lines(text);
  lines.imbue(std::locale::classic());
  std::string line;
  while (std::getline(lines, line)) {
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    fields.imbue(std::locale::classic());
    long long u = -1, v = -1;
    double w = 0.0;
    std::string extra;
    if (!(fields >> u >> v >> w) || u < 0 || v < 0 || (fields >> extra))
      throw Error(ErrorKind::InvalidInput, "bad edge line: " + line);
    edges.push_back({static_cast<std::size_t>(u), static_cast<std::size_t>(v), w});
    n = std::max(n, static_cast<std::size_t>(std::max(u, v)) + 1);
  }
  return WeightedGraph(n, std::move(edges));
}

PointSet parse_subset(const FiniteMetricSpace& space, const std::string& labels) {
  PointSet set(space.size());
  std::istringstream in(labels);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto a = item.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    const auto b = item.find_last_not_of(" \t");
    set.insert(space.index_of(item.substr(a, b - a + 1)));
  }
  return set;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::istringstream field(item);
    field.imbue(std::locale::classic());
    double v = 0.0;
    std::string extra;
    if (!(field >> v) || (field >> extra)) throw Error(ErrorKind::InvalidInput, "bad number: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorKind::InvalidInput, "empty number list");
  return out;
}

PValuedMap map_from_json(const nlohmann::json& j, const FiniteMetricSpace& space, const PointSet& subspace, double p) {
  if (!j.is_object() || !j.contains("values") || !j["values"].is_object())
    throw Error(ErrorKind::InvalidInput, "map JSON needs a \"values\" object");
  PValuedMap map;
  map.domain = PointSet(space.size());
  map.values.assign(space.size(), {});
  map.p = p;
  bool first = true;
  for (const auto& [label, coords] : j["values"].items()) {
    const std::size_t x = space.index_of(label);
    if (!subspace.contains(x)) throw Error(ErrorKind::DomainMismatch, "map value given outside N: " + label);
    if (!coords.is_array()) throw Error(ErrorKind::InvalidInput, "map values must be arrays");
    std::vector<double> v;
    for (const auto& c : coords) v.push_back(as_number(c, "map coordinate"));
    if (first) {
      map.dim = v.size();
      first = false;
    } else if (v.size() != map.dim) {
      throw Error(ErrorKind::DomainMismatch, "inconsistent target dimension");
    }
    map.values[x] = std::move(v);
    map.domain.insert(x);
  }
  if (!(map.domain == subspace)) throw Error(ErrorKind::DomainMismatch, "map must be defined on every point of N");
  return map;
}

nlohmann::json map_to_json(const FiniteMetricSpace& space, const PValuedMap& map) {
  nlohmann::json values = nlohmann::json::object();
  for (std::size_t x : map.domain.members()) values[space.label(x)] = map.values[x];
  return nlohmann::json{{"values", values}};
}

nlohmann::json labels_json(const FiniteMetricSpace& space, const PointSet& set) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t x : set.members()) out.push_back(space.label(x));
  return out;
}

namespace {

nlohmann::json rounded(const nlohmann::json& j) {
  if (j.is_number_float()) return round12(j.get<double>());
  if (j.is_array()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& v : j) out.push_back(rounded(v));
    return out;
  }
  if (j.is_object()) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [k, v] : j.items()) out[k] = rounded(v);
    return out;
  }
  return j;
}

}  // namespace

std::string dump_json(const nlohmann::json& j) { return rounded(j).dump(2) + "\n"; }

}  // namespace lipext
