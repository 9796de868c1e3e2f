#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "coherence/qobj.hpp"

namespace coherence::io {

using nlohmann::json;

/// Input file could not be parsed; the message carries the location
/// (byte position for syntax errors, row/column for malformed entries).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

/// Parses a complex matrix in the [[ [re, im], ... ], ...] form.
inline Matrixd parse_complex_matrix(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw ParseError(what + ": expected a non-empty array of rows");
  const size_t rows = j.size();
  const size_t cols = j.at(0).is_array() ? j.at(0).size() : 0;
  if (cols == 0) throw ParseError(what + " row 0: expected a non-empty array of entries");
  Matrixd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (size_t r = 0; r < rows; ++r) {
    const json& row = j.at(r);
    if (!row.is_array() || row.size() != cols) {
      throw ParseError(what + " row " + std::to_string(r) + ": expected " + std::to_string(cols) +
                       " entries");
    }
    for (size_t c = 0; c < cols; ++c) {
      const json& entry = row.at(c);
      if (!entry.is_array() || entry.size() != 2 || !entry.at(0).is_number() ||
          !entry.at(1).is_number()) {
        throw ParseError(what + " row " + std::to_string(r) + " column " + std::to_string(c) +
                         ": expected [re, im]");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complexd(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  return m;
}

inline json complex_matrix_to_json(const Matrixd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

/// State file: {"dim": n, "matrix": [[ [re, im], ... ], ...]}.
inline DensityMatrixd load_state(const std::string& path) {
  const json j = load_json_file(path);
  if (!j.contains("matrix")) throw ParseError(path + ": missing \"matrix\"");
  const Matrixd m = parse_complex_matrix(j.at("matrix"), path + ": matrix");
  if (j.contains("dim") && j.at("dim").get<Eigen::Index>() != m.rows()) {
    throw ParseError(path + ": \"dim\" does not match the matrix size");
  }
  return make_density(m);
}

inline void save_state(const std::string& path, const DensityMatrixd& rho) {
  std::ofstream out(path);
  out << json{{"dim", rho.dim()}, {"matrix", complex_matrix_to_json(rho.matrix())}}.dump(2)
      << "\n";
}

/// Observable file: {"outcomes": [{"eigenvalue": a, "projector": [[...]]}, ...]}.
inline DiscreteObservabled load_observable(const std::string& path) {
  const json j = load_json_file(path);
  if (!j.contains("outcomes") || !j.at("outcomes").is_array() || j.at("outcomes").empty()) {
    throw ParseError(path + ": missing non-empty \"outcomes\" array");
  }
  std::vector<std::pair<double, Matrixd>> pairs;
  size_t index = 0;
  for (const json& outcome : j.at("outcomes")) {
    if (!outcome.contains("eigenvalue") || !outcome.at("eigenvalue").is_number() ||
        !outcome.contains("projector")) {
      throw ParseError(path + ": outcome " + std::to_string(index) +
                       ": expected \"eigenvalue\" and \"projector\"");
    }
    pairs.emplace_back(outcome.at("eigenvalue").get<double>(),
                       parse_complex_matrix(outcome.at("projector"),
                                            path + ": outcome " + std::to_string(index) +
                                                " projector"));
    ++index;
  }
  return make_observable<double>(std::move(pairs));
}

inline void save_observable(const std::string& path, const DiscreteObservabled& a) {
  json outcomes = json::array();
  for (Eigen::Index l = 0; l < a.outcomes(); ++l) {
    outcomes.push_back(
        {{"eigenvalue", a.label(l)}, {"projector", complex_matrix_to_json(a.projector(l))}});
  }
  std::ofstream out(path);
  out << json{{"outcomes", outcomes}}.dump(2) << "\n";
}

/// Canonical float formatting for the two-column text emitters: 17 significant
/// digits round-trip doubles exactly.
inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

/// Screen pattern as "cell probability" lines.
inline void save_pattern_text(const std::string& path, const RealVectord& pattern) {
  std::ofstream out(path);
  for (Eigen::Index x = 0; x < pattern.size(); ++x) {
    out << x << " " << format_real(pattern(x)) << "\n";
  }
}

inline void save_pattern_json(const std::string& path, const RealVectord& pattern) {
  json cells = json::array();
  for (Eigen::Index x = 0; x < pattern.size(); ++x) cells.push_back(pattern(x));
  std::ofstream out(path);
  out << json{{"cells", cells}}.dump(2) << "\n";
}

}  // namespace coherence::io
