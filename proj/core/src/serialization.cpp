#include "gkm/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "gkm/error.hpp"

namespace gkm {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Graphon JSON

std::string graphon_to_json(const Graphon& w) {
  json j;
  j["kind"] = to_string(w.kind());
  switch (w.kind()) {
    case GraphonKind::constant:
      j["p"] = *w.p();
      break;
    case GraphonKind::small_world:
      j["p"] = *w.p();
      j["h"] = *w.h();
      break;
    case GraphonKind::nearest_neighbor:
      j["h"] = *w.h();
      break;
    case GraphonKind::step: {
      const StepGraphon& s = *w.step_values();
      json rows = json::array();
      for (std::size_t i = 0; i < s.n(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < s.n(); ++k) row.push_back(s(i, k));
        rows.push_back(std::move(row));
      }
      j["values"] = std::move(rows);
      break;
    }
    case GraphonKind::custom:
      throw std::invalid_argument("graphon_to_json: custom graphons cannot be serialized");
  }
  return j.dump();
}

namespace {

void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& what) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError(what + ": unknown key '" + key + "'");
  }
}

double number_at(const json& j, const char* key, const std::string& what) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ParseError(what + ": missing numeric field '" + key + "'");
  }
  return j.at(key).get<double>();
}

}  // namespace

Graphon graphon_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("graphon: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw ParseError("graphon: expected an object with a string 'kind'");
  }
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "constant") {
      require_keys(j, {"kind", "p"}, "graphon");
      return Graphon::constant(number_at(j, "p", "graphon"));
    }
    if (kind == "small_world") {
      require_keys(j, {"kind", "p", "h"}, "graphon");
      return Graphon::small_world(number_at(j, "p", "graphon"), number_at(j, "h", "graphon"));
    }
    if (kind == "nearest_neighbor") {
      require_keys(j, {"kind", "h"}, "graphon");
      return Graphon::nearest_neighbor(number_at(j, "h", "graphon"));
    }
    if (kind == "step") {
      require_keys(j, {"kind", "values"}, "graphon");
      const json& rows = j.at("values");
      if (!rows.is_array() || rows.empty()) throw ParseError("graphon: 'values' must be a non-empty array");
      const std::size_t n = rows.size();
      SquareMatrix m(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n) throw ParseError("graphon: 'values' is not square");
        for (std::size_t k = 0; k < n; ++k) m(i, k) = rows[i][k].get<double>();
      }
      return Graphon::step(StepGraphon(std::move(m)));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("graphon: ") + e.what());
  }
  throw ParseError("graphon: unknown kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// CSV helpers

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream s(line);
  while (std::getline(s, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& text, std::size_t line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) + ": not a number: '" + text + "'");
  }
  while (used < text.size() && (text[used] == ' ' || text[used] == '\r')) ++used;
  if (used != text.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": trailing characters in '" + text + "'");
  }
  return v;
}

std::size_t parse_index(const std::string& text, std::size_t line_no) {
  const double v = parse_number(text, line_no);
  if (!(v >= 0.0) || v != std::floor(v)) {
    throw ParseError("line " + std::to_string(line_no) + ": expected a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

// Reads data rows after an expected header; blank lines are skipped.
std::vector<std::vector<std::string>> read_table(std::istream& in, const std::string& header,
                                                 std::size_t columns) {
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) continue;
    if (!seen_header) {
      if (line != header) throw ParseError("expected header '" + header + "', got '" + line + "'");
      seen_header = true;
      continue;
    }
    auto fields = split(line);
    if (fields.size() != columns) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(columns) +
                       " fields");
    }
    rows.push_back(std::move(fields));
  }
  if (!seen_header) throw ParseError("empty input: missing header '" + header + "'");
  if (rows.empty()) throw ParseError("no data rows after header '" + header + "'");
  return rows;
}

}  // namespace

// ---------------------------------------------------------------------------
// Matrices

void write_matrix_csv(std::ostream& out, const SquareMatrix& m) {
  out << "n=" << m.size() << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k) out << ',';
      out << format_double(m(i, k));
    }
    out << '\n';
  }
}

SquareMatrix read_matrix_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> declared;
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) continue;
    if (rows == 0 && !declared && line.rfind("n=", 0) == 0) {
      declared = parse_index(line.substr(2), line_no);
      continue;
    }
    const auto fields = split(line);
    if (rows == 0) width = fields.size();
    if (fields.size() != width) throw ParseError("line " + std::to_string(line_no) + ": ragged row");
    for (const auto& f : fields) values.push_back(parse_number(f, line_no));
    ++rows;
  }
  if (rows == 0) throw ParseError("matrix: no rows");
  if (rows != width) throw ParseError("matrix: not square");
  if (declared && *declared != rows) {
    throw ParseError("matrix: header declares n=" + std::to_string(*declared) + " but found " +
                     std::to_string(rows) + " rows");
  }
  return SquareMatrix(rows, std::move(values));
}

// ---------------------------------------------------------------------------
// Measure families

void write_family_csv(std::ostream& out, const MeasureFamily& family) {
  out << "cell,position,mass\n";
  for (std::size_t i = 0; i < family.n_cells(); ++i) {
    for (const Atom& a : family.cell(i).atoms()) {
      out << i << ',' << format_double(a.position) << ',' << format_double(a.mass) << '\n';
    }
  }
}

MeasureFamily read_family_csv(std::istream& in) {
  const auto rows = read_table(in, "cell,position,mass", 3);
  std::vector<std::vector<Atom>> cells;
  std::size_t line = 1;
  for (const auto& r : rows) {
    ++line;
    const std::size_t cell = parse_index(r[0], line);
    if (cell == cells.size()) {
      cells.emplace_back();
    } else if (cell + 1 != cells.size()) {
      throw ParseError("family: cells must be listed contiguously from 0");
    }
    cells.back().push_back({parse_number(r[1], line), parse_number(r[2], line)});
  }
  std::vector<CircleMeasure> measures;
  measures.reserve(cells.size());
  try {
    for (auto& atoms : cells) measures.emplace_back(std::move(atoms));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("family: ") + e.what());
  }
  return MeasureFamily(std::move(measures));
}

// ---------------------------------------------------------------------------
// Density fields

void write_density_csv(std::ostream& out, const DensityField& field) {
  out << "cell,u_index,value\n";
  for (std::size_t i = 0; i < field.n(); ++i) {
    for (std::size_t k = 0; k < field.g(); ++k) {
      out << i << ',' << k << ',' << format_double(field(i, k)) << '\n';
    }
  }
}

DensityField read_density_csv(std::istream& in) {
  const auto rows = read_table(in, "cell,u_index,value", 3);
  std::map<std::pair<std::size_t, std::size_t>, double> entries;
  std::size_t n = 0, g = 0, line = 1;
  for (const auto& r : rows) {
    ++line;
    const std::size_t i = parse_index(r[0], line);
    const std::size_t k = parse_index(r[1], line);
    if (!entries.emplace(std::make_pair(i, k), parse_number(r[2], line)).second) {
      throw ParseError("density: duplicate entry on line " + std::to_string(line));
    }
    n = std::max(n, i + 1);
    g = std::max(g, k + 1);
  }
  if (entries.size() != n * g) throw ParseError("density: grid is incomplete");
  std::vector<double> values(n * g);
  for (const auto& [key, v] : entries) values[key.first * g + key.second] = v;
  try {
    return DensityField(n, g, std::move(values));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("density: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Trajectories and reports

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const std::size_t n = traj.states.empty() ? 0 : traj.states.front().n();
  out << 't';
  for (std::size_t i = 1; i <= n; ++i) out << ",u_" << i;
  out << ",r,psi\n";
  for (const PhaseState& s : traj.states) {
    out << format_double(s.time);
    for (double u : s.phases) out << ',' << format_double(u);
    const OrderParameter op = order_parameter(s.phases);
    out << ',' << format_double(op.r) << ',' << format_double(op.psi) << '\n';
  }
}

std::string picard_report_json(const PicardReport& report) {
  json j;
  j["converged"] = report.converged;
  j["iterations"] = report.iterations;
  j["distances"] = report.distances;
  json ratios = json::array();
  for (double r : report.ratios) {
    if (std::isfinite(r)) {
      ratios.push_back(r);
    } else {
      ratios.push_back(nullptr);
    }
  }
  j["ratios"] = std::move(ratios);
  return j.dump(2);
}

void write_pgm(std::ostream& out, const GrayImage& image) {
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
}

}  // namespace gkm
