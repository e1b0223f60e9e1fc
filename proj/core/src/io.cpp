#include "spinalias/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"

namespace spinalias {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json cell_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) {
            return format_double(v);
          }
        }
        return v;
      },
      cell);
}

ordered_json metadata_json(const Metadata& metadata) {
  ordered_json meta = ordered_json::object();
  for (const auto& [key, value] : metadata) {
    meta[key] = cell_json(value);
  }
  return meta;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) {
      break;
    }
    start = pos + 1;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

struct RawRow {
  int ell;
  double c_e;
  double c_b;
  std::string where;
};

AngularPowerSpectrum assemble(std::vector<RawRow> rows, int s) {
  std::map<int, RawRow> by_ell;
  for (auto& row : rows) {
    if (row.ell < s) {
      continue;
    }
    if (!std::isfinite(row.c_e) || !std::isfinite(row.c_b) || row.c_e < 0.0 || row.c_b < 0.0) {
      throw InputError(row.where + ": spectrum values must be finite and non-negative");
    }
    if (!by_ell.emplace(row.ell, row).second) {
      throw InputError(row.where + ": duplicate multipole l=" + std::to_string(row.ell));
    }
  }
  if (by_ell.empty()) {
    throw InputError("spectrum has no multipoles with l >= s=" + std::to_string(s));
  }
  std::vector<double> c_e;
  std::vector<double> c_b;
  int expected = s;
  for (const auto& [ell, row] : by_ell) {
    if (ell != expected) {
      throw InputError(row.where + ": multipole l=" + std::to_string(expected) +
                       " is missing before l=" + std::to_string(ell));
    }
    c_e.push_back(row.c_e);
    c_b.push_back(row.c_b);
    ++expected;
  }
  return AngularPowerSpectrum(s, std::move(c_e), std::move(c_b));
}

std::vector<RawRow> parse_csv_rows(std::string_view text) {
  std::vector<RawRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') {
      continue;
    }
    const auto fields = split(body, ',');
    const std::string where = "row " + std::to_string(line_no);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() != 3 || fields[0] != "ell" || fields[1] != "C_E" || fields[2] != "C_B") {
        throw InputError(where + ": expected header 'ell,C_E,C_B', got '" + std::string(body) +
                         "'");
      }
      continue;
    }
    if (fields.size() != 3) {
      throw InputError(where + ": expected 3 fields, got " + std::to_string(fields.size()));
    }
    RawRow row{0, 0.0, 0.0, where};
    if (!parse_number(fields[0], row.ell)) {
      throw InputError(where + ": bad multipole '" + std::string(fields[0]) + "'");
    }
    if (!parse_number(fields[1], row.c_e) || !parse_number(fields[2], row.c_b)) {
      throw InputError(where + ": bad spectrum value in '" + std::string(body) + "'");
    }
    rows.push_back(std::move(row));
  }
  if (!header_seen) {
    throw InputError("spectrum file is empty");
  }
  return rows;
}

std::vector<RawRow> parse_json_rows(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  const ordered_json* body = &doc;
  if (doc.is_object() && doc.contains("data")) {
    body = &doc["data"];
  }
  for (const char* key : {"ell", "C_E", "C_B"}) {
    if (!body->is_object() || !body->contains(key) || !(*body)[key].is_array()) {
      throw InputError(std::string("JSON spectrum lacks array '") + key + "'");
    }
  }
  const auto& ell = (*body)["ell"];
  const auto& ce = (*body)["C_E"];
  const auto& cb = (*body)["C_B"];
  if (ell.size() != ce.size() || ell.size() != cb.size()) {
    throw InputError("JSON spectrum arrays differ in length");
  }
  std::vector<RawRow> rows;
  for (std::size_t i = 0; i < ell.size(); ++i) {
    const std::string where = "row " + std::to_string(i);
    if (!ell[i].is_number_integer() || !ce[i].is_number() || !cb[i].is_number()) {
      throw InputError(where + ": non-numeric entry");
    }
    rows.push_back({ell[i].get<int>(), ce[i].get<double>(), cb[i].get<double>(), where});
  }
  return rows;
}

}  // namespace

std::string_view library_version() { return SPINALIAS_VERSION; }

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return std::to_string(v);
        }
      },
      cell);
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out += (c ? "," : "") + table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) {
        out += ',';
      }
      out += format_cell(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& table, const Metadata& metadata) {
  ordered_json data = ordered_json::object();
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    ordered_json column = ordered_json::array();
    for (const auto& row : table.rows) {
      column.push_back(cell_json(row[c]));
    }
    data[table.columns[c]] = std::move(column);
  }
  ordered_json doc;
  doc["metadata"] = metadata_json(metadata);
  doc["data"] = std::move(data);
  return doc.dump(2) + "\n";
}

Table grid_table(const SamplingGrid& grid) {
  Table t{{"axis", "index", "node", "weight"}, {}};
  for (std::size_t p = 0; p < grid.theta_count(); ++p) {
    t.rows.push_back({std::string("theta"), static_cast<long long>(p), grid.theta_nodes()[p],
                      grid.theta_weights()[p]});
  }
  for (std::size_t q = 0; q < grid.phi_count(); ++q) {
    t.rows.push_back({std::string("phi"), static_cast<long long>(q), grid.phi_nodes()[q],
                      grid.phi_weights()[q]});
  }
  return t;
}

std::string grid_json(const SamplingGrid& grid, const Metadata& metadata) {
  ordered_json doc;
  doc["metadata"] = metadata_json(metadata);
  doc["scheme"] = std::string(to_string(grid.scheme()));
  doc["N"] = grid.N();
  doc["s"] = grid.s();
  doc["Q"] = grid.Q();
  auto axis = [](std::span<const double> nodes, std::span<const double> weights) {
    ordered_json arr = ordered_json::array();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      arr.push_back({{"node", nodes[i]}, {"weight", weights[i]}});
    }
    return arr;
  };
  doc["theta"] = axis(grid.theta_nodes(), grid.theta_weights());
  doc["phi"] = axis(grid.phi_nodes(), grid.phi_weights());
  return doc.dump(2) + "\n";
}

Table alias_table(const AliasMap& map) {
  Table t{{"ell", "m", "s", "j", "r", "u", "v", "class", "tau", "intensity", "distance"}, {}};
  for (const auto& e : map.entries) {
    t.rows.push_back({static_cast<long long>(e.source.ell), static_cast<long long>(e.source.m),
                      static_cast<long long>(e.source.s), static_cast<long long>(e.j),
                      static_cast<long long>(e.r), static_cast<long long>(e.alias.ell),
                      static_cast<long long>(e.alias.m), std::string(to_string(e.klass)), e.tau,
                      e.intensity, e.distance});
  }
  return t;
}

Table spectrum_table(const AngularPowerSpectrum& spec) {
  Table t{{"ell", "C_E", "C_B"}, {}};
  for (int ell = spec.s(); ell <= spec.l_max(); ++ell) {
    t.rows.push_back({static_cast<long long>(ell), spec.c_e(ell), spec.c_b(ell)});
  }
  return t;
}

Table aliased_spectrum_table(const AngularPowerSpectrum& spec, const AliasedSpectrum& result) {
  Table t{{"ell", "C", "C_tilde", "ratio"}, {}};
  for (std::size_t i = 0; i < result.ells.size(); ++i) {
    const int ell = result.ells[i];
    const double c = ell <= spec.l_max() ? spec.total(ell) : 0.0;
    const double ratio = c > 0.0 ? result.values[i] / c : std::nan("");
    t.rows.push_back({static_cast<long long>(ell), c, result.values[i], ratio});
  }
  return t;
}

Table field_table(const FieldSamples& field) {
  Table t{{"theta_index", "phi_index", "re", "im"}, {}};
  const SamplingGrid& g = field.grid();
  for (std::size_t p = 0; p < g.theta_count(); ++p) {
    for (std::size_t q = 0; q < g.phi_count(); ++q) {
      const auto v = field.at(p, q);
      t.rows.push_back({static_cast<long long>(p), static_cast<long long>(q), v.real(), v.imag()});
    }
  }
  return t;
}

Table monte_carlo_table(const MonteCarloReport& report) {
  Table t{{"ell", "mean", "std_error", "predicted", "z"}, {}};
  for (const auto& row : report.rows) {
    t.rows.push_back(
        {static_cast<long long>(row.ell), row.mean, row.std_error, row.predicted, row.z});
  }
  return t;
}

AngularPowerSpectrum parse_spectrum(std::string_view text, int s) {
  if (s < 0) {
    throw std::invalid_argument("parse_spectrum: spin must be >= 0");
  }
  const std::string_view body = trim(text);
  if (body.empty()) {
    throw InputError("spectrum file is empty");
  }
  return assemble(body.front() == '{' ? parse_json_rows(body) : parse_csv_rows(body), s);
}

}  // namespace spinalias
