#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "spinalias/aliasing.hpp"
#include "spinalias/fieldsim.hpp"
#include "spinalias/sampling.hpp"
#include "spinalias/spectrum.hpp"

namespace spinalias {

using Cell = std::variant<long long, std::uint64_t, double, std::string, bool>;

/// Column-oriented output table; every row has one cell per column.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

using Metadata = std::vector<std::pair<std::string, Cell>>;

std::string_view library_version();

/// "%.17g"; round-trips every finite double.
std::string format_double(double value);
std::string format_cell(const Cell& cell);

/// Single header line, then one line per row.
std::string to_csv(const Table& table);
/// {"metadata": {...}, "data": {column: [values...]}}.
std::string to_json(const Table& table, const Metadata& metadata);

Table grid_table(const SamplingGrid& grid);
/// {"metadata", "scheme", "N", "s", "Q", "theta": [{node, weight}], "phi": [...]}.
std::string grid_json(const SamplingGrid& grid, const Metadata& metadata);

Table alias_table(const AliasMap& map);
Table spectrum_table(const AngularPowerSpectrum& spec);
Table aliased_spectrum_table(const AngularPowerSpectrum& spec, const AliasedSpectrum& result);
Table field_table(const FieldSamples& field);
Table monte_carlo_table(const MonteCarloReport& report);

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads a spectrum from CSV (header ell,C_E,C_B) or JSON (arrays "ell",
/// "C_E", "C_B", at top level or under "data"). Multipoles below s are
/// ignored; the rest must cover s..l_max exactly once. Throws InputError
/// naming the offending row or field.
AngularPowerSpectrum parse_spectrum(std::string_view text, int s);

}  // namespace spinalias
