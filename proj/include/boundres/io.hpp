#pragma once

#include "boundres/arrangement.hpp"
#include "boundres/geometry.hpp"
#include "boundres/network.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace boundres::io {

/// Units as CSV: one row per unit, d weight columns then the bias column.
/// Lines starting with '#' and blank lines are skipped.
std::vector<AffineUnit> read_units_csv(std::istream& in);
std::vector<AffineUnit> read_units_csv_file(const std::string& path);
void write_units_csv(std::ostream& out, std::span<const AffineUnit> units);

/// Header s1..sm, x1..xd, bounded; signs as +1/-1, bounded as 0/1.
void write_cells_csv(std::ostream& out, std::span<const arr::Cell> cells);

/// {dim, layers:[{neurons:[{activation, bias, inputs:[{src:{kind, layer?, index}, w}]}]}]}
std::string network_to_json(const net::LayeredNetwork& network);
net::LayeredNetwork network_from_json(const std::string& text);

void save_network(const std::string& path, const net::LayeredNetwork& network);
net::LayeredNetwork load_network(const std::string& path);

/// 17 significant digits.
std::string format_exact(double v);
/// 6 significant digits.
std::string format_short(double v);

} // namespace boundres::io
