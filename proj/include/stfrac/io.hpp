#pragma once

#include <string>
#include <vector>

#include "stfrac/grid.hpp"

namespace stfrac::io {

// Shortest round-trip decimal representation (<= 17 significant digits).
std::string format_double(double v);

// Snapshot CSV: header "x,u", one row per interior node, LF endings.
void write_field_csv(const SolutionField& f, const std::string& path);

// Generic numeric table with a header row.
void write_table_csv(const std::string& path,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

std::string read_file(const std::string& path);

}  // namespace stfrac::io
