#pragma once

#include "timepref/mdp.hpp"

#include <string>
#include <vector>

namespace timepref {

/// Fixed-point decimal with round-half-even ties, for deterministic CLI
/// output ("3.200" at 3 digits).
std::string format_fixed(Real value, int digits);

/// Minimal CSV quoting: fields containing commas, quotes or newlines are
/// wrapped in double quotes with internal quotes doubled.
std::string csv_field(const std::string& field);

std::string csv_row(const std::vector<std::string>& fields);

/// Left-aligned fixed-width table rows; column widths from the widest cell.
std::string render_table(const std::vector<std::vector<std::string>>& rows);

} // namespace timepref
