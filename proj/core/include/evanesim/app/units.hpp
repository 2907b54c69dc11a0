#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace evanesim::app {

enum class Dimension {
  Dimensionless,
  Length,
  Frequency,
  Angle,
  Time,
  Speed,
  Impedance,
  Natural,
  Count,
};

struct Quantity {
  double number = 0.0;
  std::string unit;  // as written, may be empty
};

/// Splits "32.8mm" into {32.8, "mm"}; std::nullopt if there is no leading
/// number. Parsing is locale independent.
std::optional<Quantity> split_quantity(std::string_view text);

/// Scale factor of `unit` for `dim` (bare numbers use the dimension's default:
/// m, Hz, degrees, s). "lambda" needs `wavelength`; returns nullopt when the
/// unit does not belong to the dimension.
std::optional<double> unit_scale(Dimension dim, std::string_view unit,
                                 std::optional<double> wavelength);

/// Formats a double with 17 significant digits, "." decimal point.
std::string format_number(double value);

}  // namespace evanesim::app
