#include "evanesim/app/units.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <utility>

#include "evanesim/conventions.hpp"

namespace evanesim::app {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

using UnitRow = std::pair<std::string_view, double>;

constexpr std::array kLengthUnits{UnitRow{"", 1.0},     UnitRow{"m", 1.0},   UnitRow{"km", 1e3},
                                  UnitRow{"cm", 1e-2},  UnitRow{"mm", 1e-3}, UnitRow{"um", 1e-6},
                                  UnitRow{"nm", 1e-9}};
constexpr std::array kFrequencyUnits{UnitRow{"", 1.0},    UnitRow{"Hz", 1.0},  UnitRow{"kHz", 1e3},
                                     UnitRow{"MHz", 1e6}, UnitRow{"GHz", 1e9}, UnitRow{"THz", 1e12}};
constexpr std::array kAngleUnits{UnitRow{"", kPi / 180.0}, UnitRow{"deg", kPi / 180.0},
                                 UnitRow{"rad", 1.0}};
constexpr std::array kTimeUnits{UnitRow{"", 1.0},    UnitRow{"s", 1.0},    UnitRow{"ms", 1e-3},
                                UnitRow{"us", 1e-6}, UnitRow{"ns", 1e-9},  UnitRow{"ps", 1e-12},
                                UnitRow{"fs", 1e-15}};
constexpr std::array kSpeedUnits{UnitRow{"", 1.0}, UnitRow{"m/s", 1.0}};
constexpr std::array kImpedanceUnits{UnitRow{"", 1.0}, UnitRow{"Pa*s/m", 1.0}, UnitRow{"rayl", 1.0}};
constexpr std::array kBareUnits{UnitRow{"", 1.0}};

template <std::size_t N>
std::optional<double> lookup(const std::array<UnitRow, N>& table, std::string_view unit) {
  for (const auto& [name, scale] : table) {
    if (name == unit) return scale;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Quantity> split_quantity(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || !std::isfinite(value)) return std::nullopt;
  return Quantity{value, std::string(trim(std::string_view(ptr, last - ptr)))};
}

std::optional<double> unit_scale(Dimension dim, std::string_view unit,
                                 std::optional<double> wavelength) {
  switch (dim) {
    case Dimension::Length:
      if (unit == "lambda") return wavelength;
      return lookup(kLengthUnits, unit);
    case Dimension::Frequency: return lookup(kFrequencyUnits, unit);
    case Dimension::Angle: return lookup(kAngleUnits, unit);
    case Dimension::Time: return lookup(kTimeUnits, unit);
    case Dimension::Speed: return lookup(kSpeedUnits, unit);
    case Dimension::Impedance: return lookup(kImpedanceUnits, unit);
    case Dimension::Dimensionless:
    case Dimension::Natural:
    case Dimension::Count: return lookup(kBareUnits, unit);
  }
  return std::nullopt;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return std::string(buf.data(), ptr);
}

}  // namespace evanesim::app
