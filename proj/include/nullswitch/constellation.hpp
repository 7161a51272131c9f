#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nullswitch/error.hpp"
#include "nullswitch/signal.hpp"

namespace nullswitch {

enum class Modulation { bpsk, qpsk, qam16, qam64 };

using Bits = std::vector<std::uint8_t>;  // one 0/1 value per element

/// Gray-labelled constellation scaled to unit average energy.
///
/// points[label] is the symbol for `label`; the label's bits are sent MSB
/// first. Square QAM uses independent reflected-Gray codes on the two axes,
/// I in the high half of the label. BPSK is the 2-level I axis alone.
/// Label 0 is the (+,+) corner, so all-zero bits map to the positive point.
struct ConstellationSpec {
  Modulation modulation = Modulation::qpsk;
  std::string name;
  int bits_per_symbol = 0;
  std::vector<Complex> points;
};

inline std::string_view modulation_name(Modulation m) {
  switch (m) {
    case Modulation::bpsk: return "bpsk";
    case Modulation::qpsk: return "qpsk";
    case Modulation::qam16: return "16qam";
    case Modulation::qam64: return "64qam";
  }
  return "?";
}

inline Modulation parse_modulation(std::string_view s) {
  if (s == "bpsk") return Modulation::bpsk;
  if (s == "qpsk") return Modulation::qpsk;
  if (s == "16qam") return Modulation::qam16;
  if (s == "64qam") return Modulation::qam64;
  throw ConfigError("unknown modulation '" + std::string(s) + "'");
}

namespace detail {

// Amplitude of the PAM level carrying Gray label `g` on an axis of `levels`
// levels, walking from +(levels-1) down to -(levels-1).
inline double pam_level_for_gray(unsigned g, unsigned levels) {
  for (unsigned pos = 0; pos < levels; ++pos) {
    if ((pos ^ (pos >> 1)) == g) return static_cast<double>(levels - 1) - 2.0 * pos;
  }
  return 0.0;
}

}  // namespace detail

inline ConstellationSpec make_constellation(Modulation m) {
  ConstellationSpec c;
  c.modulation = m;
  c.name = std::string(modulation_name(m));
  if (m == Modulation::bpsk) {
    c.bits_per_symbol = 1;
    c.points = {Complex(1.0, 0.0), Complex(-1.0, 0.0)};
    return c;
  }
  const int axis_bits = m == Modulation::qpsk ? 1 : m == Modulation::qam16 ? 2 : 3;
  const unsigned levels = 1U << axis_bits;
  c.bits_per_symbol = 2 * axis_bits;
  c.points.resize(std::size_t{1} << c.bits_per_symbol);
  double energy = 0.0;
  for (unsigned label = 0; label < c.points.size(); ++label) {
    const unsigned gi = label >> axis_bits;
    const unsigned gq = label & (levels - 1);
    c.points[label] = Complex(detail::pam_level_for_gray(gi, levels), detail::pam_level_for_gray(gq, levels));
    energy += std::norm(c.points[label]);
  }
  const double scale = 1.0 / std::sqrt(energy / static_cast<double>(c.points.size()));
  for (auto& p : c.points) p *= scale;
  return c;
}

inline ConstellationSpec make_constellation(std::string_view name) {
  return make_constellation(parse_modulation(name));
}

/// Nearest point by Euclidean distance; equal distances go to the lower label.
inline unsigned nearest_label(const ConstellationSpec& c, Complex y) {
  unsigned best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (unsigned label = 0; label < c.points.size(); ++label) {
    const double d = std::norm(y - c.points[label]);
    if (d < best_d) {
      best_d = d;
      best = label;
    }
  }
  return best;
}

/// Places one symbol per data subcarrier in ascending index order; nulls stay 0.
inline FrequencyGrid map_bits(std::span<const std::uint8_t> bits, const ConstellationSpec& c,
                              const SubcarrierLayout& layout) {
  const auto& data = layout.data_indices();
  const std::size_t k = static_cast<std::size_t>(c.bits_per_symbol);
  if (bits.size() != data.size() * k) {
    throw InputError("map_bits: expected " + std::to_string(data.size() * k) + " bits, got " +
                     std::to_string(bits.size()));
  }
  FrequencyGrid grid(layout);
  for (std::size_t s = 0; s < data.size(); ++s) {
    unsigned label = 0;
    for (std::size_t b = 0; b < k; ++b) label = (label << 1) | (bits[s * k + b] & 1U);
    grid.at(data[s]) = c.points[label];
  }
  return grid;
}

/// Hard decisions on the data subcarriers, in ascending index order.
inline Bits demap_symbols(const FrequencyGrid& grid, const ConstellationSpec& c) {
  const auto& data = grid.layout().data_indices();
  const int k = c.bits_per_symbol;
  Bits bits;
  bits.reserve(data.size() * static_cast<std::size_t>(k));
  for (int idx : data) {
    const unsigned label = nearest_label(c, grid.at(idx));
    for (int b = k - 1; b >= 0; --b) bits.push_back(static_cast<std::uint8_t>((label >> b) & 1U));
  }
  return bits;
}

}  // namespace nullswitch
