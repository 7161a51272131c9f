#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nullswitch/constellation.hpp"
#include "nullswitch/error.hpp"
#include "nullswitch/random.hpp"
#include "nullswitch/signal.hpp"
#include "nullswitch/switching.hpp"

namespace nullswitch {

/// Complex AWGN with per-subcarrier variance sigma^2.
///
/// The SNR is measured against `reference_power`, the mean per-subcarrier
/// energy the SNR refers to. With reference 1 the SNR is the per-data-
/// subcarrier Es/N0; with Nd/N it is the mean power of the time-domain
/// signal over the noise power, which is how the harness defines SNR.
struct NoiseModel {
  double snr_db = 0.0;
  double noise_variance = 1.0;

  static NoiseModel from_snr_db(double snr_db, double reference_power = 1.0) {
    NoiseModel m;
    m.snr_db = snr_db;
    m.noise_variance = reference_power * std::pow(10.0, -snr_db / 10.0);
    if (!(m.noise_variance > 0.0)) throw ConfigError("noise variance must be positive");
    return m;
  }
};

/// Adds circularly-symmetric Gaussian noise (sigma^2/2 per real dimension)
/// to all N subcarriers, nulls included.
inline FrequencyGrid add_awgn(const FrequencyGrid& grid, const NoiseModel& model, RandomStream& rng) {
  FrequencyGrid out = grid;
  const double sd = std::sqrt(model.noise_variance / 2.0);
  for (auto& a : out.amplitudes()) {
    const double re = rng.normal();
    const double im = rng.normal();
    a += Complex(sd * re, sd * im);
  }
  return out;
}

struct DetectionOutcome {
  std::vector<int> detected;  // ascending data indices taken as switched nulls
  bool correct = false;       // equals the transmitted set exactly
};

/// Zero-energy detector: the P weakest data-band subcarriers (center null
/// excluded); ties go to the lower index. `transmitted`, when given, sets
/// the `correct` flag.
inline DetectionOutcome detect_conventional(const FrequencyGrid& grid, int p,
                                            std::span<const int> transmitted = {}) {
  const auto& data = grid.layout().data_indices();
  if (p < 1 || static_cast<std::size_t>(p) > data.size()) {
    throw ConfigError("detect_conventional: P out of range");
  }
  std::vector<std::pair<double, int>> power;
  power.reserve(data.size());
  for (int idx : data) power.emplace_back(std::norm(grid.at(idx)), idx);
  std::partial_sort(power.begin(), power.begin() + p, power.end());

  DetectionOutcome out;
  out.detected.reserve(static_cast<std::size_t>(p));
  for (int m = 0; m < p; ++m) out.detected.push_back(power[static_cast<std::size_t>(m)].second);
  std::sort(out.detected.begin(), out.detected.end());
  out.correct = !transmitted.empty() && std::ranges::equal(out.detected, transmitted);
  return out;
}

/// Equidistant detector: the candidate-matrix row with the least total
/// power; ties go to the lower row.
inline DetectionOutcome detect_proposed(const FrequencyGrid& grid, const CandidateMatrix& s,
                                        std::span<const int> transmitted = {}) {
  int best_row = 1;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= s.rows(); ++i) {
    double total = 0.0;
    for (int idx : s.row(i)) total += std::norm(grid.at(idx));
    if (total < best) {
      best = total;
      best_row = i;
    }
  }
  DetectionOutcome out;
  const auto row = s.row(best_row);
  out.detected.assign(row.begin(), row.end());
  out.correct = !transmitted.empty() && std::ranges::equal(out.detected, transmitted);
  return out;
}

/// Undoes a switch: exchanges detected[m] with nulls[m] rank by rank.
inline FrequencyGrid deswitch(const FrequencyGrid& grid, std::span<const int> detected, std::span<const int> nulls) {
  if (detected.size() != nulls.size()) {
    throw InputError("deswitch: " + std::to_string(detected.size()) + " detected positions for " +
                     std::to_string(nulls.size()) + " nulls");
  }
  const auto& layout = grid.layout();
  for (int d : detected) {
    if (!layout.is_data(d)) throw InputError("deswitch: " + std::to_string(d) + " is not a data subcarrier");
  }
  for (int g : nulls) {
    if (!layout.is_null(g)) throw InputError("deswitch: " + std::to_string(g) + " is not a null subcarrier");
  }
  FrequencyGrid out = grid;
  detail::exchange(out.amplitudes(), detected, nulls);
  return out;
}

struct BitCount {
  long long errors = 0;
  long long bits = 0;
};

/// Hard-demaps both payloads and counts differing bits.
inline BitCount measure_symbol(const FrequencyGrid& sent, const FrequencyGrid& received, const ConstellationSpec& c) {
  if (!(sent.layout() == received.layout())) throw InputError("measure_symbol: layouts differ");
  const auto a = demap_symbols(sent, c);
  const auto b = demap_symbols(received, c);
  BitCount count;
  count.bits = static_cast<long long>(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) count.errors += a[i] != b[i] ? 1 : 0;
  return count;
}

}  // namespace nullswitch
