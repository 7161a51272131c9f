#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "nullswitch/error.hpp"
#include "nullswitch/fft.hpp"
#include "nullswitch/layout.hpp"

namespace nullswitch {

using Complex = std::complex<double>;

/// Frequency-domain OFDM symbol: one complex amplitude per subcarrier.
/// Indexing through at() is 1-based to match SubcarrierLayout.
class FrequencyGrid {
 public:
  FrequencyGrid() = default;

  explicit FrequencyGrid(SubcarrierLayout layout)
      : layout_(std::move(layout)), amps_(static_cast<std::size_t>(layout_.total())) {}

  FrequencyGrid(SubcarrierLayout layout, std::vector<Complex> amplitudes)
      : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
    if (amps_.size() != static_cast<std::size_t>(layout_.total())) {
      throw InputError("grid: " + std::to_string(amps_.size()) + " amplitudes for N=" +
                       std::to_string(layout_.total()));
    }
  }

  const SubcarrierLayout& layout() const noexcept { return layout_; }
  int size() const noexcept { return static_cast<int>(amps_.size()); }

  Complex& at(int index) { return amps_[slot(index)]; }
  const Complex& at(int index) const { return amps_[slot(index)]; }

  /// 0-based view, element k is subcarrier k+1.
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  std::span<Complex> amplitudes() noexcept { return amps_; }

  double energy() const noexcept {
    double e = 0.0;
    for (const auto& a : amps_) e += std::norm(a);
    return e;
  }

  friend bool operator==(const FrequencyGrid& a, const FrequencyGrid& b) {
    return a.layout_ == b.layout_ && a.amps_ == b.amps_;
  }

 private:
  std::size_t slot(int index) const {
    if (index < 1 || index > size()) {
      throw InputError("grid: subcarrier index " + std::to_string(index) + " outside 1.." +
                       std::to_string(size()));
    }
    return static_cast<std::size_t>(index - 1);
  }

  SubcarrierLayout layout_;
  std::vector<Complex> amps_;
};

/// Time-domain samples of one OFDM symbol at oversampling factor L.
struct TimeSignal {
  std::vector<Complex> samples;  // L * N samples
  int oversample = 1;
};

namespace detail {

// Transform bin holding subcarrier `index` (1-based) in a centered spectrum of
// `n` subcarriers spread over `m` bins: (index - 1 - n/2) mod m.
inline std::size_t centered_bin(int index, int n, std::size_t m) {
  const long long offset = static_cast<long long>(index) - 1 - n / 2;
  const long long mm = static_cast<long long>(m);
  return static_cast<std::size_t>(((offset % mm) + mm) % mm);
}

}  // namespace detail

/// Writes the oversampled time signal of `grid` into `out` (length L*N).
/// Zero-padded centered-spectrum IFFT, scaled by 1/(L*N).
inline void to_time_into(const FrequencyGrid& grid, int oversample, std::span<Complex> out) {
  const int n = grid.size();
  if (oversample < 1) throw ConfigError("to_time: oversample factor must be >= 1");
  const std::size_t m = static_cast<std::size_t>(n) * static_cast<std::size_t>(oversample);
  if (!is_power_of_two(m) || !is_power_of_two(static_cast<std::size_t>(n))) {
    throw ConfigError("to_time: N=" + std::to_string(n) + " and L*N=" + std::to_string(m) +
                      " must be powers of two");
  }
  if (out.size() != m) throw InputError("to_time: output buffer has wrong length");
  std::fill(out.begin(), out.end(), Complex{});
  const auto amps = grid.amplitudes();
  for (int i = 1; i <= n; ++i) out[detail::centered_bin(i, n, m)] = amps[static_cast<std::size_t>(i - 1)];
  fft_plan(m).inverse(out);
  const double scale = 1.0 / static_cast<double>(m);
  for (auto& s : out) s *= scale;
}

inline TimeSignal to_time(const FrequencyGrid& grid, int oversample) {
  TimeSignal sig;
  sig.oversample = oversample;
  sig.samples.resize(static_cast<std::size_t>(grid.size()) * static_cast<std::size_t>(std::max(oversample, 1)));
  to_time_into(grid, oversample, sig.samples);
  return sig;
}

/// Inverse of to_time at L = 1.
inline FrequencyGrid to_freq(const TimeSignal& signal, const SubcarrierLayout& layout) {
  const int n = layout.total();
  if (signal.oversample != 1 || signal.samples.size() != static_cast<std::size_t>(n)) {
    throw InputError("to_freq: expected " + std::to_string(n) + " samples at L=1, got " +
                     std::to_string(signal.samples.size()) + " at L=" +
                     std::to_string(signal.oversample));
  }
  std::vector<Complex> bins = signal.samples;
  fft_plan(bins.size()).forward(bins);
  FrequencyGrid grid(layout);
  auto amps = grid.amplitudes();
  for (int i = 1; i <= n; ++i) amps[static_cast<std::size_t>(i - 1)] = bins[detail::centered_bin(i, n, bins.size())];
  return grid;
}

/// 10 log10(max |x|^2 / mean |x|^2).
inline double papr_db(std::span<const Complex> samples) {
  double peak = 0.0;
  double total = 0.0;
  for (const auto& s : samples) {
    const double p = s.real() * s.real() + s.imag() * s.imag();
    total += p;
    peak = std::max(peak, p);
  }
  if (samples.empty() || total == 0.0) throw UndefinedPaprError("papr: signal is all zero");
  return 10.0 * std::log10(peak * static_cast<double>(samples.size()) / total);
}

inline double papr_db(const TimeSignal& signal) { return papr_db(std::span<const Complex>(signal.samples)); }

}  // namespace nullswitch
