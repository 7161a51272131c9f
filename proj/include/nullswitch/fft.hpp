#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "nullswitch/error.hpp"

namespace nullswitch {

constexpr bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

/// In-place iterative radix-2 decimation-in-time FFT of a fixed size.
///
/// forward:  X[k] = sum_n x[n] exp(-2 pi i k n / size)
/// inverse:  x[n] = sum_k X[k] exp(+2 pi i k n / size)   (no 1/size factor)
class FftPlan {
 public:
  using Complex = std::complex<double>;

  explicit FftPlan(std::size_t size) : size_(size) {
    if (!is_power_of_two(size)) {
      throw ConfigError("fft: size " + std::to_string(size) + " is not a power of two");
    }
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < size) ++bits;
    bitrev_.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < bits; ++b) r |= ((i >> b) & 1U) << (bits - 1 - b);
      bitrev_[i] = r;
    }
    // twiddles for the largest stage; stage of length m uses stride size/m
    twiddle_.resize(size / 2 + 1);
    for (std::size_t k = 0; k < twiddle_.size(); ++k) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(size);
      twiddle_[k] = Complex(std::cos(angle), std::sin(angle));
    }
  }

  std::size_t size() const noexcept { return size_; }

  void forward(std::span<Complex> data) const { run(data, false); }
  void inverse(std::span<Complex> data) const { run(data, true); }

 private:
  void run(std::span<Complex> data, bool inverse) const {
    if (data.size() != size_) {
      throw InputError("fft: buffer length " + std::to_string(data.size()) + " != plan size " +
                       std::to_string(size_));
    }
    for (std::size_t i = 0; i < size_; ++i) {
      const std::size_t j = bitrev_[i];
      if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t half = 1; half < size_; half *= 2) {
      const std::size_t stride = size_ / (2 * half);
      for (std::size_t start = 0; start < size_; start += 2 * half) {
        for (std::size_t k = 0; k < half; ++k) {
          const Complex w = twiddle_[k * stride];
          const double wi = inverse ? -w.imag() : w.imag();
          const Complex a = data[start + k];
          const Complex x = data[start + k + half];
          // spelled out: operator* on std::complex goes through the slow NaN-recovery path
          const Complex b(x.real() * w.real() - x.imag() * wi, x.real() * wi + x.imag() * w.real());
          data[start + k] = a + b;
          data[start + k + half] = a - b;
        }
      }
    }
  }

  std::size_t size_;
  std::vector<std::size_t> bitrev_;
  std::vector<Complex> twiddle_;
};

/// Per-thread cache of plans keyed by size.
inline const FftPlan& fft_plan(std::size_t size) {
  thread_local std::map<std::size_t, std::unique_ptr<FftPlan>> cache;
  auto it = cache.find(size);
  if (it == cache.end()) {
    it = cache.emplace(size, std::make_unique<FftPlan>(size)).first;
  }
  return *it->second;
}

}  // namespace nullswitch
