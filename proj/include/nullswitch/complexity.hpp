#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "nullswitch/error.hpp"
#include "nullswitch/fft.hpp"

namespace nullswitch::complexity {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Scheme { original, ahmed, proposed };

inline std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::original: return "original";
    case Scheme::ahmed: return "ahmed";
    case Scheme::proposed: return "proposed";
  }
  return "?";
}

/// Operation counts for the transmit search (IFFTs + PAPR evaluations)
/// and, for the proposed scheme, the equidistant detector. Counts use the
/// N-point transform, not the oversampled one.
struct ComplexityReport {
  Scheme scheme = Scheme::original;
  Integer ifft_count;  // C(Nd,P), M_s or R
  Rational additions;
  Rational multiplications;
  int si_bits_blind = 0;     // all three schemes are blind
  int si_bits_nonblind = 0;  // bits needed if the positions were signalled
};

inline int log2_exact(int n) {
  if (n < 1 || !is_power_of_two(static_cast<std::size_t>(n))) {
    throw ConfigError("N=" + std::to_string(n) + " is not a power of two");
  }
  int bits = 0;
  while ((1 << bits) < n) ++bits;
  return bits;
}

/// Q = N log2 N.
inline long long q_of(int n) { return static_cast<long long>(n) * log2_exact(n); }

/// Worst-case IFFT count of the reduced iterative search:
/// R + (2R-1) + ... + (PR-(P-1)) = (P/2)[(P+1)R - P + 1].
inline long long ms_of(int p, int r) {
  if (p < 1 || r < 1) throw ConfigError("ms_of: P and R must be >= 1");
  const long long pp = p;
  // (P+1)R - P + 1 is even whenever P is odd, so this division is exact
  return pp * ((pp + 1) * r - pp + 1) / 2;
}

inline Integer binomial_exact(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer acc = 1;
  for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return acc;
}

enum class SiLayout { per_index, equidistant };

/// Side-information bits for signalling P switched positions among N:
/// one log2 N index each, or only the first one when the rest follow from
/// equidistance.
inline int si_bits(int n, int p, SiLayout layout) {
  const int b = log2_exact(n);
  return layout == SiLayout::per_index ? p * b : b;
}

inline ComplexityReport count_ops(Scheme scheme, int n, int nd, int p) {
  const long long q = q_of(n);
  if (nd < 2 || nd >= n) throw ConfigError("count_ops: need 2 <= Nd < N");
  if (p < 1 || p > nd) throw ConfigError("count_ops: need 1 <= P <= Nd");
  if (scheme != Scheme::original && (p % 2 != 0 || nd % p != 0)) {
    throw ConfigError("count_ops: " + std::string(scheme_name(scheme)) + " needs even P dividing Nd");
  }

  const Rational per_ifft_add = q + 4LL * n - 1;
  const Rational per_ifft_mul = Rational(q + 8LL * n + 2) / 2;

  ComplexityReport r;
  r.scheme = scheme;
  switch (scheme) {
    case Scheme::original:
      r.ifft_count = binomial_exact(nd, p);
      r.si_bits_nonblind = si_bits(n, p, SiLayout::per_index);
      break;
    case Scheme::ahmed:
      r.ifft_count = ms_of(p, nd / p);
      r.si_bits_nonblind = si_bits(n, p, SiLayout::per_index);
      break;
    case Scheme::proposed:
      r.ifft_count = nd / p;
      r.si_bits_nonblind = si_bits(n, p, SiLayout::equidistant);
      break;
  }
  r.additions = Rational(r.ifft_count) * per_ifft_add;
  r.multiplications = Rational(r.ifft_count) * per_ifft_mul;
  if (scheme == Scheme::proposed) {
    const long long rows = nd / p;
    // detector: (4R - 2/P + 1) / (2P) additions and Nd multiplications
    r.additions += (Rational(4 * rows + 1) - Rational(2, p)) / (2 * p);
    r.multiplications += nd;
  }
  return r;
}

/// Round half up to an integer.
inline Integer round_half_up(const Rational& x) {
  const Rational shifted = x + Rational(1, 2);
  Integer num = boost::multiprecision::numerator(shifted);
  const Integer den = boost::multiprecision::denominator(shifted);
  Integer quotient = num / den;
  if (num < 0 && quotient * den != num) quotient -= 1;  // floor for negatives
  return quotient;
}

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// Percentage by which `reduced` undercuts `baseline`.
inline double reduction_percent(const Rational& baseline, const Rational& reduced) {
  return 100.0 * to_double((baseline - reduced) / baseline);
}

inline std::array<ComplexityReport, 3> compare_schemes(int n, int nd, int p) {
  return {count_ops(Scheme::original, n, nd, p), count_ops(Scheme::ahmed, n, nd, p),
          count_ops(Scheme::proposed, n, nd, p)};
}

}  // namespace nullswitch::complexity
