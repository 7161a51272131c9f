#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <random>

#include "nullswitch/constellation.hpp"

using namespace nullswitch;

namespace {

const Modulation kAll[] = {Modulation::bpsk, Modulation::qpsk, Modulation::qam16, Modulation::qam64};

Bits random_bits(std::size_t n, unsigned seed) {
  std::mt19937 gen(seed);
  Bits b(n);
  for (auto& x : b) x = static_cast<std::uint8_t>(gen() & 1U);
  return b;
}

}  // namespace

TEST(Constellation, UnitAverageEnergy) {
  for (auto m : kAll) {
    const auto c = make_constellation(m);
    double e = 0.0;
    for (auto p : c.points) e += std::norm(p);
    EXPECT_NEAR(e / static_cast<double>(c.points.size()), 1.0, 1e-12) << c.name;
    EXPECT_EQ(c.points.size(), std::size_t{1} << c.bits_per_symbol);
  }
}

// Nearest neighbours along either axis differ in exactly one label bit.
TEST(Constellation, GrayNeighbours) {
  for (auto m : kAll) {
    const auto c = make_constellation(m);
    double step = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < c.points.size(); ++a) {
      for (std::size_t b = a + 1; b < c.points.size(); ++b) step = std::min(step, std::abs(c.points[a] - c.points[b]));
    }
    int pairs = 0;
    for (std::size_t a = 0; a < c.points.size(); ++a) {
      for (std::size_t b = a + 1; b < c.points.size(); ++b) {
        if (std::abs(std::abs(c.points[a] - c.points[b]) - step) < 1e-9) {
          EXPECT_EQ(std::popcount(static_cast<unsigned>(a ^ b)), 1) << c.name << " labels " << a << "," << b;
          ++pairs;
        }
      }
    }
    EXPECT_GT(pairs, 0);
  }
}

TEST(MapBits, AllZeroBpsk) {
  const auto layout = build_layout(64, 52, 12);
  const auto c = make_constellation(Modulation::bpsk);
  const Bits bits(52, 0);
  const auto grid = map_bits(bits, c, layout);
  for (int i = 1; i <= 64; ++i) {
    if (layout.is_data(i)) {
      EXPECT_EQ(grid.at(i), Complex(1.0, 0.0));
    } else {
      EXPECT_EQ(grid.at(i), Complex(0.0, 0.0));
    }
  }
}

TEST(MapBits, NullsAreExactlyZero) {
  const auto layout = build_layout(64, 52, 12);
  for (auto m : kAll) {
    const auto c = make_constellation(m);
    const auto grid = map_bits(random_bits(52 * static_cast<std::size_t>(c.bits_per_symbol), 3), c, layout);
    int zeros = 0;
    for (int i = 1; i <= 64; ++i) {
      if (grid.at(i) == Complex{}) {
        ++zeros;
        EXPECT_TRUE(layout.is_null(i));
      }
    }
    EXPECT_EQ(zeros, 12);
  }
}

TEST(MapBits, QpskMeanEnergy) {
  const auto layout = build_layout(64, 52, 12);
  const auto c = make_constellation(Modulation::qpsk);
  const auto grid = map_bits(random_bits(104, 9), c, layout);
  EXPECT_NEAR(grid.energy() / 52.0, 1.0, 1e-12);
}

TEST(MapBits, WrongBitCount) {
  const auto layout = build_layout(64, 52, 12);
  const auto c = make_constellation(Modulation::qpsk);
  EXPECT_THROW(map_bits(Bits(103, 0), c, layout), InputError);
}

TEST(Demap, RoundTripAllConstellations) {
  const auto layout = build_layout(64, 52, 12);
  for (auto m : kAll) {
    const auto c = make_constellation(m);
    for (unsigned seed = 0; seed < 20; ++seed) {
      const auto bits = random_bits(52 * static_cast<std::size_t>(c.bits_per_symbol), seed);
      EXPECT_EQ(demap_symbols(map_bits(bits, c, layout), c), bits) << c.name;
    }
  }
}

TEST(Demap, OneNegatedBpskSymbolIsOneError) {
  const auto layout = build_layout(64, 52, 12);
  const auto c = make_constellation(Modulation::bpsk);
  const auto bits = random_bits(52, 1);
  auto grid = map_bits(bits, c, layout);
  grid.at(20) = -grid.at(20);
  const auto out = demap_symbols(grid, c);
  int errors = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) errors += bits[i] != out[i];
  EXPECT_EQ(errors, 1);
}

TEST(Demap, QpskOriginTieGoesToLowestLabel) {
  const auto c = make_constellation(Modulation::qpsk);
  EXPECT_EQ(nearest_label(c, Complex(0.0, 0.0)), 0U);
  const auto layout = build_layout(16, 12, 4);
  const FrequencyGrid zeros(layout);
  for (auto b : demap_symbols(zeros, c)) EXPECT_EQ(b, 0);
}

TEST(Constellation, ParseNames) {
  EXPECT_EQ(parse_modulation("16qam"), Modulation::qam16);
  EXPECT_EQ(make_constellation("64qam").bits_per_symbol, 6);
  EXPECT_THROW(parse_modulation("8psk"), ConfigError);
}
