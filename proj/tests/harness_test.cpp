#include <gtest/gtest.h>

#include <sstream>

#include "nullswitch/harness.hpp"

using namespace nullswitch;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.n = 16;
  cfg.nd = 12;
  cfg.ng = 4;
  cfg.p = 2;
  cfg.num_symbols = 300;
  cfg.seed = 2024;
  return cfg;
}

template <typename Fn>
std::string csv(Fn&& fn) {
  std::ostringstream os;
  fn(os);
  return os.str();
}

}  // namespace

TEST(Harness, ConfigLineEchoesIdentity) {
  ExperimentConfig cfg;
  cfg.snr_db_list = {0, 2.5};
  cfg.threads = 8;
  EXPECT_EQ(config_line(cfg),
            "# config: n=64;nd=52;ng=12;p=2;mod=qpsk;oversample=4;symbols=10000;snr=0,2.5;"
            "scheme=proposed;tx_mode=min-papr;snr_ref=symbol;seed=1");
}

TEST(Harness, CcdfCurveIsAValidCcdf) {
  for (auto scheme : {SchemeKind::none, SchemeKind::proposed, SchemeKind::conventional}) {
    auto cfg = small_config();
    cfg.scheme = scheme;
    const auto c = run_ccdf(cfg);
    ASSERT_FALSE(c.exceed_prob.empty());
    EXPECT_EQ(c.samples, 300);
    EXPECT_EQ(c.exceed_prob.front(), 1.0);
    EXPECT_EQ(c.exceed_prob.back(), 0.0);
    for (std::size_t j = 0; j < c.exceed_prob.size(); ++j) {
      EXPECT_GE(c.exceed_prob[j], 0.0);
      EXPECT_LE(c.exceed_prob[j], 1.0);
      if (j) {
        EXPECT_LE(c.exceed_prob[j], c.exceed_prob[j - 1]);
        EXPECT_NEAR(c.thresholds_db[j] - c.thresholds_db[j - 1], 0.05, 1e-12);
      }
    }
  }
}

// Equidistant rows are a subset of all P-subsets, so per symbol the proposed
// minimum is never below the conventional one.
TEST(Harness, ProposedCurveNotBelowConventional) {
  for (bool small : {true, false}) {
    auto cfg = small_config();
    if (!small) {
      cfg.n = 64;
      cfg.nd = 52;
      cfg.ng = 12;
      cfg.num_symbols = 60;
    }
    cfg.scheme = SchemeKind::proposed;
    const auto prop = run_ccdf(cfg);
    cfg.scheme = SchemeKind::conventional;
    const auto conv = run_ccdf(cfg);
    for (std::size_t j = 0; j < conv.exceed_prob.size(); ++j) {
      const double p = j < prop.exceed_prob.size() ? prop.exceed_prob[j] : 0.0;
      EXPECT_GE(p, conv.exceed_prob[j]);
    }
  }
}

TEST(Harness, CsvIndependentOfThreadCount) {
  auto cfg = small_config();
  cfg.scheme = SchemeKind::conventional;
  cfg.snr_db_list = {0, 4, 8};
  auto run_all = [&](int threads) {
    cfg.threads = threads;
    std::string out;
    out += csv([&](std::ostream& os) { write_ccdf_csv(os, cfg, run_ccdf(cfg)); });
    out += csv([&](std::ostream& os) { write_detection_csv(os, cfg, run_detection(cfg)); });
    out += csv([&](std::ostream& os) { write_ber_csv(os, cfg, run_ber(cfg)); });
    return out;
  };
  const auto one = run_all(1);
  EXPECT_EQ(one, run_all(3));
  EXPECT_EQ(one, run_all(7));
}

TEST(Harness, HighSnrIsPerfect) {
  for (auto scheme : {SchemeKind::conventional, SchemeKind::proposed}) {
    for (auto mode : {TxMode::min_papr, TxMode::random_candidate}) {
      auto cfg = small_config();
      cfg.n = 64;
      cfg.nd = 52;
      cfg.ng = 12;
      cfg.p = 4;
      cfg.scheme = scheme;
      cfg.tx_mode = mode;
      cfg.num_symbols = scheme == SchemeKind::conventional && mode == TxMode::min_papr ? 2 : 200;
      cfg.snr_db_list = {100.0};
      const auto pts = run_ber(cfg);
      EXPECT_EQ(pts[0].detection_rate(), 1.0);
      EXPECT_EQ(pts[0].bit_errors, 0);
      EXPECT_EQ(pts[0].total_bits, cfg.num_symbols * 104);
    }
  }
}

TEST(Harness, DetectionMonotoneInSnr) {
  auto cfg = small_config();
  cfg.n = 64;
  cfg.nd = 52;
  cfg.ng = 12;
  cfg.scheme = SchemeKind::proposed;
  cfg.num_symbols = 2000;
  cfg.snr_db_list = {-3, 0, 3, 6, 9, 12};
  const auto pts = run_detection(cfg);
  for (std::size_t k = 1; k < pts.size(); ++k) EXPECT_GE(pts[k].detection_rate() + 0.005, pts[k - 1].detection_rate());
}

TEST(Harness, WorkloadGuard) {
  ExperimentConfig cfg;
  cfg.scheme = SchemeKind::conventional;
  cfg.p = 4;
  cfg.op_budget = 1e6;
  try {
    run_ccdf(cfg);
    FAIL() << "expected refusal";
  } catch (const WorkloadRefused& e) {
    EXPECT_EQ(e.suggested_symbols(), 3);  // 1e6 / 270725
  }
  EXPECT_THROW(run_detection(cfg), WorkloadRefused);
  cfg.tx_mode = TxMode::random_candidate;
  cfg.num_symbols = 10;
  EXPECT_NO_THROW(run_detection(cfg));   // random candidates cost nothing to pick
  EXPECT_THROW(run_ccdf(cfg), WorkloadRefused);  // CCDF always searches
}

TEST(Harness, ConfigErrors) {
  ExperimentConfig cfg;
  cfg.ng = 13;
  EXPECT_THROW(run_ccdf(cfg), ConfigError);
  cfg = ExperimentConfig{};
  cfg.p = 3;
  EXPECT_THROW(run_ccdf(cfg), ConfigError);
  cfg = ExperimentConfig{};
  cfg.snr_db_list.clear();
  EXPECT_THROW(run_ber(cfg), ConfigError);
  cfg = ExperimentConfig{};
  cfg.scheme = SchemeKind::none;
  EXPECT_THROW(run_detection(cfg), ConfigError);
  cfg = ExperimentConfig{};
  cfg.num_symbols = 0;
  EXPECT_THROW(run_ccdf(cfg), ConfigError);
  cfg = ExperimentConfig{};
  cfg.oversample = 3;
  EXPECT_THROW(run_ccdf(cfg), ConfigError);
}

TEST(Harness, CrossingInterpolation) {
  CcdfCurve c;
  c.thresholds_db = {9.0, 9.05, 9.1, 9.15};
  c.exceed_prob = {0.1, 0.01, 0.001, 0.0};
  EXPECT_NEAR(*ccdf_crossing(c, 0.01), 9.05, 1e-12);
  EXPECT_NEAR(*ccdf_crossing(c, std::sqrt(0.1 * 0.01)), 9.025, 1e-12);
  EXPECT_NEAR(*ccdf_crossing(c, 0.0005), 9.125, 1e-12);
  EXPECT_FALSE(ccdf_crossing(c, 0.5).has_value());

  std::vector<LinkPoint> pts(2);
  pts[0] = {4.0, 1, 0, 100, 10000};
  pts[1] = {6.0, 1, 0, 1, 10000};
  EXPECT_NEAR(*snr_at_ber(pts, 1e-3), 5.0, 1e-12);
}

TEST(Harness, ComplexityCsv) {
  ExperimentConfig cfg;
  const auto text = csv([&](std::ostream& os) { write_complexity_csv(os, cfg, run_complexity(cfg)); });
  EXPECT_EQ(text, config_line(cfg) +
                      "\nscheme,ifft_count,additions,multiplications,si_bits\n"
                      "original,1326,847314,595374,12\n"
                      "ahmed,77,49203,34573,12\n"
                      "proposed,26,16640,11726,6\n");
}

TEST(Harness, SameSeedPairsSchemes) {
  // scheme none and proposed see the same payload and unit noise: at an SNR
  // where detection is always right their error counts are close, never wildly apart
  auto cfg = small_config();
  cfg.n = 64;
  cfg.nd = 52;
  cfg.ng = 12;
  cfg.p = 4;
  cfg.num_symbols = 500;
  cfg.snr_db_list = {10.0};
  cfg.scheme = SchemeKind::none;
  const auto base = run_ber(cfg);
  cfg.scheme = SchemeKind::proposed;
  const auto prop = run_ber(cfg);
  EXPECT_EQ(prop[0].detection_rate(), 1.0);
  EXPECT_EQ(base[0].total_bits, prop[0].total_bits);
  EXPECT_NEAR(static_cast<double>(prop[0].bit_errors), static_cast<double>(base[0].bit_errors),
              5.0 * std::sqrt(static_cast<double>(base[0].bit_errors) + 1.0));
}
