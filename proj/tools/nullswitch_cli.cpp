// nullswitch: Monte-Carlo driver for data/null subcarrier switching PAPR reduction.
//
//   nullswitch ccdf       --scheme proposed --p 2 --out ccdf.csv
//   nullswitch detect     --scheme conventional --p 4 --tx-mode random-candidate
//   nullswitch ber        --scheme none --mod bpsk --snr 0,2,4,6,8
//   nullswitch complexity --p 2
//
// Exit codes: 0 ok, 2 configuration error, 3 workload refused.

#ifdef NULLSWITCH_CLI11_PACKAGE
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "nullswitch/nullswitch.hpp"

namespace {

namespace ns = nullswitch;

constexpr int kExitConfig = 2;
constexpr int kExitRefused = 3;

void add_common(CLI::App& cmd, ns::ExperimentConfig& cfg, std::string& mod) {
  cmd.add_option("--n", cfg.n, "total subcarriers")->capture_default_str();
  cmd.add_option("--nd", cfg.nd, "data subcarriers")->capture_default_str();
  cmd.add_option("--ng", cfg.ng, "null subcarriers")->capture_default_str();
  cmd.add_option("--p", cfg.p, "switched null subcarriers")->capture_default_str();
  cmd.add_option("--mod", mod, "bpsk, qpsk, 16qam or 64qam")
      ->check(CLI::IsMember({"bpsk", "qpsk", "16qam", "64qam"}))
      ->capture_default_str();
  cmd.add_option("--oversample", cfg.oversample, "oversampling factor L")->capture_default_str();
  cmd.add_option("--symbols", cfg.num_symbols, "OFDM symbols to simulate")->capture_default_str();
  cmd.add_option("--snr", cfg.snr_db_list, "comma-separated SNR list in dB")->delimiter(',');
  cmd.add_option("--scheme", cfg.scheme, "none, conventional or proposed")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, ns::SchemeKind>{{"none", ns::SchemeKind::none},
                                                {"conventional", ns::SchemeKind::conventional},
                                                {"proposed", ns::SchemeKind::proposed}}));
  cmd.add_option("--tx-mode", cfg.tx_mode, "min-papr or random-candidate")
      ->transform(CLI::CheckedTransformer(std::map<std::string, ns::TxMode>{
          {"min-papr", ns::TxMode::min_papr}, {"random-candidate", ns::TxMode::random_candidate}}));
  cmd.add_option("--snr-ref", cfg.snr_reference, "SNR reference: symbol (mean signal power) or subcarrier (Es/N0)")
      ->transform(CLI::CheckedTransformer(std::map<std::string, ns::SnrReference>{
          {"symbol", ns::SnrReference::symbol}, {"subcarrier", ns::SnrReference::subcarrier}}));
  cmd.add_option("--seed", cfg.seed, "master seed")->capture_default_str();
  cmd.add_option("--out", cfg.output_path, "CSV output path (default stdout)");
  cmd.add_option("--op-budget", cfg.op_budget, "max candidate transforms for conventional search")
      ->capture_default_str();
  cmd.add_option("--threads", cfg.threads, "worker threads (results do not depend on it)")->capture_default_str();
}

template <typename Writer>
void emit(const ns::ExperimentConfig& cfg, Writer&& write) {
  if (cfg.output_path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(cfg.output_path);
  if (!out) throw ns::ConfigError("cannot open output file '" + cfg.output_path + "'");
  write(out);
}

void print_crossings(const ns::CcdfCurve& curve) {
  for (double prob : {1e-1, 1e-2, 1e-3}) {
    const auto x = ns::ccdf_crossing(curve, prob);
    if (x) {
      std::fprintf(stderr, "  CCDF %.0e at %.2f dB\n", prob, *x);
    } else {
      std::fprintf(stderr, "  CCDF %.0e not reached\n", prob);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data/null subcarrier switching PAPR reduction simulator"};
  app.require_subcommand(1);

  ns::ExperimentConfig cfg;
  std::string mod = "qpsk";

  auto* ccdf = app.add_subcommand("ccdf", "empirical PAPR CCDF");
  auto* detect = app.add_subcommand("detect", "switched-null detection rate vs SNR");
  auto* ber = app.add_subcommand("ber", "bit error rate vs SNR");
  auto* cplx = app.add_subcommand("complexity", "closed-form operation counts");
  for (auto* cmd : {ccdf, detect, ber, cplx}) add_common(*cmd, cfg, mod);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    cfg.modulation = ns::parse_modulation(mod);
    const auto start = std::chrono::steady_clock::now();

    if (ccdf->parsed()) {
      const auto curve = ns::run_ccdf(cfg);
      emit(cfg, [&](std::ostream& os) { ns::write_ccdf_csv(os, cfg, curve); });
      print_crossings(curve);
    } else if (detect->parsed()) {
      const auto pts = ns::run_detection(cfg);
      emit(cfg, [&](std::ostream& os) { ns::write_detection_csv(os, cfg, pts); });
    } else if (ber->parsed()) {
      const auto pts = ns::run_ber(cfg);
      emit(cfg, [&](std::ostream& os) { ns::write_ber_csv(os, cfg, pts); });
      if (const auto x = ns::snr_at_ber(pts, 1e-3)) std::fprintf(stderr, "  BER 1e-3 at %.2f dB\n", *x);
    } else if (cplx->parsed()) {
      const auto reports = ns::run_complexity(cfg);
      emit(cfg, [&](std::ostream& os) { ns::write_complexity_csv(os, cfg, reports); });
      const auto& orig = reports[0];
      const auto& prop = reports[2];
      std::fprintf(stderr, "  original/proposed additions ratio %.4f\n",
                   ns::complexity::to_double(orig.additions / prop.additions));
      std::fprintf(stderr, "  reduction: %.2f%% additions, %.2f%% multiplications\n",
                   ns::complexity::reduction_percent(orig.additions, prop.additions),
                   ns::complexity::reduction_percent(orig.multiplications, prop.multiplications));
    }

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::fprintf(stderr, "  done in %.2f s\n", secs);
  } catch (const ns::WorkloadRefused& e) {
    std::fprintf(stderr, "refused: %s\n", e.what());
    return kExitRefused;
  } catch (const ns::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const ns::InputError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  }
  return 0;
}
