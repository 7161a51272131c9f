#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "nullswitch/complexity.hpp"
#include "nullswitch/constellation.hpp"
#include "nullswitch/error.hpp"
#include "nullswitch/layout.hpp"
#include "nullswitch/random.hpp"
#include "nullswitch/receiver.hpp"
#include "nullswitch/signal.hpp"
#include "nullswitch/switching.hpp"

namespace nullswitch {

enum class SchemeKind { none, conventional, proposed };
enum class TxMode { min_papr, random_candidate };

/// What the SNR is referenced to. `symbol`: mean power of the transmitted
/// time-domain symbol (Nd/N per subcarrier). `subcarrier`: energy of one
/// data subcarrier (Es/N0).
enum class SnrReference { symbol, subcarrier };

inline std::string_view label(SchemeKind s) {
  switch (s) {
    case SchemeKind::none: return "none";
    case SchemeKind::conventional: return "conventional";
    case SchemeKind::proposed: return "proposed";
  }
  return "?";
}
inline std::string_view label(TxMode m) { return m == TxMode::min_papr ? "min-papr" : "random-candidate"; }
inline std::string_view label(SnrReference r) { return r == SnrReference::symbol ? "symbol" : "subcarrier"; }

struct ExperimentConfig {
  int n = 64;
  int nd = 52;
  int ng = 12;
  int p = 2;
  Modulation modulation = Modulation::qpsk;
  int oversample = 4;
  long long num_symbols = 10000;
  std::vector<double> snr_db_list{0, 3, 6, 9, 12};
  SchemeKind scheme = SchemeKind::proposed;
  TxMode tx_mode = TxMode::min_papr;
  SnrReference snr_reference = SnrReference::symbol;
  std::uint64_t seed = 1;
  std::string output_path;
  /// Upper bound on candidate transforms a conventional min-PAPR run may do.
  double op_budget = 1e8;
  /// Worker threads; results do not depend on it.
  int threads = 1;
};

// ---------------------------------------------------------------- formatting

inline std::string format_number(double v, const char* spec = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

inline std::string join_numbers(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_number(v[i]);
  }
  return s;
}

/// `# config: key=value;...` line echoed at the top of every CSV.
inline std::string config_line(const ExperimentConfig& c) {
  std::string s = "# config: ";
  s += "n=" + std::to_string(c.n);
  s += ";nd=" + std::to_string(c.nd);
  s += ";ng=" + std::to_string(c.ng);
  s += ";p=" + std::to_string(c.p);
  s += ";mod=" + std::string(modulation_name(c.modulation));
  s += ";oversample=" + std::to_string(c.oversample);
  s += ";symbols=" + std::to_string(c.num_symbols);
  s += ";snr=" + join_numbers(c.snr_db_list);
  s += ";scheme=" + std::string(label(c.scheme));
  s += ";tx_mode=" + std::string(label(c.tx_mode));
  s += ";snr_ref=" + std::string(label(c.snr_reference));
  s += ";seed=" + std::to_string(c.seed);
  return s;
}

// ---------------------------------------------------------------- validation

inline SubcarrierLayout validate_config(const ExperimentConfig& c, bool needs_snr) {
  auto layout = build_layout(c.n, c.nd, c.ng);
  if (!is_power_of_two(static_cast<std::size_t>(c.n))) throw ConfigError("N must be a power of two");
  if (c.oversample < 1 || !is_power_of_two(static_cast<std::size_t>(c.oversample))) {
    throw ConfigError("oversample factor must be a power of two >= 1");
  }
  if (c.num_symbols < 1) throw ConfigError("symbol count must be >= 1");
  if (c.threads < 1) throw ConfigError("thread count must be >= 1");
  if (c.scheme != SchemeKind::none) validate_switch_count(layout, c.p);
  if (needs_snr && c.snr_db_list.empty()) throw ConfigError("SNR list is empty");
  return layout;
}

/// Refuses conventional min-PAPR runs whose C(Nd,P) * symbols exceeds the budget.
inline void check_workload(const ExperimentConfig& c, bool always_min_papr) {
  if (c.scheme != SchemeKind::conventional) return;
  if (!always_min_papr && c.tx_mode == TxMode::random_candidate) return;
  const double per_symbol = static_cast<double>(binomial(c.nd, c.p).value_or(UINT64_MAX));
  const double total = per_symbol * static_cast<double>(c.num_symbols);
  if (total > c.op_budget) {
    const auto suggested = static_cast<long long>(std::floor(c.op_budget / per_symbol));
    throw WorkloadRefused("conventional search needs " + format_number(total, "%.3g") +
                              " candidate transforms, over the budget of " + format_number(c.op_budget, "%.3g") +
                              "; try --symbols " + std::to_string(suggested) +
                              " or --tx-mode random-candidate",
                          suggested);
  }
}

// ---------------------------------------------------------------- sharding

/// Calls body(first, last) on contiguous symbol ranges, one per worker, and
/// returns the per-worker results in range order.
template <typename Result>
std::vector<Result> shard_symbols(long long count, int threads,
                                  const std::function<Result(long long, long long)>& body) {
  const long long workers = std::max<long long>(1, std::min<long long>(threads, count));
  std::vector<Result> results(static_cast<std::size_t>(workers));
  if (workers == 1) {
    results[0] = body(0, count);
    return results;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (long long w = 0; w < workers; ++w) {
    const long long first = count * w / workers;
    const long long last = count * (w + 1) / workers;
    pool.emplace_back([&, w, first, last] { results[static_cast<std::size_t>(w)] = body(first, last); });
  }
  for (auto& t : pool) t.join();
  return results;
}

// ---------------------------------------------------------------- transmitter

/// Everything the transmit side produced for one symbol.
struct TransmittedSymbol {
  FrequencyGrid payload;  // mapped grid before switching
  FrequencyGrid sent;     // grid actually transmitted
  SwitchPlan plan;        // empty for scheme none
  double papr_db = 0.0;   // of `sent`, only filled when computed
};

/// Draws payload bits and, for a switching scheme, picks the candidate per tx mode.
class Transmitter {
 public:
  Transmitter(const ExperimentConfig& cfg, SubcarrierLayout layout)
      : cfg_(cfg), layout_(std::move(layout)), constellation_(make_constellation(cfg.modulation)) {
    if (cfg_.scheme != SchemeKind::none) {
      nulls_ = innermost_null_set(layout_, cfg_.p);
      if (cfg_.scheme == SchemeKind::proposed) proposed_ = proposed_plans(layout_, cfg_.p);
    }
  }

  const ConstellationSpec& constellation() const noexcept { return constellation_; }
  const std::vector<int>& nulls() const noexcept { return nulls_; }

  FrequencyGrid payload(long long symbol) const {
    RandomStream rng(cfg_.seed, static_cast<std::uint64_t>(symbol), DrawKind::payload);
    Bits bits(layout_.data_indices().size() * static_cast<std::size_t>(constellation_.bits_per_symbol));
    for (auto& b : bits) b = rng.bit();
    return map_bits(bits, constellation_, layout_);
  }

  /// `force_min_papr` makes the tx mode irrelevant (CCDF runs).
  TransmittedSymbol transmit(long long symbol, bool force_min_papr, bool want_papr) const {
    TransmittedSymbol tx{payload(symbol), {}, {}, 0.0};
    if (cfg_.scheme == SchemeKind::none) {
      tx.sent = tx.payload;
      if (want_papr) tx.papr_db = papr_db(to_time(tx.sent, cfg_.oversample));
      return tx;
    }
    if (force_min_papr || cfg_.tx_mode == TxMode::min_papr) {
      Selection sel = cfg_.scheme == SchemeKind::proposed
                          ? select_min_papr(tx.payload, proposed_, cfg_.oversample)
                          : select_min_papr(tx.payload, conventional_plans(layout_, cfg_.p), cfg_.oversample);
      tx.sent = std::move(sel.grid);
      tx.plan = std::move(sel.plan);
      tx.papr_db = sel.papr_db;
      return tx;
    }
    RandomStream rng(cfg_.seed, static_cast<std::uint64_t>(symbol), DrawKind::candidate);
    tx.plan = random_candidate(rng);
    tx.sent = apply_switch(tx.payload, tx.plan);
    if (want_papr) tx.papr_db = papr_db(to_time(tx.sent, cfg_.oversample));
    return tx;
  }

 private:
  SwitchPlan random_candidate(RandomStream& rng) const {
    if (cfg_.scheme == SchemeKind::proposed) return proposed_[rng.below(proposed_.size())];
    // partial Fisher-Yates over the data band
    std::vector<int> pool = layout_.data_indices();
    const auto p = static_cast<std::size_t>(cfg_.p);
    for (std::size_t i = 0; i < p; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    std::vector<int> ds(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(p));
    std::sort(ds.begin(), ds.end());
    return SwitchPlan{nulls_, std::move(ds)};
  }

  ExperimentConfig cfg_;
  SubcarrierLayout layout_;
  ConstellationSpec constellation_;
  std::vector<int> nulls_;
  std::vector<SwitchPlan> proposed_;
};

// ---------------------------------------------------------------- CCDF

/// Empirical CCDF, P(PAPR >= threshold), on a fixed grid.
struct CcdfCurve {
  std::vector<double> thresholds_db;
  std::vector<double> exceed_prob;
  long long samples = 0;
};

/// Fixed-bin PAPR histogram; merging is plain integer addition.
class PaprHistogram {
 public:
  static constexpr double kBinDb = 0.05;
  static constexpr int kBins = 600;  // 0 .. 30 dB

  void add(double papr) {
    auto bin = static_cast<long long>(std::floor(papr / kBinDb + 1e-9));
    bin = std::clamp<long long>(bin, 0, kBins - 1);
    ++counts_[static_cast<std::size_t>(bin)];
    ++total_;
  }
  void merge(const PaprHistogram& other) {
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    total_ += other.total_;
  }
  long long total() const noexcept { return total_; }

  /// Thresholds from 0 dB up to the first one no sample reaches.
  CcdfCurve curve() const {
    CcdfCurve c;
    c.samples = total_;
    long long above = total_;
    for (int j = 0; j < kBins; ++j) {
      c.thresholds_db.push_back(j * kBinDb);
      c.exceed_prob.push_back(total_ ? static_cast<double>(above) / static_cast<double>(total_) : 0.0);
      if (above == 0) break;
      above -= counts_[static_cast<std::size_t>(j)];
    }
    return c;
  }

 private:
  std::vector<long long> counts_ = std::vector<long long>(kBins, 0);
  long long total_ = 0;
};

/// Threshold where the curve falls to `prob`, interpolating linearly in
/// log10(probability) between grid points (linearly in probability when
/// the lower point is zero). nullopt when the curve never gets that low.
inline std::optional<double> ccdf_crossing(const CcdfCurve& c, double prob) {
  for (std::size_t j = 1; j < c.exceed_prob.size(); ++j) {
    const double hi = c.exceed_prob[j - 1];
    const double lo = c.exceed_prob[j];
    if (hi > prob && lo <= prob) {
      double f;
      if (lo > 0.0) {
        f = (std::log10(hi) - std::log10(prob)) / (std::log10(hi) - std::log10(lo));
      } else {
        f = (hi - prob) / hi;
      }
      return c.thresholds_db[j - 1] + f * (c.thresholds_db[j] - c.thresholds_db[j - 1]);
    }
  }
  return std::nullopt;
}

inline CcdfCurve run_ccdf(const ExperimentConfig& cfg) {
  const auto layout = validate_config(cfg, false);
  check_workload(cfg, true);
  const Transmitter tx(cfg, layout);
  auto parts = shard_symbols<PaprHistogram>(cfg.num_symbols, cfg.threads, [&](long long first, long long last) {
    PaprHistogram h;
    for (long long s = first; s < last; ++s) h.add(tx.transmit(s, true, true).papr_db);
    return h;
  });
  PaprHistogram all;
  for (const auto& h : parts) all.merge(h);
  return all.curve();
}

// ---------------------------------------------------------------- link simulation

struct LinkPoint {
  double snr_db = 0.0;
  long long symbols = 0;
  long long detected_ok = 0;
  long long bit_errors = 0;
  long long total_bits = 0;

  double detection_rate() const { return symbols ? static_cast<double>(detected_ok) / static_cast<double>(symbols) : 0.0; }
  double ber() const { return total_bits ? static_cast<double>(bit_errors) / static_cast<double>(total_bits) : 0.0; }
};

/// Full chain per symbol and SNR: map, switch, AWGN, detect, de-switch,
/// demap, count. Each symbol's unit noise sequence is shared by all SNR
/// points (scaled by sigma), so curves are paired across SNR and across
/// schemes run with the same seed.
inline std::vector<LinkPoint> simulate_link(const ExperimentConfig& cfg) {
  const auto layout = validate_config(cfg, true);
  check_workload(cfg, false);
  const Transmitter tx(cfg, layout);
  const double reference =
      cfg.snr_reference == SnrReference::symbol ? static_cast<double>(cfg.nd) / static_cast<double>(cfg.n) : 1.0;
  std::vector<NoiseModel> models;
  for (double snr : cfg.snr_db_list) models.push_back(NoiseModel::from_snr_db(snr, reference));
  std::optional<CandidateMatrix> matrix;
  if (cfg.scheme == SchemeKind::proposed) matrix.emplace(layout, cfg.p);

  using Points = std::vector<LinkPoint>;
  auto parts = shard_symbols<Points>(cfg.num_symbols, cfg.threads, [&](long long first, long long last) {
    Points pts(models.size());
    for (std::size_t k = 0; k < models.size(); ++k) pts[k].snr_db = models[k].snr_db;
    for (long long s = first; s < last; ++s) {
      const auto sym = tx.transmit(s, false, false);
      for (std::size_t k = 0; k < models.size(); ++k) {
        RandomStream noise(cfg.seed, static_cast<std::uint64_t>(s), DrawKind::noise);
        FrequencyGrid rx = add_awgn(sym.sent, models[k], noise);
        auto& pt = pts[k];
        ++pt.symbols;
        if (cfg.scheme != SchemeKind::none) {
          const auto outcome = cfg.scheme == SchemeKind::proposed ? detect_proposed(rx, *matrix, sym.plan.data)
                                                                  : detect_conventional(rx, cfg.p, sym.plan.data);
          if (outcome.correct) ++pt.detected_ok;
          rx = deswitch(rx, outcome.detected, tx.nulls());
        }
        const auto count = measure_symbol(sym.payload, rx, tx.constellation());
        pt.bit_errors += count.errors;
        pt.total_bits += count.bits;
      }
    }
    return pts;
  });

  Points total = parts.front();
  for (std::size_t w = 1; w < parts.size(); ++w) {
    for (std::size_t k = 0; k < total.size(); ++k) {
      total[k].symbols += parts[w][k].symbols;
      total[k].detected_ok += parts[w][k].detected_ok;
      total[k].bit_errors += parts[w][k].bit_errors;
      total[k].total_bits += parts[w][k].total_bits;
    }
  }
  return total;
}

inline std::vector<LinkPoint> run_detection(const ExperimentConfig& cfg) {
  if (cfg.scheme == SchemeKind::none) throw ConfigError("detection needs a switching scheme");
  return simulate_link(cfg);
}

inline std::vector<LinkPoint> run_ber(const ExperimentConfig& cfg) { return simulate_link(cfg); }

/// SNR at which a BER curve first falls to `target`, interpolating
/// log10(BER) linearly in SNR. nullopt if it never does.
inline std::optional<double> snr_at_ber(const std::vector<LinkPoint>& pts, double target) {
  for (std::size_t k = 1; k < pts.size(); ++k) {
    const double hi = pts[k - 1].ber();
    const double lo = pts[k].ber();
    if (hi > target && lo <= target) {
      if (lo <= 0.0) return pts[k].snr_db;
      const double f = (std::log10(hi) - std::log10(target)) / (std::log10(hi) - std::log10(lo));
      return pts[k - 1].snr_db + f * (pts[k].snr_db - pts[k - 1].snr_db);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- complexity

inline std::array<complexity::ComplexityReport, 3> run_complexity(const ExperimentConfig& cfg) {
  build_layout(cfg.n, cfg.nd, cfg.ng);
  return complexity::compare_schemes(cfg.n, cfg.nd, cfg.p);
}

// ---------------------------------------------------------------- CSV

inline void write_ccdf_csv(std::ostream& os, const ExperimentConfig& cfg, const CcdfCurve& c) {
  os << config_line(cfg) << '\n' << "papr_db,ccdf\n";
  for (std::size_t j = 0; j < c.thresholds_db.size(); ++j) {
    os << format_number(c.thresholds_db[j], "%.2f") << ',' << format_number(c.exceed_prob[j]) << '\n';
  }
}

inline void write_detection_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<LinkPoint>& pts) {
  os << config_line(cfg) << '\n' << "snr_db,detection_rate\n";
  for (const auto& p : pts) os << format_number(p.snr_db) << ',' << format_number(p.detection_rate()) << '\n';
}

inline void write_ber_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<LinkPoint>& pts) {
  os << config_line(cfg) << '\n' << "snr_db,ber,bit_errors,total_bits\n";
  for (const auto& p : pts) {
    os << format_number(p.snr_db) << ',' << format_number(p.ber()) << ',' << p.bit_errors << ',' << p.total_bits
       << '\n';
  }
}

/// Additions and multiplications are rounded half up; si_bits is the
/// non-blind side-information size (every scheme here sends none).
inline void write_complexity_csv(std::ostream& os, const ExperimentConfig& cfg,
                                 const std::array<complexity::ComplexityReport, 3>& reports) {
  os << config_line(cfg) << '\n' << "scheme,ifft_count,additions,multiplications,si_bits\n";
  for (const auto& r : reports) {
    os << complexity::scheme_name(r.scheme) << ',' << r.ifft_count << ',' << complexity::round_half_up(r.additions)
       << ',' << complexity::round_half_up(r.multiplications) << ',' << r.si_bits_nonblind << '\n';
  }
}

}  // namespace nullswitch
