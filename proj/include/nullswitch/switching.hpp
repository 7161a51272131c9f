#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <limits>
#include <optional>
#include <ranges>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nullswitch/error.hpp"
#include "nullswitch/layout.hpp"
#include "nullswitch/signal.hpp"

namespace nullswitch {

/// One data<->null swap candidate.
///
/// nulls[m] (pre-selected null position) trades amplitudes with data[m]
/// (data position vacated). Both lists ascend, so pairing rank m with rank m
/// is the switching constraint: a smaller vacated data index always lands on
/// a smaller null index.
struct SwitchPlan {
  std::vector<int> nulls;
  std::vector<int> data;

  friend bool operator==(const SwitchPlan&, const SwitchPlan&) = default;
};

namespace detail {

inline bool strictly_ascending(std::span<const int> v) {
  return std::adjacent_find(v.begin(), v.end(), [](int a, int b) { return a >= b; }) == v.end();
}

// Rank-wise amplitude exchange shared by apply_switch and deswitch.
inline void exchange(std::span<Complex> amps, std::span<const int> a, std::span<const int> b) {
  for (std::size_t m = 0; m < a.size(); ++m) {
    std::swap(amps[static_cast<std::size_t>(a[m] - 1)], amps[static_cast<std::size_t>(b[m] - 1)]);
  }
}

}  // namespace detail

inline void validate_plan(const SwitchPlan& plan, const SubcarrierLayout& layout) {
  if (plan.nulls.size() != plan.data.size() || plan.nulls.empty()) {
    throw InputError("switch plan: null and data lists must be nonempty and equally long");
  }
  if (!detail::strictly_ascending(plan.nulls) || !detail::strictly_ascending(plan.data)) {
    throw InputError("switch plan: index lists must be strictly ascending");
  }
  for (int g : plan.nulls) {
    if (!layout.is_null(g)) throw InputError("switch plan: " + std::to_string(g) + " is not a null subcarrier");
  }
  for (int d : plan.data) {
    if (!layout.is_data(d)) throw InputError("switch plan: " + std::to_string(d) + " is not a data subcarrier");
  }
}

/// Checks P against the layout: even, at most Ng-2 (P/2 nulls taken from
/// each side, the center null never used) and dividing Nd.
inline void validate_switch_count(const SubcarrierLayout& layout, int p) {
  if (p < 2 || p % 2 != 0) throw ConfigError("P must be even and >= 2 (got " + std::to_string(p) + ")");
  if (p > layout.null_count() - 2) {
    throw ConfigError("P=" + std::to_string(p) + " exceeds Ng-2=" + std::to_string(layout.null_count() - 2));
  }
  if (layout.data_count() % p != 0) {
    throw ConfigError("Nd=" + std::to_string(layout.data_count()) + " is not divisible by P=" + std::to_string(p));
  }
}

/// The P innermost side nulls, P/2 adjacent to each edge of the data band.
inline std::vector<int> innermost_null_set(const SubcarrierLayout& layout, int p) {
  validate_switch_count(layout, p);
  const int half_g = layout.null_count() / 2;
  const int n = layout.total();
  std::vector<int> gs;
  gs.reserve(static_cast<std::size_t>(p));
  for (int i = half_g - p / 2 + 1; i <= half_g; ++i) gs.push_back(i);
  for (int i = n - half_g + 2; i <= n - half_g + 1 + p / 2; ++i) gs.push_back(i);
  return gs;
}

/// R x P matrix of equidistant switched-null position sets, R = Nd/P.
///
/// Row i (1-based) starts at u_i = Ng/2 + i and steps by R, with one extra
/// step of 1 once the row crosses the center null (columns n >= P/2).
/// Row 1 is what the first switching phase produces; every later phase
/// moves each switched null one data slot to the right, giving rows 2..R.
class CandidateMatrix {
 public:
  CandidateMatrix(const SubcarrierLayout& layout, int p) {
    validate_switch_count(layout, p);
    rows_ = layout.data_count() / p;
    cols_ = p;
    const int half_g = layout.null_count() / 2;
    offsets_.reserve(static_cast<std::size_t>(rows_));
    entries_.reserve(static_cast<std::size_t>(rows_ * cols_));
    for (int i = 1; i <= rows_; ++i) {
      const int u = half_g + i;
      offsets_.push_back(u);
      for (int n = 0; n < cols_; ++n) entries_.push_back(u + n * rows_ + (n >= p / 2 ? 1 : 0));
    }
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  /// Row start offsets u_1..u_R.
  const std::vector<int>& offsets() const noexcept { return offsets_; }

  /// Row i, 1-based.
  std::span<const int> row(int i) const {
    if (i < 1 || i > rows_) throw InputError("candidate matrix: row " + std::to_string(i) + " out of range");
    return std::span<const int>(entries_).subspan(static_cast<std::size_t>((i - 1) * cols_),
                                                  static_cast<std::size_t>(cols_));
  }
  int at(int i, int n) const { return row(i)[static_cast<std::size_t>(n)]; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> offsets_;
  std::vector<int> entries_;
};

inline CandidateMatrix candidate_matrix(const SubcarrierLayout& layout, int p) { return CandidateMatrix(layout, p); }

/// One SwitchPlan per candidate-matrix row, in row order.
inline std::vector<SwitchPlan> proposed_plans(const SubcarrierLayout& layout, int p) {
  const auto gs = innermost_null_set(layout, p);
  const CandidateMatrix s(layout, p);
  std::vector<SwitchPlan> plans;
  plans.reserve(static_cast<std::size_t>(s.rows()));
  for (int i = 1; i <= s.rows(); ++i) {
    auto r = s.row(i);
    plans.push_back(SwitchPlan{gs, std::vector<int>(r.begin(), r.end())});
  }
  return plans;
}

/// C(n, k), or nullopt when it does not fit in 64 bits.
inline std::optional<std::uint64_t> binomial(int n, int k) {
  if (k < 0 || k > n) return std::uint64_t{0};
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(acc);
}

/// Lazy lexicographic enumeration of the ascending P-subsets of the data band.
class DataSubsets : public std::ranges::view_interface<DataSubsets> {
 public:
  class iterator {
   public:
    using value_type = std::vector<int>;
    using difference_type = std::ptrdiff_t;
    using reference = const std::vector<int>&;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(const std::vector<int>* pool, int k) : pool_(pool), pos_(static_cast<std::size_t>(k)) {
      for (int i = 0; i < k; ++i) pos_[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
      fill();
    }

    reference operator*() const { return current_; }
    const std::vector<int>* operator->() const { return &current_; }

    iterator& operator++() {
      const std::size_t k = pos_.size();
      const std::size_t n = pool_->size();
      std::size_t i = k;
      while (i > 0 && pos_[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) {
        pool_ = nullptr;
        return *this;
      }
      ++pos_[i - 1];
      for (std::size_t j = i; j < k; ++j) pos_[j] = pos_[j - 1] + 1;
      fill();
      return *this;
    }
    void operator++(int) { ++*this; }

    friend bool operator==(const iterator& it, std::default_sentinel_t) { return it.pool_ == nullptr; }

   private:
    void fill() {
      current_.resize(pos_.size());
      for (std::size_t i = 0; i < pos_.size(); ++i) current_[i] = (*pool_)[pos_[i]];
    }

    const std::vector<int>* pool_ = nullptr;
    std::vector<std::size_t> pos_;
    std::vector<int> current_;
  };

  DataSubsets() = default;
  DataSubsets(const SubcarrierLayout& layout, int p) : layout_(layout), p_(p) {
    if (p < 1 || p > layout.data_count()) {
      throw ConfigError("conventional enumeration needs 1 <= P <= Nd (got P=" + std::to_string(p) + ")");
    }
  }

  iterator begin() const { return iterator(&layout_.data_indices(), p_); }
  std::default_sentinel_t end() const { return {}; }

  std::uint64_t count() const { return binomial(layout_.data_count(), p_).value_or(0); }

 private:
  SubcarrierLayout layout_;
  int p_ = 1;
};

inline DataSubsets enumerate_conventional(const SubcarrierLayout& layout, int p) { return DataSubsets(layout, p); }

/// Every conventional candidate as a SwitchPlan against the innermost nulls.
inline auto conventional_plans(const SubcarrierLayout& layout, int p) {
  auto gs = innermost_null_set(layout, p);
  return DataSubsets(layout, p) |
         std::views::transform([gs = std::move(gs)](const std::vector<int>& ds) { return SwitchPlan{gs, ds}; });
}

/// Exchanges data[m] with nulls[m] for every rank m. Self-inverse.
inline FrequencyGrid apply_switch(const FrequencyGrid& grid, const SwitchPlan& plan) {
  validate_plan(plan, grid.layout());
  FrequencyGrid out = grid;
  detail::exchange(out.amplitudes(), plan.data, plan.nulls);
  return out;
}

struct Selection {
  FrequencyGrid grid;
  SwitchPlan plan;
  double papr_db = 0.0;
  std::size_t index = 0;  // position of `plan` in the candidate stream
};

/// Minimum-PAPR candidate at oversampling `oversample`; ties keep the
/// earliest candidate in stream order.
template <std::ranges::input_range Plans>
  requires std::convertible_to<std::ranges::range_reference_t<Plans>, const SwitchPlan&>
Selection select_min_papr(const FrequencyGrid& grid, Plans&& plans, int oversample) {
  FrequencyGrid work = grid;
  std::vector<Complex> samples(static_cast<std::size_t>(grid.size()) * static_cast<std::size_t>(std::max(oversample, 1)));

  std::optional<SwitchPlan> best;
  double best_papr = std::numeric_limits<double>::infinity();
  std::size_t best_index = 0;
  std::size_t index = 0;
  for (auto&& candidate : plans) {
    const SwitchPlan& plan = candidate;
    validate_plan(plan, grid.layout());
    detail::exchange(work.amplitudes(), plan.data, plan.nulls);
    to_time_into(work, oversample, samples);
    const double p = papr_db(samples);
    detail::exchange(work.amplitudes(), plan.data, plan.nulls);
    if (p < best_papr) {
      best_papr = p;
      best = plan;
      best_index = index;
    }
    ++index;
  }
  if (!best) throw InputError("select_min_papr: no candidate plans");
  Selection sel{apply_switch(grid, *best), std::move(*best), best_papr, best_index};
  return sel;
}

}  // namespace nullswitch
