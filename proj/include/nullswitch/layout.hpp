#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nullswitch/error.hpp"

namespace nullswitch {

/// Positions of data and null subcarriers in an N-subcarrier OFDM symbol.
///
/// All indices are 1-based, 1..N. Ng/2 nulls sit left of the data band,
/// Ng/2 - 1 sit right of it and one sits in the middle (the DC slot):
///
///   1 .. Ng/2 | data (Nd/2) | center | data (Nd/2) | N-Ng/2+2 .. N
///
/// The object is an immutable shared handle, so copies are cheap and every
/// FrequencyGrid can carry its layout by value.
class SubcarrierLayout {
 public:
  SubcarrierLayout() : d_(std::make_shared<const Data>()) {}

  int total() const noexcept { return d_->n; }
  int data_count() const noexcept { return d_->nd; }
  int null_count() const noexcept { return d_->ng; }

  const std::vector<int>& left_nulls() const noexcept { return d_->left; }
  const std::vector<int>& right_nulls() const noexcept { return d_->right; }
  int center_null() const noexcept { return d_->center; }
  const std::vector<int>& data_indices() const noexcept { return d_->data; }
  /// Every null index, ascending.
  const std::vector<int>& null_indices() const noexcept { return d_->nulls; }

  bool is_data(int index) const noexcept {
    return index >= 1 && index <= d_->n && d_->is_data[static_cast<std::size_t>(index)];
  }
  bool is_null(int index) const noexcept {
    return index >= 1 && index <= d_->n && !d_->is_data[static_cast<std::size_t>(index)];
  }

  friend bool operator==(const SubcarrierLayout& a, const SubcarrierLayout& b) {
    return a.d_->n == b.d_->n && a.d_->nd == b.d_->nd && a.d_->ng == b.d_->ng;
  }

 private:
  struct Data {
    int n = 0;
    int nd = 0;
    int ng = 0;
    int center = 0;
    std::vector<int> left;
    std::vector<int> right;
    std::vector<int> data;
    std::vector<int> nulls;
    std::vector<bool> is_data;  // indexed 0..N, slot 0 unused
  };

  explicit SubcarrierLayout(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  friend SubcarrierLayout build_layout(int n, int nd, int ng);

  std::shared_ptr<const Data> d_;
};

inline SubcarrierLayout build_layout(int n, int nd, int ng) {
  if (nd + ng != n) {
    throw ConfigError("layout: N must equal Nd + Ng (got N=" + std::to_string(n) +
                      ", Nd=" + std::to_string(nd) + ", Ng=" + std::to_string(ng) + ")");
  }
  if (ng % 2 != 0 || ng < 4) {
    throw ConfigError("layout: Ng must be even and >= 4 (got " + std::to_string(ng) + ")");
  }
  if (nd % 2 != 0 || nd < 2) {
    throw ConfigError("layout: Nd must be even and >= 2 (got " + std::to_string(nd) + ")");
  }

  auto d = std::make_shared<SubcarrierLayout::Data>();
  d->n = n;
  d->nd = nd;
  d->ng = ng;
  const int half_g = ng / 2;
  const int half_d = nd / 2;
  d->center = half_g + half_d + 1;
  for (int i = 1; i <= half_g; ++i) d->left.push_back(i);
  for (int i = n - half_g + 2; i <= n; ++i) d->right.push_back(i);
  for (int i = half_g + 1; i <= half_g + half_d; ++i) d->data.push_back(i);
  for (int i = half_g + half_d + 2; i <= half_g + nd + 1; ++i) d->data.push_back(i);

  d->nulls = d->left;
  d->nulls.push_back(d->center);
  d->nulls.insert(d->nulls.end(), d->right.begin(), d->right.end());

  d->is_data.assign(static_cast<std::size_t>(n) + 1, false);
  for (int i : d->data) d->is_data[static_cast<std::size_t>(i)] = true;
  return SubcarrierLayout(std::move(d));
}

}  // namespace nullswitch
