#pragma once

// Core domain types for ordinal time series: the state range, validated
// series of count indices, and lag sets. Everything downstream works on
// count indices 0..n; display labels are presentation-only.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace otsclust {

enum class Errc {
  out_of_range_state,
  too_short,
  empty_range,
  unknown_label,
  lag_too_large,
  zero_dispersion,
  zero_variance,
  singular_recursion,
  range_mismatch,
  lag_mismatch,
  length_mismatch,
  too_few_series,
  degenerate_distances,
  size_mismatch,
  grid_too_small,
  unknown_scenario,
  invalid_params,
  coincident_medoids,
  all_cells_degenerate,
  mapping_ambiguous,
  config_error,
  io_error,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& what);

/// Ordered categorical range with n+1 states s_0 < ... < s_n.
struct OrdinalRange {
  int n = 1;
  std::optional<std::vector<std::string>> labels;

  OrdinalRange() = default;
  explicit OrdinalRange(int n_states_minus_one,
                        std::optional<std::vector<std::string>> display_labels = std::nullopt);

  int state_count() const { return n + 1; }
};

/// A finite realization of an ordinal process, stored as count indices.
struct OrdinalSeries {
  std::string id;
  OrdinalRange range;
  std::vector<int> states;

  std::size_t length() const { return states.size(); }
  int n() const { return range.n; }
};

/// Strictly increasing positive lags l_1 < ... < l_L.
class LagSet {
public:
  LagSet() = default;
  explicit LagSet(std::vector<int> lags);
  static LagSet contiguous(int max_lag);  // {1, ..., max_lag}

  const std::vector<int>& lags() const { return lags_; }
  std::size_t size() const { return lags_.size(); }
  int max_lag() const { return lags_.empty() ? 0 : lags_.back(); }
  bool operator==(const LagSet& other) const { return lags_ == other.lags_; }

private:
  std::vector<int> lags_;
};

/// Validates raw input into an OrdinalSeries. Never clamps.
OrdinalSeries validate_series(std::string id, std::vector<int> states, int n,
                              std::optional<std::vector<std::string>> labels = std::nullopt);

/// Positional encoding of display symbols against an ordered label list.
OrdinalSeries encode_labels(std::string id, const std::vector<std::string>& symbols,
                            const std::vector<std::string>& ordered_labels);

/// Inverse of encode_labels for a validated series with labels.
std::vector<std::string> decode_labels(const OrdinalSeries& series);

}  // namespace otsclust
