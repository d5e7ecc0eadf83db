#include "otsclust/core.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace otsclust {

void raise(Errc code, const std::string& what) { throw Error(code, what); }

OrdinalRange::OrdinalRange(int n_states_minus_one,
                           std::optional<std::vector<std::string>> display_labels)
    : n(n_states_minus_one), labels(std::move(display_labels)) {
  if (n < 1) raise(Errc::empty_range, "ordinal range needs n >= 1, got n=" + std::to_string(n));
  if (labels) {
    if (static_cast<int>(labels->size()) != n + 1)
      raise(Errc::config_error, "label list must have exactly n+1 entries");
    std::unordered_set<std::string> seen(labels->begin(), labels->end());
    if (static_cast<int>(seen.size()) != n + 1)
      raise(Errc::config_error, "labels must be distinct");
  }
}

LagSet::LagSet(std::vector<int> lags) : lags_(std::move(lags)) {
  if (lags_.empty()) raise(Errc::config_error, "lag set must be nonempty");
  int prev = 0;
  for (int l : lags_) {
    if (l <= prev) raise(Errc::config_error, "lags must be strictly increasing positive integers");
    prev = l;
  }
}

LagSet LagSet::contiguous(int max_lag) {
  if (max_lag < 1) raise(Errc::config_error, "contiguous lag set needs max_lag >= 1");
  std::vector<int> ls(static_cast<std::size_t>(max_lag));
  for (int l = 1; l <= max_lag; ++l) ls[static_cast<std::size_t>(l - 1)] = l;
  return LagSet(std::move(ls));
}

OrdinalSeries validate_series(std::string id, std::vector<int> states, int n,
                              std::optional<std::vector<std::string>> labels) {
  OrdinalRange range(n, std::move(labels));
  if (states.size() < 2)
    raise(Errc::too_short, "series '" + id + "' has length " + std::to_string(states.size()) +
                               ", need at least 2");
  for (int s : states) {
    if (s < 0 || s > n)
      raise(Errc::out_of_range_state, "series '" + id + "' contains state " + std::to_string(s) +
                                          " outside [0, " + std::to_string(n) + "]");
  }
  return OrdinalSeries{std::move(id), std::move(range), std::move(states)};
}

OrdinalSeries encode_labels(std::string id, const std::vector<std::string>& symbols,
                            const std::vector<std::string>& ordered_labels) {
  std::unordered_map<std::string, int> index;
  index.reserve(ordered_labels.size());
  for (std::size_t i = 0; i < ordered_labels.size(); ++i)
    index.emplace(ordered_labels[i], static_cast<int>(i));

  std::vector<int> states;
  states.reserve(symbols.size());
  for (const auto& sym : symbols) {
    auto it = index.find(sym);
    if (it == index.end())
      raise(Errc::unknown_label, "symbol '" + sym + "' not found in the ordered label list");
    states.push_back(it->second);
  }
  return validate_series(std::move(id), std::move(states),
                         static_cast<int>(ordered_labels.size()) - 1, ordered_labels);
}

std::vector<std::string> decode_labels(const OrdinalSeries& series) {
  if (!series.range.labels)
    raise(Errc::config_error, "series '" + series.id + "' carries no display labels");
  std::vector<std::string> out;
  out.reserve(series.states.size());
  for (int s : series.states) out.push_back((*series.range.labels)[static_cast<std::size_t>(s)]);
  return out;
}

}  // namespace otsclust
