#pragma once

// Online algorithms as update functions: the agent calls update() at t = 0
// and at every release, then follows the returned plan at unit speed.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "oltsp/core.hpp"

namespace oltsp {

struct AlgoState {
  double now = 0.0;
  double pos = 0.0;
  /// O: released and not yet served, label -> position.
  std::map<Label, double> outstanding;
  /// P': labels whose requests are not yet released.
  std::set<Label> unreleased;
  PredictionSet predictions;
  std::size_t n = 0;
  std::set<Label> served;
  Variant variant = Variant::Closed;

  std::size_t released_count() const { return n - unreleased.size(); }
};

struct MovePlan {
  std::vector<double> targets;
  /// Hold at the last target until the next release.
  bool terminal_wait = false;

  friend bool operator==(const MovePlan&, const MovePlan&) = default;
};

enum class Algorithm { FarFirst, NearFirst, Pivot, WaitCopy };

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::FarFirst: return "farfirst";
    case Algorithm::NearFirst: return "nearfirst";
    case Algorithm::Pivot: return "pivot";
    case Algorithm::WaitCopy: return "waitcopy";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view s) {
  if (s == "farfirst") return Algorithm::FarFirst;
  if (s == "nearfirst") return Algorithm::NearFirst;
  if (s == "pivot") return Algorithm::Pivot;
  if (s == "waitcopy") return Algorithm::WaitCopy;
  throw ValidationError("unknown algorithm '" + std::string(s) + "' (expected farfirst|nearfirst|pivot|waitcopy)");
}

/// True when the prediction furthest from the origin is on the right (ties go right).
inline bool far_side_right(const PredictionSet& p) {
  if (p.size() == 0) return true;
  return std::abs(p.max()) >= std::abs(p.min());
}

/// Far side by descending amplitude, then the near side by descending
/// amplitude, origin predictions last; equal predictions by label.
inline std::vector<Label> farfirst_ordering(const PredictionSet& p) {
  const bool right = far_side_right(p);
  auto group = [right](double x) {
    if (x == 0.0) return 2;
    return (x > 0.0) == right ? 0 : 1;
  };
  std::vector<std::pair<Label, double>> items(p.positions.begin(), p.positions.end());
  std::stable_sort(items.begin(), items.end(), [&](const auto& a, const auto& b) {
    const int ga = group(a.second), gb = group(b.second);
    if (ga != gb) return ga < gb;
    if (std::abs(a.second) != std::abs(b.second)) return std::abs(a.second) > std::abs(b.second);
    return a.first < b.first;
  });
  std::vector<Label> out;
  for (const auto& [label, x] : items) out.push_back(label);
  return out;
}

namespace detail {

inline double ext(bool right, const std::map<Label, double>& O, double extra) {
  double v = extra;
  for (const auto& [label, x] : O) v = right ? std::max(v, x) : std::min(v, x);
  return v;
}

inline std::vector<double> unreleased_positions(const AlgoState& s) {
  std::vector<double> out;
  for (Label l : s.unreleased) out.push_back(s.predictions.at(l));
  return out;
}

/// The shared all-released branch of NEARFIRST and PIVOT.
inline MovePlan sweep_outstanding(const AlgoState& s) {
  MovePlan plan;
  if (s.outstanding.empty()) return plan;
  const double lo = ext(false, s.outstanding, s.outstanding.begin()->second);
  const double hi = ext(true, s.outstanding, s.outstanding.begin()->second);
  if (s.pos < (hi + lo) / 2.0) {
    plan.targets = {lo, hi};
  } else {
    plan.targets = {hi, lo};
  }
  return plan;
}

/// Chase the extreme unreleased prediction on one side, clearing O on the way.
inline MovePlan chase(const AlgoState& s, bool left) {
  const std::vector<double> pp = unreleased_positions(s);
  const double target = left ? *std::min_element(pp.begin(), pp.end()) : *std::max_element(pp.begin(), pp.end());
  MovePlan plan;
  plan.targets = {ext(!left, s.outstanding, target), target};
  plan.terminal_wait = true;
  return plan;
}

}  // namespace detail

inline MovePlan farfirst_update(const AlgoState& s) {
  if (s.outstanding.empty() && s.unreleased.empty()) return {};
  const bool far_right = far_side_right(s.predictions);
  double p = 0.0;
  bool genuine = false;
  for (Label l : farfirst_ordering(s.predictions)) {
    if (s.unreleased.count(l)) {
      p = s.predictions.at(l);
      genuine = true;
      break;
    }
  }
  bool pos_side = s.pos > 0.0;
  bool p_side = p > 0.0;
  if (is_zero(s.pos)) pos_side = far_right;
  if (p == 0.0) p_side = !pos_side;

  MovePlan plan;
  plan.targets = {detail::ext(pos_side, s.outstanding, s.pos), detail::ext(p_side, s.outstanding, p), p};
  plan.terminal_wait = genuine;
  return plan;
}

inline MovePlan nearfirst_update(const AlgoState& s) {
  if (s.unreleased.empty()) return detail::sweep_outstanding(s);
  const bool left = std::abs(s.predictions.min()) < std::abs(s.predictions.max());
  return detail::chase(s, left);
}

inline MovePlan pivot_update(const AlgoState& s) {
  if (!s.predictions.final_label) throw ModelMismatchError("PIVOT needs a predicted final label");
  if (s.unreleased.empty()) return detail::sweep_outstanding(s);
  const double pf = s.predictions.at(*s.predictions.final_label);
  const bool left = pf > (s.predictions.max() + s.predictions.min()) / 2.0;
  return detail::chase(s, left);
}

/// Waits at the origin until all n requests are out, then serves them
/// optimally from where it stands.
inline MovePlan waitcopy_update(const AlgoState& s) {
  MovePlan plan;
  if (!s.unreleased.empty() || s.outstanding.empty()) {
    plan.terminal_wait = !s.unreleased.empty();
    return plan;
  }
  const double lo = detail::ext(false, s.outstanding, s.outstanding.begin()->second);
  const double hi = detail::ext(true, s.outstanding, s.outstanding.begin()->second);
  double via_lo = std::abs(s.pos - lo) + (hi - lo);
  double via_hi = std::abs(s.pos - hi) + (hi - lo);
  if (s.variant == Variant::Closed) {
    via_lo += std::abs(hi);
    via_hi += std::abs(lo);
  }
  plan.targets = via_lo <= via_hi ? std::vector<double>{lo, hi} : std::vector<double>{hi, lo};
  return plan;
}

inline MovePlan update(Algorithm a, const AlgoState& s) {
  switch (a) {
    case Algorithm::FarFirst: return farfirst_update(s);
    case Algorithm::NearFirst: return nearfirst_update(s);
    case Algorithm::Pivot: return pivot_update(s);
    case Algorithm::WaitCopy: return waitcopy_update(s);
  }
  throw ValidationError("unknown algorithm");
}

}  // namespace oltsp
