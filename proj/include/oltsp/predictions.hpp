#pragma once

// Prediction error metrics and mould-based synthesis of predictions.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>

#include "oltsp/core.hpp"
#include "oltsp/oracle.hpp"
#include "oltsp/rng.hpp"

namespace oltsp {

struct ErrorReport {
  double eta = 0.0;
  double M = 0.0;
  std::optional<double> delta;
  std::optional<double> Delta;
};

/// Per-label offset directions; some scalar has absolute value 1.
struct Mould {
  std::map<Label, double> scalars;
};

namespace detail {

/// |L| + |R| with the all-at-origin case reported as 0.
inline double error_span(const Instance& instance) { return extremes(instance).span(); }

}  // namespace detail

/// Largest prediction deviation normalized by |L| + |R|.
inline ErrorReport eta_error(const Instance& instance) {
  double worst = 0.0;
  for (const auto& r : instance.requests) worst = std::max(worst, std::abs(r.position - instance.predictions.at(r.label)));
  const double span = detail::error_span(instance);
  ErrorReport e;
  if (span == 0.0) {
    if (worst != 0.0) throw ValidationError("eta undefined: all requests at the origin but predictions are not");
    return e;
  }
  e.eta = worst / span;
  e.M = worst;
  return e;
}

/// Adds the final-label error to eta_error, using the nearest optimal ender.
inline ErrorReport delta_error(const Instance& instance, const OracleResult& oracle) {
  if (!instance.predictions.final_label) throw ModelMismatchError("final_label is required for the delta error");
  ErrorReport e = eta_error(instance);
  const DeltaInputs in = delta_inputs(instance, oracle);
  const double dist = in.distance.at(*instance.predictions.final_label);
  const double span = detail::error_span(instance);
  e.Delta = dist;
  e.delta = span == 0.0 ? 0.0 : dist / span;
  return e;
}

/// p_i = q_i + m_i * eta_target * (|L| + |R|).
inline PredictionSet apply_mould(const Instance& instance, const Mould& mould, double eta_target) {
  if (!(eta_target >= 0.0)) throw ValidationError("eta_target must be >= 0");
  const double M = eta_target * detail::error_span(instance);
  PredictionSet p;
  p.final_label = instance.predictions.final_label;
  for (const auto& r : instance.requests) {
    auto it = mould.scalars.find(r.label);
    if (it == mould.scalars.end()) throw ValidationError("mould has no scalar for label " + std::to_string(r.label));
    p.positions[r.label] = r.position + it->second * M;
  }
  return p;
}

/// Mould over the labels of a normalized instance: uniform scalars in [-1, 1],
/// the origin label pinned to 0 and one other label pinned to +-1.
inline Mould gen_mould(const Instance& instance, Label origin_label, std::uint64_t seed) {
  if (instance.size() < 2) throw ValidationError("mould needs at least one label besides the origin");
  Rng rng(seed);
  Mould m;
  std::vector<Label> free;
  for (const auto& r : instance.requests) {
    m.scalars[r.label] = rng.uniform(-1.0, 1.0);
    if (r.label != origin_label) free.push_back(r.label);
  }
  m.scalars[origin_label] = 0.0;
  const Label pinned = free[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(free.size()) - 1))];
  m.scalars[pinned] = rng.coin() ? 1.0 : -1.0;
  return m;
}

/// Mould over labels 0..n-1 with no origin constraint.
inline Mould gen_mould(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ValidationError("mould size must be >= 1");
  Rng rng(seed);
  Mould m;
  for (std::size_t i = 0; i < n; ++i) m.scalars[static_cast<Label>(i)] = rng.uniform(-1.0, 1.0);
  const auto pinned = static_cast<Label>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
  m.scalars[pinned] = rng.coin() ? 1.0 : -1.0;
  return m;
}

/// The implication |L_P| >= |R_P| => |L| >= |R| - 2M, and its mirror.
inline bool extremes_consistent(const Instance& instance, double tol = kEps) {
  const ErrorReport e = eta_error(instance);
  const Extremes q = extremes(instance);
  const double lp = std::abs(instance.predictions.min());
  const double rp = std::abs(instance.predictions.max());
  const double l = std::abs(q.left);
  const double r = std::abs(q.right);
  if (lp >= rp && l < r - 2.0 * e.M - tol) return false;
  if (rp >= lp && r < l - 2.0 * e.M - tol) return false;
  return true;
}

}  // namespace oltsp
