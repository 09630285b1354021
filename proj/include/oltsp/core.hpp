#pragma once

// Domain types for online TSP on the real line: requests, predictions,
// instances, unit-speed trajectories and makespan evaluation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oltsp {

/// Absolute tolerance for every position/time equality test.
inline constexpr double kEps = 1e-9;

inline bool approx_equal(double a, double b, double tol = kEps) { return std::abs(a - b) <= tol; }
inline bool is_zero(double x, double tol = kEps) { return std::abs(x) <= tol; }

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
  using Error::Error;
};

struct IncompleteTrajectoryError : Error {
  using Error::Error;
};

struct SizeError : Error {
  using Error::Error;
};

struct ModelMismatchError : Error {
  using Error::Error;
};

struct UnsupportedVariantError : Error {
  using Error::Error;
};

struct ProtocolError : Error {
  using Error::Error;
};

struct DivergenceError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Requests, predictions, instances

using Label = int;

struct Request {
  Label label = 0;
  double position = 0.0;
  double release_time = 0.0;

  friend bool operator==(const Request&, const Request&) = default;
};

/// One predicted position per request label, plus the optional predicted
/// final label of the LF model.
struct PredictionSet {
  std::map<Label, double> positions;
  std::optional<Label> final_label;

  std::size_t size() const { return positions.size(); }
  bool contains(Label label) const { return positions.count(label) != 0; }

  double at(Label label) const {
    auto it = positions.find(label);
    if (it == positions.end()) {
      throw ValidationError("no prediction for label " + std::to_string(label));
    }
    return it->second;
  }

  double min() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& [label, p] : positions) m = std::min(m, p);
    return m;
  }

  double max() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& [label, p] : positions) m = std::max(m, p);
    return m;
  }

  friend bool operator==(const PredictionSet&, const PredictionSet&) = default;
};

enum class Variant { Open, Closed };

inline std::string_view to_string(Variant v) { return v == Variant::Open ? "open" : "closed"; }

inline Variant parse_variant(std::string_view s) {
  if (s == "open") return Variant::Open;
  if (s == "closed") return Variant::Closed;
  throw ValidationError("unknown variant '" + std::string(s) + "' (expected open|closed)");
}

struct Instance {
  Variant variant = Variant::Closed;
  std::vector<Request> requests;
  PredictionSet predictions;

  std::size_t size() const { return requests.size(); }

  const Request& request(Label label) const {
    for (const auto& r : requests) {
      if (r.label == label) return r;
    }
    throw ValidationError("no request with label " + std::to_string(label));
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Fills in exact predictions for every request (the zero-error predictor).
inline PredictionSet perfect_predictions(const std::vector<Request>& requests) {
  PredictionSet p;
  for (const auto& r : requests) p.positions[r.label] = r.position;
  return p;
}

/// Checks label uniqueness, release times and prediction alignment.
inline void validate(const Instance& instance) {
  std::set<Label> labels;
  for (const auto& r : instance.requests) {
    if (!labels.insert(r.label).second) {
      throw ValidationError("duplicate request label " + std::to_string(r.label));
    }
    if (!(r.release_time >= 0.0) || !std::isfinite(r.release_time)) {
      throw ValidationError("release time of label " + std::to_string(r.label) + " must be finite and >= 0");
    }
    if (!std::isfinite(r.position)) {
      throw ValidationError("position of label " + std::to_string(r.label) + " is not finite");
    }
  }
  if (instance.predictions.size() != labels.size()) {
    throw ValidationError("expected exactly one prediction per request label");
  }
  for (const auto& [label, p] : instance.predictions.positions) {
    if (!labels.count(label)) {
      throw ValidationError("prediction for unknown label " + std::to_string(label));
    }
    if (!std::isfinite(p)) throw ValidationError("prediction for label " + std::to_string(label) + " is not finite");
  }
  if (instance.predictions.final_label && !labels.count(*instance.predictions.final_label)) {
    throw ValidationError("final_label names no request");
  }
}

/// Guarantees a request at the origin released at time 0 with prediction 0.
/// The added request takes label 0, or one past the largest label if 0 is taken.
inline Instance normalize_instance(Instance raw) {
  validate(raw);
  for (const auto& r : raw.requests) {
    if (r.position == 0.0 && r.release_time == 0.0 && raw.predictions.at(r.label) == 0.0) return raw;
  }
  Label label = 0;
  bool taken = std::any_of(raw.requests.begin(), raw.requests.end(), [](const Request& r) { return r.label == 0; });
  if (taken) {
    for (const auto& r : raw.requests) label = std::max(label, r.label + 1);
  }
  raw.requests.insert(raw.requests.begin(), Request{label, 0.0, 0.0});
  raw.predictions.positions[label] = 0.0;
  return raw;
}

// ---------------------------------------------------------------------------
// Extremes

struct Extremes {
  double left = 0.0;   // L = min position, <= 0 after normalization
  double right = 0.0;  // R = max position, >= 0 after normalization
  double far = 0.0;
  double near = 0.0;

  /// |L| + |R|, the normalizer of every error metric.
  double span() const { return std::abs(left) + std::abs(right); }
};

/// Far/Near classification of two extremes; |L| = |R| resolves Far = R.
inline Extremes make_extremes(double left, double right) {
  Extremes e{left, right, right, left};
  if (std::abs(left) > std::abs(right)) {
    e.far = left;
    e.near = right;
  }
  return e;
}

inline Extremes extremes(const Instance& instance) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& r : instance.requests) {
    lo = std::min(lo, r.position);
    hi = std::max(hi, r.position);
  }
  if (instance.requests.empty()) lo = hi = 0.0;
  return make_extremes(lo, hi);
}

// ---------------------------------------------------------------------------
// Trajectories

/// Constant-velocity piece of a trajectory on [start_time, end_time].
struct Segment {
  double start_time = 0.0;
  double start_pos = 0.0;
  double velocity = 0.0;
  double end_time = 0.0;

  double duration() const { return end_time - start_time; }
  double position_at(double t) const { return start_pos + velocity * (t - start_time); }
  double end_pos() const { return position_at(end_time); }

  /// Earliest t in [max(start_time, not_before), end_time] with position(t) = x.
  std::optional<double> first_visit(double x, double not_before, double tol = kEps) const {
    double from = std::max(start_time, not_before);
    if (from > end_time + tol) return std::nullopt;
    from = std::min(from, end_time);
    double p = position_at(from);
    if (std::abs(p - x) <= tol) return from;
    if (velocity == 0.0) return std::nullopt;
    double t = from + (x - p) / velocity;
    if (t < from || t > end_time + tol) return std::nullopt;
    return std::min(t, end_time);
  }

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Continuous piecewise-linear path with |velocity| <= 1, starting at (0, 0).
class Trajectory {
 public:
  Trajectory() = default;

  const std::vector<Segment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }

  double end_time() const { return segments_.empty() ? 0.0 : segments_.back().end_time; }
  double end_pos() const { return segments_.empty() ? 0.0 : segments_.back().end_pos(); }

  /// Appends a segment; its start must match the current end state.
  void append(const Segment& s) {
    if (!(s.end_time >= s.start_time)) throw ValidationError("segment ends before it starts");
    if (std::abs(s.velocity) > 1.0 + 1e-12) throw ValidationError("segment exceeds unit speed");
    if (!approx_equal(s.start_time, end_time()) || !approx_equal(s.start_pos, end_pos())) {
      throw ValidationError("segment is not continuous with the trajectory");
    }
    if (s.duration() == 0.0) return;
    if (!segments_.empty()) {
      Segment& last = segments_.back();
      if (last.velocity == s.velocity) {
        last.end_time = s.end_time;
        return;
      }
    }
    segments_.push_back(s);
  }

  /// Straight unit-speed move from the current end to x.
  void move_to(double x) {
    double from = end_pos();
    double d = std::abs(x - from);
    if (d == 0.0) return;
    append({end_time(), from, x > from ? 1.0 : -1.0, end_time() + d});
  }

  void wait_until(double t) {
    if (t > end_time()) append({end_time(), end_pos(), 0.0, t});
  }

  double position_at(double t) const {
    if (segments_.empty() || t <= 0.0) return 0.0;
    if (t >= end_time()) return end_pos();
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double v, const Segment& s) { return v < s.end_time; });
    if (it == segments_.end()) return end_pos();
    return it->position_at(std::max(t, it->start_time));
  }

  /// Earliest time >= not_before at which the path is at x.
  std::optional<double> first_visit(double x, double not_before) const {
    if (segments_.empty()) {
      if (is_zero(x) && not_before <= 0.0) return 0.0;
      return std::nullopt;
    }
    for (const auto& s : segments_) {
      if (s.end_time + kEps < not_before) continue;
      if (auto t = s.first_visit(x, not_before)) return t;
    }
    return std::nullopt;
  }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  std::vector<Segment> segments_;
};

struct SimResult {
  Trajectory trajectory;
  std::map<Label, double> serve_time;
  double t_serve = 0.0;
  double makespan = 0.0;
  /// Requests as actually released (the transcript for adaptive sources).
  std::vector<Request> releases;
};

/// Serve times and makespan of a fixed trajectory on an instance.
/// A request is served at the earliest t >= rel with pos(t) = position.
inline SimResult evaluate(const Trajectory& trajectory, const Instance& instance) {
  SimResult out;
  out.trajectory = trajectory;
  out.releases = instance.requests;
  for (const auto& r : instance.requests) {
    std::optional<double> t;
    if (trajectory.empty()) {
      if (is_zero(r.position) && r.release_time <= 0.0) t = 0.0;
    } else {
      t = trajectory.first_visit(r.position, r.release_time);
    }
    if (!t) throw IncompleteTrajectoryError("incomplete trajectory: label " + std::to_string(r.label) + " is never served");
    out.serve_time[r.label] = *t;
    out.t_serve = std::max(out.t_serve, *t);
  }
  out.makespan = out.t_serve;
  if (instance.variant == Variant::Closed) out.makespan += std::abs(trajectory.position_at(out.t_serve));
  return out;
}

}  // namespace oltsp
