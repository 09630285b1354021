#pragma once

// Event-driven co-simulation of an online algorithm and a release source.
//
// The agent moves along straight unit-speed segments toward its plan
// targets. Before committing to a segment the engine shows it to the event
// source, which answers with the earliest release instant on that segment
// (if any). The segment is cut there, releases are applied, serves at that
// instant are counted, and the algorithm re-plans.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "oltsp/algorithms.hpp"
#include "oltsp/core.hpp"
#include "oltsp/oracle.hpp"

namespace oltsp {

struct ReleaseEvent {
  double time = 0.0;
  std::vector<Request> released;
};

/// Decides releases online. query() sees the segment the agent is about to
/// follow and returns the earliest release instant in [start_time,
/// end_time] together with everything released at that instant.
class EventSource {
 public:
  virtual ~EventSource() = default;
  /// Number of requests that will eventually be released.
  virtual std::size_t total() const = 0;
  virtual std::optional<ReleaseEvent> query(const Segment& segment) = 0;
};

class FixedSource : public EventSource {
 public:
  explicit FixedSource(const Instance& instance) : requests_(instance.requests) {
    std::stable_sort(requests_.begin(), requests_.end(),
                     [](const Request& a, const Request& b) { return a.release_time < b.release_time; });
  }

  std::size_t total() const override { return requests_.size(); }

  std::optional<ReleaseEvent> query(const Segment& segment) override {
    if (next_ == requests_.size() || requests_[next_].release_time > segment.end_time) return std::nullopt;
    ReleaseEvent ev;
    ev.time = std::max(requests_[next_].release_time, segment.start_time);
    const double t = requests_[next_].release_time;
    while (next_ < requests_.size() && requests_[next_].release_time == t) ev.released.push_back(requests_[next_++]);
    return ev;
  }

 private:
  std::vector<Request> requests_;
  std::size_t next_ = 0;
};

inline std::unique_ptr<EventSource> fixed_source(const Instance& instance) {
  return std::make_unique<FixedSource>(instance);
}

struct SimOptions {
  double horizon = 1e6;
};

namespace detail {

class Simulation {
 public:
  Simulation(EventSource& source, Algorithm algo, const PredictionSet& predictions, Variant variant, SimOptions opt)
      : source_(source), algo_(algo), opt_(opt) {
    state_.predictions = predictions;
    state_.n = source.total();
    state_.variant = variant;
    for (const auto& [label, x] : predictions.positions) state_.unreleased.insert(label);
  }

  SimResult run() {
    if (auto ev = source_.query({0.0, 0.0, 0.0, 0.0})) {
      if (ev->time != 0.0) throw ProtocolError("event outside the queried segment");
      release(*ev);
    }
    replan();
    while (!done()) step();
    return finish();
  }

 private:
  bool done() const { return result_.serve_time.size() == state_.n && state_.unreleased.empty(); }

  void release(const ReleaseEvent& ev) {
    for (const Request& r : ev.released) {
      if (released_.count(r.label)) throw ProtocolError("label " + std::to_string(r.label) + " released twice");
      if (r.release_time != ev.time) throw ProtocolError("release time does not match the event time");
      if (!state_.unreleased.erase(r.label)) {
        throw ProtocolError("release of label " + std::to_string(r.label) + " without a prediction slot");
      }
      released_.insert(r.label);
      result_.releases.push_back(r);
      state_.outstanding[r.label] = r.position;
    }
    if (result_.releases.size() > state_.n) throw ProtocolError("more releases than announced");
    serve_here(ev.time);
  }

  void serve_here(double t) {
    const double x = state_.pos;
    for (auto it = state_.outstanding.begin(); it != state_.outstanding.end();) {
      if (std::abs(it->second - x) <= kEps) {
        mark_served(it->first, t);
        it = state_.outstanding.erase(it);
      } else {
        ++it;
      }
    }
  }

  void mark_served(Label label, double t) {
    result_.serve_time[label] = t;
    state_.served.insert(label);
  }

  void replan() {
    state_.now = now_;
    plan_ = update(algo_, state_);
    next_target_ = 0;
  }

  void step() {
    if (now_ > opt_.horizon) throw DivergenceError("simulation passed the time horizon");
    while (next_target_ < plan_.targets.size() && std::abs(plan_.targets[next_target_] - state_.pos) <= kEps) {
      ++next_target_;
    }
    Segment seg{now_, state_.pos, 0.0, opt_.horizon};
    const bool moving = next_target_ < plan_.targets.size();
    if (moving) {
      const double target = plan_.targets[next_target_];
      seg.velocity = target > state_.pos ? 1.0 : -1.0;
      seg.end_time = now_ + std::abs(target - state_.pos);
    }

    std::optional<ReleaseEvent> ev = source_.query(seg);
    if (ev && (ev->time < seg.start_time - kEps || ev->time > seg.end_time + kEps)) {
      throw ProtocolError("event outside the queried segment");
    }
    if (ev) ev->time = std::clamp(ev->time, seg.start_time, seg.end_time);
    const double stop = ev ? ev->time : seg.end_time;

    // Serves strictly along the way; the last one may end an open run early.
    std::vector<std::pair<double, Label>> hits;
    for (const auto& [label, x] : state_.outstanding) {
      if (auto t = seg.first_visit(x, seg.start_time); t && *t <= stop) hits.emplace_back(*t, label);
    }
    std::sort(hits.begin(), hits.end());
    double reached = stop;
    for (const auto& [t, label] : hits) {
      mark_served(label, t);
      state_.outstanding.erase(label);
      if (done()) {
        reached = t;
        break;
      }
    }
    advance(seg, reached);
    if (done()) return;

    if (ev) {
      release(*ev);
      replan();
    } else if (moving) {
      state_.pos = plan_.targets[next_target_++];
    } else {
      if (!state_.unreleased.empty()) throw ProtocolError("source went quiet before releasing every request");
      throw DivergenceError("agent idles with unserved released requests");
    }
  }

  void advance(const Segment& seg, double t) {
    Segment piece = seg;
    piece.end_time = t;
    const double x = piece.end_pos();
    result_.trajectory.append(piece);
    now_ = t;
    state_.pos = x;
  }

  SimResult finish() {
    result_.t_serve = 0.0;
    for (const auto& [label, t] : result_.serve_time) result_.t_serve = std::max(result_.t_serve, t);
    result_.makespan = result_.t_serve;
    if (state_.variant == Variant::Closed) {
      result_.trajectory.move_to(0.0);
      result_.makespan += std::abs(state_.pos);
    }
    return std::move(result_);
  }

  EventSource& source_;
  Algorithm algo_;
  SimOptions opt_;
  AlgoState state_;
  MovePlan plan_;
  std::size_t next_target_ = 0;
  double now_ = 0.0;
  std::set<Label> released_;
  SimResult result_;
};

}  // namespace detail

inline SimResult simulate(EventSource& source, Algorithm algo, const PredictionSet& predictions, Variant variant,
                          SimOptions opt = {}) {
  if (predictions.size() != source.total()) throw ValidationError("predictions must cover every request label");
  return detail::Simulation(source, algo, predictions, variant, opt).run();
}

inline SimResult simulate(const Instance& instance, Algorithm algo, SimOptions opt = {}) {
  FixedSource source(instance);
  return simulate(source, algo, instance.predictions, instance.variant, opt);
}

/// The fixed instance an adaptive run actually produced.
inline Instance transcript_instance(const SimResult& sim, const PredictionSet& predictions, Variant variant) {
  Instance inst;
  inst.variant = variant;
  inst.requests = sim.releases;
  inst.predictions = predictions;
  return inst;
}

inline double competitive_ratio(const SimResult& sim, const OracleResult& oracle) {
  if (oracle.opt_makespan == 0.0) return 1.0;
  return sim.makespan / oracle.opt_makespan;
}

inline double farfirst_bound(double eta) { return std::min(1.5 * (1.0 + eta), 3.0); }

inline double nearfirst_bound(double eta) {
  if (eta >= 2.0 / 3.0) return 3.0;
  return std::min(1.0 + 2.0 * (1.0 + eta) / (3.0 - 2.0 * eta), 3.0);
}

inline double pivot_bound(double delta, double eta) {
  const double den = 3.0 - 2.0 * (delta + 2.0 * eta);
  if (den <= 0.0) return 3.0;
  return std::min(1.0 + (1.0 + 2.0 * (delta + 3.0 * eta)) / den, 3.0);
}

/// Checks the trajectory law and serve semantics of a finished run.
/// Returns an empty string when everything holds, otherwise the first violation.
inline std::string check_run(const SimResult& sim, Variant variant, double tol = kEps) {
  const Trajectory& tr = sim.trajectory;
  double t = 0.0, x = 0.0;
  for (const Segment& s : tr.segments()) {
    if (std::abs(s.velocity) > 1.0) return "segment exceeds unit speed";
    if (s.start_time != t && std::abs(s.start_time - t) > tol) return "time gap between segments";
    if (std::abs(s.start_pos - x) > tol) return "position jump between segments";
    t = s.end_time;
    x = s.end_pos();
  }
  for (const Request& r : sim.releases) {
    auto it = sim.serve_time.find(r.label);
    if (it == sim.serve_time.end()) return "label " + std::to_string(r.label) + " never served";
    if (it->second < r.release_time) return "label " + std::to_string(r.label) + " served before release";
    if (std::abs(tr.position_at(it->second) - r.position) > tol) return "serve away from the request position";
  }
  if (variant == Variant::Closed && std::abs(tr.end_pos()) > tol) return "closed run does not end at the origin";
  return {};
}

}  // namespace oltsp
