#pragma once

// Adaptive release strategies. Each one watches the segments the agent
// commits to and decides release times on the fly.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oltsp/core.hpp"
#include "oltsp/engine.hpp"

namespace oltsp {

enum class Side { Left, Right };

enum class AttackFamily { Closed, Open, OpenLF };

/// Rank-n locations attack: n requests evenly spaced on [-1, 1], released
/// inward from the extremes at 2 - d until the agent leaves the safe
/// interval. At that commit instant the requests still pending on the exit
/// side are held back.
class LocationsAttack : public EventSource {
 public:
  LocationsAttack(AttackFamily family, int rank) : family_(family), rank_(rank) {
    if (rank < 2) throw ValidationError("attack rank must be >= 2");
    slots_.push_back({{0, 0.0, 0.0}, false, false});
    for (int k = 0; k < rank; ++k) {
      const double x = static_cast<double>(2 * k - (rank - 1)) / static_cast<double>(rank - 1);
      slots_.push_back({{k + 1, x, 2.0 - std::abs(x)}, true, false});
    }
    if (family == AttackFamily::OpenLF) slots_.push_back({{rank + 1, 0.0, 4.0}, false, false});
  }

  std::size_t total() const override { return slots_.size(); }

  Variant variant() const { return family_ == AttackFamily::Closed ? Variant::Closed : Variant::Open; }
  double alpha() const { return 2.0 / (rank_ - 1); }
  int rank() const { return rank_; }

  /// Exact predictions for every label; the LF family also names the extra
  /// origin request as the final one.
  PredictionSet predictions() const {
    PredictionSet p;
    for (const Slot& s : slots_) p.positions[s.request.label] = s.request.position;
    if (family_ == AttackFamily::OpenLF) p.final_label = rank_ + 1;
    return p;
  }

  std::optional<double> t_commit() const { return t_commit_; }
  std::optional<Side> committed_side() const { return side_; }

  /// Phase-1 release time of an attack member.
  static double phase_one_release(double x) { return 2.0 - std::abs(x); }

  /// Bounds of the phase-1 safe interval at time t.
  std::pair<double, double> safe_interval(double t) const {
    double lu = std::numeric_limits<double>::infinity();
    double ru = -lu;
    for (const Slot& s : slots_) {
      if (!s.member || phase_one_release(s.request.position) <= t) continue;
      lu = std::min(lu, s.request.position);
      ru = std::max(ru, s.request.position);
    }
    if (family_ == AttackFamily::Open) {
      if (!std::isfinite(lu)) lu = 1.0, ru = -1.0;
      return {3.0 * lu + 2.0, 3.0 * ru - 2.0};
    }
    if (!std::isfinite(lu)) lu = ru = 0.0;
    return {lu, ru};
  }

  std::optional<ReleaseEvent> query(const Segment& seg) override {
    if (!t_commit_) detect_commit(seg);
    const std::optional<double> r = next_release(seg.start_time);
    if (!r || *r > seg.end_time) return std::nullopt;
    ReleaseEvent ev;
    ev.time = *r;
    for (Slot& s : slots_) {
      if (!s.released && s.request.release_time == *r) {
        s.released = true;
        ev.released.push_back(s.request);
      }
    }
    return ev;
  }

 private:
  struct Slot {
    Request request;
    bool member;  // one of the rank evenly spaced requests
    bool released;
  };

  std::optional<double> next_release(double from) const {
    std::optional<double> best;
    for (const Slot& s : slots_) {
      if (s.released || s.request.release_time < from) continue;
      if (!best || s.request.release_time < *best) best = s.request.release_time;
    }
    return best;
  }

  bool outside(double x, double t) const {
    const auto [lo, hi] = safe_interval(t);
    return !(x > lo + kEps && x < hi - kEps);
  }

  // Only the next release can change the safe interval inside this query,
  // so there is one interval of constant bounds plus the release instant.
  void detect_commit(const Segment& seg) {
    const double t0 = seg.start_time;
    if (outside(seg.start_pos, t0)) return commit(t0, seg.start_pos);

    const std::optional<double> r = next_release(t0);
    const bool release_inside = r && *r <= seg.end_time;
    const double end = release_inside ? *r : seg.end_time;
    if (seg.velocity != 0.0) {
      const auto [lo, hi] = safe_interval(t0);
      const double edge = seg.velocity > 0.0 ? hi - kEps : lo + kEps;
      const double hit = t0 + (edge - seg.start_pos) / seg.velocity;
      // Crossings that coincide with the release instant are judged against
      // the bounds after that release.
      const bool in_range = release_inside ? hit < end - kEps : hit <= end;
      if (hit >= t0 && in_range) return commit(hit, seg.position_at(hit));
    }
    if (release_inside && *r > t0 && outside(seg.position_at(*r), *r)) commit(*r, seg.position_at(*r));
  }

  void commit(double t, double x) {
    const auto [lo, hi] = safe_interval(t);
    const bool past_hi = x >= hi - kEps;
    const bool past_lo = x <= lo + kEps;
    Side side;
    if (past_hi && !past_lo) {
      side = Side::Right;
    } else if (past_lo && !past_hi) {
      side = Side::Left;
    } else {
      side = x > 0.0 ? Side::Right : Side::Left;
    }
    t_commit_ = t;
    side_ = side;
    for (Slot& s : slots_) {
      if (!s.member || s.released || s.request.release_time <= t) continue;
      const double x_s = s.request.position;
      const bool exit_side = x_s == 0.0 || (side == Side::Right ? x_s > 0.0 : x_s < 0.0);
      if (!exit_side) continue;
      const double d = std::abs(x_s);
      s.request.release_time = family_ == AttackFamily::Open ? 2.0 + d : 4.0 - d;
    }
  }

  AttackFamily family_;
  int rank_;
  std::vector<Slot> slots_;
  std::optional<double> t_commit_;
  std::optional<Side> side_;
};

inline LocationsAttack closed_locations_attack(int rank) { return LocationsAttack(AttackFamily::Closed, rank); }
inline LocationsAttack open_locations_attack(int rank) { return LocationsAttack(AttackFamily::Open, rank); }
inline LocationsAttack open_lf_attack(int rank) { return LocationsAttack(AttackFamily::OpenLF, rank); }

/// One request at distance 1, released at t = 1 on the side away from the agent.
class ClassicOpenAttack : public EventSource {
 public:
  std::size_t total() const override { return 2; }

  PredictionSet predictions() const {
    PredictionSet p;
    p.positions = {{0, 0.0}, {1, 0.0}};
    return p;
  }

  std::optional<ReleaseEvent> query(const Segment& seg) override {
    if (!origin_done_) {
      origin_done_ = true;
      return ReleaseEvent{0.0, {{0, 0.0, 0.0}}};
    }
    if (done_ || seg.end_time < 1.0 || seg.start_time > 1.0) return std::nullopt;
    done_ = true;
    const double x = seg.position_at(1.0) <= 0.0 ? 1.0 : -1.0;
    return ReleaseEvent{1.0, {{1, x, 1.0}}};
  }

 private:
  bool origin_done_ = false;
  bool done_ = false;
};

/// Three-request closed strategy built around rho = (9 + sqrt(17)) / 8.
class ClassicClosedAttack : public EventSource {
 public:
  static double rho() { return (9.0 + std::sqrt(17.0)) / 8.0; }
  static double inner_radius() { return 2.0 * rho() - 3.0; }
  static double late_radius() { return 7.0 - 4.0 * rho(); }

  std::size_t total() const override { return 4; }

  PredictionSet predictions() const {
    PredictionSet p;
    p.positions = {{0, 0.0}, {1, 0.0}, {2, 0.0}, {3, 0.0}};
    return p;
  }

  std::optional<ReleaseEvent> query(const Segment& seg) override {
    switch (stage_) {
      case Stage::Origin:
        stage_ = Stage::First;
        return ReleaseEvent{0.0, {{0, 0.0, 0.0}}};
      case Stage::First: return first(seg);
      case Stage::Watch: return watch(seg);
      case Stage::Chase: return chase(seg);
      case Stage::Done: return std::nullopt;
    }
    return std::nullopt;
  }

 private:
  enum class Stage { Origin, First, Watch, Chase, Done };

  std::optional<ReleaseEvent> first(const Segment& seg) {
    if (seg.end_time < 1.0) return std::nullopt;
    const double p1 = seg.position_at(1.0);
    if (std::abs(p1) > inner_radius()) {
      stage_ = Stage::Done;
      const double win = p1 > 0.0 ? -1.0 : 1.0;
      return ReleaseEvent{1.0, {{1, win, 1.0}, {2, win / 3.0, 1.0}, {3, 2.0 * win / 3.0, 1.0}}};
    }
    stage_ = Stage::Watch;
    return ReleaseEvent{1.0, {{1, -1.0, 1.0}, {2, 1.0, 1.0}}};
  }

  std::optional<ReleaseEvent> watch(const Segment& seg) {
    const double hi = std::min(seg.end_time, 3.0);
    if (hi >= seg.start_time) {
      visited_left_ = visited_left_ || seg.first_visit(-1.0, 1.0).value_or(kInf) <= hi;
      visited_right_ = visited_right_ || seg.first_visit(1.0, 1.0).value_or(kInf) <= hi;
    }
    if (seg.end_time < 3.0) return std::nullopt;
    const double p3 = seg.position_at(3.0);
    if (std::abs(p3) <= late_radius()) {
      stage_ = Stage::Done;
      double x;
      if (visited_left_ != visited_right_) {
        x = visited_left_ ? -1.0 : 1.0;
      } else {
        x = p3 <= 0.0 ? 1.0 : -1.0;
      }
      return ReleaseEvent{3.0, {{3, x, 3.0}}};
    }
    stage_ = Stage::Chase;
    side_ = p3 > 0.0 ? 1.0 : -1.0;
    return chase(seg);
  }

  std::optional<ReleaseEvent> chase(const Segment& seg) {
    const std::optional<double> t = seg.first_visit(0.0, std::max(seg.start_time, 3.0));
    if (!t) return std::nullopt;
    stage_ = Stage::Done;
    const double x = *t - 3.0;
    return ReleaseEvent{*t, {{3, side_ * (1.0 + x), *t}}};
  }

  static constexpr double kInf = std::numeric_limits<double>::infinity();
  Stage stage_ = Stage::Origin;
  bool visited_left_ = false;
  bool visited_right_ = false;
  double side_ = 1.0;
};

enum class AttackKind { FC, FO, FLF, ClassicClosed, ClassicOpen };

inline AttackKind parse_attack(std::string_view s) {
  if (s == "fc") return AttackKind::FC;
  if (s == "fo") return AttackKind::FO;
  if (s == "flf") return AttackKind::FLF;
  if (s == "classic-closed") return AttackKind::ClassicClosed;
  if (s == "classic-open") return AttackKind::ClassicOpen;
  throw ValidationError("unknown attack family '" + std::string(s) + "'");
}

struct AttackRun {
  SimResult sim;
  Instance transcript;
  OracleResult oracle;
  double ratio = 0.0;
  std::optional<double> t_commit;
  std::optional<Side> side;
};

/// Runs an attack against an algorithm and prices the realized transcript.
inline AttackRun run_attack(AttackKind kind, int rank, Algorithm algo) {
  AttackRun out;
  auto finish = [&](EventSource& src, const PredictionSet& preds, Variant v) {
    out.sim = simulate(src, algo, preds, v);
    out.transcript = transcript_instance(out.sim, preds, v);
    out.oracle = opt_zigzag(out.transcript);
    out.ratio = competitive_ratio(out.sim, out.oracle);
  };
  switch (kind) {
    case AttackKind::FC:
    case AttackKind::FO:
    case AttackKind::FLF: {
      const AttackFamily fam = kind == AttackKind::FC   ? AttackFamily::Closed
                               : kind == AttackKind::FO ? AttackFamily::Open
                                                        : AttackFamily::OpenLF;
      LocationsAttack a(fam, rank);
      finish(a, a.predictions(), a.variant());
      out.t_commit = a.t_commit();
      out.side = a.committed_side();
      break;
    }
    case AttackKind::ClassicClosed: {
      ClassicClosedAttack a;
      finish(a, a.predictions(), Variant::Closed);
      break;
    }
    case AttackKind::ClassicOpen: {
      ClassicOpenAttack a;
      finish(a, a.predictions(), Variant::Open);
      break;
    }
  }
  return out;
}

}  // namespace oltsp
