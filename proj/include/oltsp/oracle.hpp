#pragma once

// Exact offline optimum for online TSP on the line.
//
// Three independent routes to the same number:
//   opt_bruteforce  enumerates serve orders (n <= 10 after pruning)
//   opt_dp          subset DP over (served set, last request) (n <= 22)
//   opt_zigzag      O(n^2) interval DP over last-visit times, any n
//
// All three use the schedule normal form "move directly to the next served
// request, wait only at the destination": arrival t_k = max(t_{k-1} + |q_k -
// q_{k-1}|, rel(q_k)), and a closed tour adds |q_last| at the end.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "oltsp/core.hpp"

namespace oltsp {

struct OracleResult {
  double opt_makespan = 0.0;
  std::vector<Label> optimal_order;
  /// Labels that end some optimal open schedule; empty for closed instances.
  std::set<Label> ender_set;
};

inline constexpr std::size_t kBruteForceLimit = 10;
inline constexpr std::size_t kDpLimit = 22;

/// Makespan of serving requests in the given order from the origin at time 0.
inline double replay_order(std::span<const Label> order, const Instance& instance) {
  double t = 0.0;
  double x = 0.0;
  for (Label label : order) {
    const Request& r = instance.request(label);
    t = std::max(t + std::abs(r.position - x), r.release_time);
    x = r.position;
  }
  if (instance.variant == Variant::Closed) t += std::abs(x);
  return t;
}

namespace detail {

/// Requests left after dominance pruning, plus what was folded away.
struct Pruned {
  std::vector<Request> kept;
  /// kept label -> labels at the same position with earlier (or equal) release.
  std::map<Label, std::vector<Label>> dominated;
  /// Requests at the origin with release 0: served by the start state.
  std::vector<Label> preserved;
};

inline Pruned prune(const std::vector<Request>& requests, bool enabled) {
  Pruned out;
  if (!enabled) {
    out.kept = requests;
    return out;
  }
  std::vector<Request> sorted = requests;
  std::sort(sorted.begin(), sorted.end(), [](const Request& a, const Request& b) {
    if (a.position != b.position) return a.position < b.position;
    return a.label < b.label;
  });
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i + 1;
    while (j < sorted.size() && sorted[j].position - sorted[i].position <= kEps) ++j;
    // Group [i, j): one position. Keep the latest release (lowest label on ties).
    std::size_t best = i;
    for (std::size_t k = i + 1; k < j; ++k) {
      if (sorted[k].release_time > sorted[best].release_time) best = k;
    }
    if (is_zero(sorted[best].position) && sorted[best].release_time <= 0.0) {
      for (std::size_t k = i; k < j; ++k) out.preserved.push_back(sorted[k].label);
    } else {
      out.kept.push_back(sorted[best]);
      auto& dom = out.dominated[sorted[best].label];
      for (std::size_t k = i; k < j; ++k) {
        if (k != best) dom.push_back(sorted[k].label);
      }
    }
    i = j;
  }
  return out;
}

/// Expands an order over kept requests to every label of the instance.
inline std::vector<Label> expand_order(const Pruned& p, const std::vector<Label>& kept_order) {
  std::vector<Label> order = p.preserved;
  for (Label label : kept_order) {
    if (auto it = p.dominated.find(label); it != p.dominated.end()) {
      order.insert(order.end(), it->second.begin(), it->second.end());
    }
    order.push_back(label);
  }
  return order;
}

inline std::set<Label> expand_enders(const Pruned& p, const std::set<Label>& kept_enders) {
  std::set<Label> out = kept_enders;
  for (Label label : kept_enders) {
    if (auto it = p.dominated.find(label); it != p.dominated.end()) out.insert(it->second.begin(), it->second.end());
  }
  return out;
}

/// Result when nothing is left after pruning: every request sits at the origin at time 0.
inline OracleResult trivial_result(const Instance& instance, const Pruned& p) {
  OracleResult r;
  r.opt_makespan = 0.0;
  r.optimal_order = p.preserved;
  if (instance.variant == Variant::Open) r.ender_set.insert(p.preserved.begin(), p.preserved.end());
  return r;
}

}  // namespace detail

/// Exhaustive minimum over all serve orders.
inline OracleResult opt_bruteforce(const Instance& instance, bool prune = true) {
  detail::Pruned p = detail::prune(instance.requests, prune);
  if (p.kept.size() > kBruteForceLimit) throw SizeError("instance too large for brute force");
  if (p.kept.empty()) return detail::trivial_result(instance, p);

  const bool closed = instance.variant == Variant::Closed;
  std::vector<std::size_t> perm(p.kept.size());
  std::iota(perm.begin(), perm.end(), 0);

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_perm;
  std::vector<std::pair<double, Label>> finals;
  do {
    double t = 0.0;
    double x = 0.0;
    for (std::size_t k : perm) {
      t = std::max(t + std::abs(p.kept[k].position - x), p.kept[k].release_time);
      x = p.kept[k].position;
    }
    if (closed) t += std::abs(x);
    if (!closed) finals.emplace_back(t, p.kept[perm.back()].label);
    if (t < best) {
      best = t;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  OracleResult r;
  r.opt_makespan = best;
  std::vector<Label> kept_order;
  for (std::size_t k : best_perm) kept_order.push_back(p.kept[k].label);
  r.optimal_order = detail::expand_order(p, kept_order);
  std::set<Label> enders;
  for (const auto& [t, label] : finals) {
    if (t <= best + kEps) enders.insert(label);
  }
  r.ender_set = detail::expand_enders(p, enders);
  return r;
}

/// Set-based DP over (served set, last request), layered by population count.
///
/// A move from the last request j to k is skipped when it would pass over an
/// unserved request m that is already released at the passing time: the
/// order j -> m -> k reaches k at the same instant with m also served, so the
/// restriction keeps every optimal value and every optimal final request.
/// Only reachable subsets are stored.
inline OracleResult opt_dp(const Instance& instance, bool prune = true) {
  detail::Pruned p = detail::prune(instance.requests, prune);
  const std::size_t m = p.kept.size();
  if (m > kDpLimit) throw SizeError("instance too large for the subset DP (limit " + std::to_string(kDpLimit) + ")");
  if (m == 0) return detail::trivial_result(instance, p);

  const auto& q = p.kept;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::int8_t kStart = -1;

  struct Cell {
    std::vector<double> time;         // per last request
    std::vector<std::int8_t> parent;  // previous last request, kStart for the origin
  };
  using Layer = std::unordered_map<std::uint32_t, Cell>;
  std::vector<Layer> layers(m + 1);

  auto relax = [&](std::uint32_t mask, std::size_t last, double t, std::int8_t parent) {
    Layer& layer = layers[std::popcount(mask)];
    auto [it, inserted] = layer.try_emplace(mask);
    if (inserted) {
      it->second.time.assign(m, kInf);
      it->second.parent.assign(m, kStart);
    }
    if (t < it->second.time[last]) {
      it->second.time[last] = t;
      it->second.parent[last] = parent;
    }
  };

  auto blocked = [&](std::uint32_t mask, double from_x, double t, std::size_t k) {
    const double to_x = q[k].position;
    const double lo = std::min(from_x, to_x);
    const double hi = std::max(from_x, to_x);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == k || (mask >> i & 1u)) continue;
      const double x = q[i].position;
      if (x > lo && x < hi && q[i].release_time <= t + std::abs(x - from_x)) return true;
    }
    return false;
  };

  for (std::size_t k = 0; k < m; ++k) {
    if (!blocked(0, 0.0, 0.0, k)) relax(1u << k, k, std::max(std::abs(q[k].position), q[k].release_time), kStart);
  }
  for (std::size_t size = 1; size < m; ++size) {
    for (const auto& [mask, cell] : layers[size]) {
      for (std::size_t j = 0; j < m; ++j) {
        const double t = cell.time[j];
        if (t == kInf) continue;
        for (std::size_t k = 0; k < m; ++k) {
          if (mask >> k & 1u) continue;
          if (blocked(mask, q[j].position, t, k)) continue;
          const double arrive = std::max(t + std::abs(q[k].position - q[j].position), q[k].release_time);
          relax(mask | (1u << k), k, arrive, static_cast<std::int8_t>(j));
        }
      }
    }
  }

  const std::uint32_t full = m == 32 ? ~0u : ((1u << m) - 1u);
  const Cell& last = layers[m].at(full);
  const bool closed = instance.variant == Variant::Closed;
  std::vector<double> finish(m, kInf);
  for (std::size_t k = 0; k < m; ++k) {
    if (last.time[k] == kInf) continue;
    finish[k] = last.time[k] + (closed ? std::abs(q[k].position) : 0.0);
  }
  std::size_t best = static_cast<std::size_t>(std::min_element(finish.begin(), finish.end()) - finish.begin());

  OracleResult r;
  r.opt_makespan = finish[best];
  if (!closed) {
    std::set<Label> enders;
    for (std::size_t k = 0; k < m; ++k) {
      if (finish[k] <= r.opt_makespan + kEps) enders.insert(q[k].label);
    }
    r.ender_set = detail::expand_enders(p, enders);
  }

  std::vector<Label> kept_order;
  std::uint32_t mask = full;
  std::size_t k = best;
  while (true) {
    kept_order.push_back(q[k].label);
    const std::int8_t parent = layers[std::popcount(mask)].at(mask).parent[k];
    if (parent == kStart) break;
    mask &= ~(1u << k);
    k = static_cast<std::size_t>(parent);
  }
  std::reverse(kept_order.begin(), kept_order.end());
  r.optimal_order = detail::expand_order(p, kept_order);
  return r;
}

/// Interval DP over last-visit times.
///
/// A request is served iff the path's last visit to its position comes no
/// earlier than its release. Read backwards from the end, the set of
/// positions already "last-visited" is an interval that grows one request at
/// a time, so an optimal schedule is a shrinking zigzag preceded by a wait at
/// the origin. For a covered interval [i, j] with the agent at one of its
/// ends, G is the least value of max over still-uncovered requests of
/// (release + remaining path after its last visit), including the leg back
/// to the origin. The makespan of an end point e is max(rel(e), G(e, e)).
inline OracleResult opt_zigzag(const Instance& instance) {
  detail::Pruned p = detail::prune(instance.requests, true);
  if (p.kept.empty()) return detail::trivial_result(instance, p);

  struct Point {
    double x;
    double rel;
    int kept;  // index into p.kept, -1 for the virtual origin
  };
  std::vector<Point> pts;
  bool has_origin = false;
  for (std::size_t i = 0; i < p.kept.size(); ++i) {
    pts.push_back({p.kept[i].position, p.kept[i].release_time, static_cast<int>(i)});
    has_origin = has_origin || is_zero(p.kept[i].position);
  }
  if (!has_origin) pts.push_back({0.0, 0.0, -1});
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x < b.x; });

  const std::size_t n = pts.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // g[side][i][j]: side 0 = agent at pts[i], side 1 = agent at pts[j].
  // choice: 0 = extend left next, 1 = extend right next.
  std::vector<double> g(2 * n * n, kInf);
  std::vector<std::int8_t> choice(2 * n * n, -1);
  auto at = [n](int side, std::size_t i, std::size_t j) { return (static_cast<std::size_t>(side) * n + i) * n + j; };

  for (std::size_t width = n; width-- > 0;) {
    for (std::size_t i = 0; i + width < n; ++i) {
      const std::size_t j = i + width;
      for (int side = 0; side < 2; ++side) {
        const double x = side == 0 ? pts[i].x : pts[j].x;
        double best = kInf;
        std::int8_t pick = -1;
        if (i == 0 && j == n - 1) {
          best = std::abs(x);
        } else {
          if (i > 0) {
            const double v = (x - pts[i - 1].x) + std::max(pts[i - 1].rel, g[at(0, i - 1, j)]);
            if (v < best) best = v, pick = 0;
          }
          if (j + 1 < n) {
            const double v = (pts[j + 1].x - x) + std::max(pts[j + 1].rel, g[at(1, i, j + 1)]);
            if (v < best) best = v, pick = 1;
          }
        }
        g[at(side, i, j)] = best;
        choice[at(side, i, j)] = pick;
      }
    }
  }

  const bool closed = instance.variant == Variant::Closed;
  std::vector<double> finish(n, kInf);
  for (std::size_t e = 0; e < n; ++e) {
    if (closed ? !is_zero(pts[e].x) : pts[e].kept < 0) continue;
    finish[e] = std::max(pts[e].rel, g[at(0, e, e)]);
  }
  const std::size_t best = static_cast<std::size_t>(std::min_element(finish.begin(), finish.end()) - finish.begin());

  OracleResult r;
  r.opt_makespan = finish[best];
  if (!closed) {
    std::set<Label> enders;
    for (std::size_t e = 0; e < n; ++e) {
      if (finish[e] <= r.opt_makespan + kEps) enders.insert(p.kept[pts[e].kept].label);
    }
    r.ender_set = detail::expand_enders(p, enders);
  }

  // Coverage sequence read backwards from the end point is the serve order.
  std::vector<Label> backwards;
  std::size_t i = best, j = best;
  int side = 0;
  if (pts[best].kept >= 0) backwards.push_back(p.kept[pts[best].kept].label);
  while (!(i == 0 && j == n - 1)) {
    const std::int8_t pick = choice[at(side, i, j)];
    std::size_t added;
    if (pick == 0) {
      added = --i;
      side = 0;
    } else {
      added = ++j;
      side = 1;
    }
    if (pts[added].kept >= 0) backwards.push_back(p.kept[pts[added].kept].label);
  }
  std::vector<Label> kept_order(backwards.rbegin(), backwards.rend());
  r.optimal_order = detail::expand_order(p, kept_order);
  return r;
}

/// Per-label distance |q_label - q_f| to the nearest member of the ender set.
struct DeltaInputs {
  std::set<Label> ender_set;
  std::map<Label, double> distance;
};

inline DeltaInputs delta_inputs(const Instance& instance, const OracleResult& oracle) {
  if (instance.variant != Variant::Open) throw UnsupportedVariantError("ender sets exist only for the open variant");
  DeltaInputs out;
  out.ender_set = oracle.ender_set;
  for (const auto& r : instance.requests) {
    double best = std::numeric_limits<double>::infinity();
    for (Label e : oracle.ender_set) best = std::min(best, std::abs(r.position - instance.request(e).position));
    out.distance[r.label] = best;
  }
  return out;
}

inline DeltaInputs delta_inputs(const Instance& instance) {
  if (instance.variant != Variant::Open) throw UnsupportedVariantError("ender sets exist only for the open variant");
  return delta_inputs(instance, opt_zigzag(instance));
}

}  // namespace oltsp
