#pragma once

// Random instances, prediction-error sweeps and their aggregation.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "oltsp/algorithms.hpp"
#include "oltsp/core.hpp"
#include "oltsp/engine.hpp"
#include "oltsp/oracle.hpp"
#include "oltsp/predictions.hpp"
#include "oltsp/rng.hpp"

namespace oltsp {

struct GenParams {
  int n_max = 20;
  double c = 2.0;
  double r_max = 6.0;
  std::uint64_t seed = 1;
};

inline void check(const GenParams& p) {
  if (p.n_max < 2) throw ValidationError("n_max must be >= 2");
  if (!(p.c >= 1.0)) throw ValidationError("c must be >= 1");
  if (!(p.r_max >= 0.0)) throw ValidationError("r_max must be >= 0");
}

/// Requests at -1 and c' in [1, c], the rest uniform in [-1, c'], releases
/// uniform in [0, r_max], plus the origin request (label 0).
inline Instance gen_instance(const GenParams& params, Rng& rng, Variant variant = Variant::Open) {
  check(params);
  const int n = static_cast<int>(rng.uniform_int(2, params.n_max));
  const double cp = rng.uniform(1.0, params.c);
  Instance inst;
  inst.variant = variant;
  for (int i = 0; i < n; ++i) {
    double x = i == 0 ? -1.0 : i == 1 ? cp : rng.uniform(-1.0, cp);
    inst.requests.push_back({i + 1, x, rng.uniform(0.0, params.r_max)});
  }
  inst.predictions = perfect_predictions(inst.requests);
  return normalize_instance(inst);
}

struct SweepRow {
  std::size_t instance = 0;
  Algorithm algorithm = Algorithm::FarFirst;
  Variant variant = Variant::Closed;
  double eta_target = 0.0;
  double eta = 0.0;
  std::optional<double> delta;
  std::optional<Label> final_label;
  std::size_t n = 0;
  double opt = 0.0;
  double makespan = 0.0;
  double ratio = 0.0;

  /// Proven ratio ceiling at the row's measured errors.
  double bound() const {
    switch (algorithm) {
      case Algorithm::FarFirst: return farfirst_bound(eta);
      case Algorithm::NearFirst: return nearfirst_bound(eta);
      case Algorithm::Pivot: return pivot_bound(delta.value_or(0.0), eta);
      case Algorithm::WaitCopy: return 2.0;
    }
    return 3.0;
  }
};

struct SweepConfig {
  GenParams params;
  std::size_t count = 7500;
  std::vector<double> etas;
  std::vector<Algorithm> algos{Algorithm::FarFirst, Algorithm::NearFirst, Algorithm::Pivot};
  unsigned threads = 1;
  /// Called for every simulation, possibly from several threads at once.
  std::function<void(const SweepRow&, const SimResult&)> inspect;
};

/// 0, step, 2 step, ..., hi (inclusive, computed by index to avoid drift).
inline std::vector<double> linear_grid(double hi, double step) {
  std::vector<double> out;
  const auto k = static_cast<long>(std::llround(hi / step));
  for (long i = 0; i <= k; ++i) out.push_back(static_cast<double>(i) * step);
  return out;
}

inline Variant sweep_variant(Algorithm a) { return a == Algorithm::FarFirst ? Variant::Closed : Variant::Open; }

/// All rows of one instance, in (eta, algorithm, final label) order.
inline std::vector<SweepRow> sweep_instance(const SweepConfig& cfg, std::size_t index) {
  Rng rng(stream_seed(cfg.params.seed, index));
  const Instance base = gen_instance(cfg.params, rng);
  const Label origin = 0;
  const Mould mould = gen_mould(base, origin, rng.next());

  Instance closed = base;
  closed.variant = Variant::Closed;
  const OracleResult opt_open = opt_zigzag(base);
  const OracleResult opt_closed = opt_zigzag(closed);
  const DeltaInputs din = delta_inputs(base, opt_open);
  const double span = extremes(base).span();

  std::vector<SweepRow> rows;
  for (double eta_target : cfg.etas) {
    Instance inst = base;
    inst.predictions = apply_mould(base, mould, eta_target);
    const double eta = eta_error(inst).eta;
    for (Algorithm algo : cfg.algos) {
      const Variant v = sweep_variant(algo);
      inst.variant = v;
      const OracleResult& oracle = v == Variant::Open ? opt_open : opt_closed;
      auto emit = [&](std::optional<Label> f) {
        SweepRow row;
        row.instance = index;
        row.algorithm = algo;
        row.variant = v;
        row.eta_target = eta_target;
        row.eta = eta;
        row.n = inst.size();
        row.opt = oracle.opt_makespan;
        if (f) {
          row.final_label = f;
          row.delta = din.distance.at(*f) / span;
        }
        const SimResult sim = simulate(inst, algo);
        row.makespan = sim.makespan;
        row.ratio = competitive_ratio(sim, oracle);
        if (cfg.inspect) cfg.inspect(row, sim);
        rows.push_back(row);
      };
      if (algo == Algorithm::Pivot) {
        for (const Request& r : base.requests) {
          if (r.label == origin) continue;
          inst.predictions.final_label = r.label;
          emit(r.label);
        }
        inst.predictions.final_label.reset();
      } else {
        emit(std::nullopt);
      }
    }
  }
  return rows;
}

/// Runs every instance; output order is by instance index whatever the thread count.
inline std::vector<SweepRow> sweep(const SweepConfig& cfg) {
  check(cfg.params);
  std::vector<std::vector<SweepRow>> per(cfg.count);
  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(std::max<std::size_t>(cfg.count, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i; !failed && (i = next++) < cfg.count;) {
      try {
        per[i] = sweep_instance(cfg, i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<SweepRow> rows;
  for (auto& v : per) rows.insert(rows.end(), v.begin(), v.end());
  return rows;
}

struct CurvePoint {
  double x = 0.0;
  double value = 0.0;
};

/// Max ratio among rows with eta <= x, for each x.
inline std::vector<CurvePoint> max_ratio_curve(const std::vector<SweepRow>& rows, const std::vector<double>& xs) {
  std::vector<CurvePoint> out;
  for (double x : xs) {
    double best = std::numeric_limits<double>::quiet_NaN();
    for (const SweepRow& r : rows) {
      if (r.eta <= x + kEps && !(best >= r.ratio)) best = r.ratio;
    }
    out.push_back({x, best});
  }
  return out;
}

struct Grid {
  std::string row_name;
  std::string col_name;
  std::vector<double> rows;
  std::vector<double> cols;
  /// values[i][j] for rows[i], cols[j]; NaN where no row qualifies.
  std::vector<std::vector<double>> values;
};

/// Largest ratio among the best pct% (at least one) of the given ratios.
inline double best_fraction_max(std::vector<double> ratios, double pct) {
  if (ratios.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(ratios.begin(), ratios.end());
  auto k = static_cast<std::size_t>(std::ceil(pct / 100.0 * static_cast<double>(ratios.size()) - 1e-9));
  k = std::clamp<std::size_t>(k, 1, ratios.size());
  return ratios[k - 1];
}

/// Cell (pct, eta): max ratio over the best pct% of rows with error <= eta.
inline Grid percentile_grid(const std::vector<SweepRow>& rows, const std::vector<double>& eta_buckets,
                            const std::vector<double>& pct_buckets) {
  Grid g{"pct", "eta", pct_buckets, eta_buckets, {}};
  for (double pct : pct_buckets) {
    std::vector<double> line;
    for (double eta : eta_buckets) {
      std::vector<double> ratios;
      for (const SweepRow& r : rows) {
        if (r.eta <= eta + kEps) ratios.push_back(r.ratio);
      }
      line.push_back(best_fraction_max(std::move(ratios), pct));
    }
    g.values.push_back(std::move(line));
  }
  return g;
}

/// Cell (delta, eta): max ratio over rows with delta <= x and eta <= y.
inline Grid delta_eta_grid(const std::vector<SweepRow>& rows, const std::vector<double>& delta_buckets,
                           const std::vector<double>& eta_buckets) {
  Grid g{"delta", "eta", delta_buckets, eta_buckets, {}};
  for (double d : delta_buckets) {
    std::vector<double> line;
    for (double eta : eta_buckets) {
      double best = std::numeric_limits<double>::quiet_NaN();
      for (const SweepRow& r : rows) {
        if (r.delta && *r.delta <= d + kEps && r.eta <= eta + kEps && !(best >= r.ratio)) best = r.ratio;
      }
      line.push_back(best);
    }
    g.values.push_back(std::move(line));
  }
  return g;
}

inline std::vector<SweepRow> rows_for(const std::vector<SweepRow>& rows, Algorithm a) {
  std::vector<SweepRow> out;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(out), [a](const SweepRow& r) { return r.algorithm == a; });
  return out;
}

}  // namespace oltsp
