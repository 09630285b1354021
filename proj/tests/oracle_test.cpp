#include <gtest/gtest.h>

#include <random>

#include "oltsp/oracle.hpp"

using namespace oltsp;

namespace {

Instance make(Variant v, std::vector<Request> reqs) {
  Instance inst;
  inst.variant = v;
  inst.requests = std::move(reqs);
  inst.predictions = perfect_predictions(inst.requests);
  return normalize_instance(inst);
}

Instance random_instance(std::mt19937_64& rng, Variant v, int max_n) {
  std::uniform_int_distribution<int> count(1, max_n);
  std::uniform_real_distribution<double> pos(-1.0, 2.0);
  std::uniform_real_distribution<double> rel(0.0, 4.0);
  std::bernoulli_distribution coarse(0.3);
  int n = count(rng);
  std::vector<Request> reqs;
  for (int i = 1; i <= n; ++i) {
    // Coarse values exercise same-position groups and exact ties.
    double x = coarse(rng) ? std::round(pos(rng)) : pos(rng);
    double r = coarse(rng) ? std::round(rel(rng)) : rel(rng);
    reqs.push_back({i, x, r});
  }
  return make(v, reqs);
}

}  // namespace

TEST(Bruteforce, OpenSingleRelease) {
  EXPECT_DOUBLE_EQ(opt_bruteforce(make(Variant::Open, {{1, 1.0, 5.0}})).opt_makespan, 5.0);
}

TEST(Bruteforce, ClosedBothSides) {
  EXPECT_DOUBLE_EQ(opt_bruteforce(make(Variant::Closed, {{1, -1, 0}, {2, 1, 0}})).opt_makespan, 4.0);
}

TEST(Bruteforce, OpenBothSidesEnders) {
  OracleResult r = opt_bruteforce(make(Variant::Open, {{1, -1, 0}, {2, 1, 0}}));
  EXPECT_DOUBLE_EQ(r.opt_makespan, 3.0);
  EXPECT_EQ(r.ender_set, (std::set<Label>{1, 2}));
}

TEST(Bruteforce, SizeLimit) {
  std::vector<Request> reqs;
  for (int i = 1; i <= 11; ++i) reqs.push_back({i, 0.1 * i, 0.0});
  EXPECT_THROW(opt_bruteforce(make(Variant::Open, reqs)), SizeError);
  EXPECT_NO_THROW(opt_dp(make(Variant::Open, reqs)));
}

TEST(Dp, SizeLimit) {
  std::vector<Request> reqs;
  for (int i = 1; i <= 23; ++i) reqs.push_back({i, 0.1 * i, 0.0});
  EXPECT_THROW(opt_dp(make(Variant::Open, reqs)), SizeError);
  EXPECT_NEAR(opt_zigzag(make(Variant::Open, reqs)).opt_makespan, 2.3, 1e-12);
}

TEST(Oracle, TrivialInstance) {
  Instance inst = make(Variant::Open, {});
  for (auto* f : {+[](const Instance& i) { return opt_bruteforce(i); }, +[](const Instance& i) { return opt_dp(i); },
                  +[](const Instance& i) { return opt_zigzag(i); }}) {
    OracleResult r = f(inst);
    EXPECT_EQ(r.opt_makespan, 0.0);
    EXPECT_EQ(r.ender_set, (std::set<Label>{0}));
  }
}

TEST(Oracle, OriginRequestReleasedLate) {
  Instance inst = make(Variant::Open, {{1, 2.0, 0.0}, {2, 0.0, 6.0}});
  EXPECT_DOUBLE_EQ(opt_bruteforce(inst).opt_makespan, 6.0);
  EXPECT_DOUBLE_EQ(opt_dp(inst).opt_makespan, 6.0);
  EXPECT_DOUBLE_EQ(opt_zigzag(inst).opt_makespan, 6.0);
  EXPECT_EQ(opt_zigzag(inst).ender_set, (std::set<Label>{0, 2}));
}

TEST(Oracle, ClosedLowerBounds) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    Instance inst = random_instance(rng, Variant::Closed, 8);
    double opt = opt_dp(inst).opt_makespan;
    Extremes e = extremes(inst);
    EXPECT_GE(opt + 1e-9, 2.0 * e.span());
    for (const auto& r : inst.requests) EXPECT_GE(opt + 1e-9, r.release_time + std::abs(r.position));
  }
}

TEST(Oracle, OpenLowerBoundsWithZeroReleases) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> pos(-1.0, 2.0);
  for (int k = 0; k < 200; ++k) {
    std::vector<Request> reqs;
    for (int i = 1; i <= 6; ++i) reqs.push_back({i, pos(rng), 0.0});
    Instance inst = make(Variant::Open, reqs);
    Extremes e = extremes(inst);
    double opt = opt_dp(inst).opt_makespan;
    EXPECT_NEAR(opt, e.span() + std::min(std::abs(e.left), std::abs(e.right)), 1e-9);
  }
}

TEST(Oracle, DifferentialAgainstBruteforce) {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 600; ++k) {
    Variant v = k % 2 ? Variant::Open : Variant::Closed;
    Instance inst = random_instance(rng, v, 8);
    OracleResult bf = opt_bruteforce(inst);
    OracleResult dp = opt_dp(inst);
    OracleResult zz = opt_zigzag(inst);
    ASSERT_NEAR(dp.opt_makespan, bf.opt_makespan, 1e-9) << "instance " << k;
    ASSERT_NEAR(zz.opt_makespan, bf.opt_makespan, 1e-9) << "instance " << k;
    EXPECT_EQ(dp.ender_set, bf.ender_set) << "instance " << k;
    EXPECT_EQ(zz.ender_set, bf.ender_set) << "instance " << k;
    for (const OracleResult* r : {&bf, &dp, &zz}) {
      ASSERT_EQ(r->optimal_order.size(), inst.size());
      EXPECT_NEAR(replay_order(r->optimal_order, inst), r->opt_makespan, 1e-9) << "instance " << k;
    }
  }
}

TEST(Oracle, PruningNeverChangesOpt) {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 300; ++k) {
    Instance inst = random_instance(rng, k % 2 ? Variant::Open : Variant::Closed, 7);
    OracleResult pruned = opt_bruteforce(inst, true);
    OracleResult raw = opt_bruteforce(inst, false);
    EXPECT_NEAR(pruned.opt_makespan, raw.opt_makespan, 1e-9);
    EXPECT_NEAR(opt_dp(inst, false).opt_makespan, raw.opt_makespan, 1e-9);
  }
}

TEST(Oracle, ZigzagMatchesDpOnLargerInstances) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 60; ++k) {
    Instance inst = random_instance(rng, k % 2 ? Variant::Open : Variant::Closed, 16);
    OracleResult dp = opt_dp(inst);
    OracleResult zz = opt_zigzag(inst);
    ASSERT_NEAR(zz.opt_makespan, dp.opt_makespan, 1e-9) << "instance " << k;
    EXPECT_EQ(zz.ender_set, dp.ender_set) << "instance " << k;
  }
}

TEST(DeltaInputs, ExactAndNearest) {
  Instance one = make(Variant::Open, {{1, 1.0, 0.0}});
  DeltaInputs d1 = delta_inputs(one);
  EXPECT_EQ(d1.ender_set, (std::set<Label>{1}));
  EXPECT_EQ(d1.distance.at(1), 0.0);

  Instance two = make(Variant::Open, {{1, -1.0, 0.0}, {2, 1.0, 0.0}, {3, 0.25, 0.0}});
  DeltaInputs d2 = delta_inputs(two);
  EXPECT_EQ(d2.ender_set, (std::set<Label>{1, 2}));
  EXPECT_DOUBLE_EQ(d2.distance.at(3), 0.75);
}

TEST(DeltaInputs, ClosedUnsupported) {
  EXPECT_THROW(delta_inputs(make(Variant::Closed, {{1, 1.0, 0.0}})), UnsupportedVariantError);
}

TEST(DeltaInputs, ConsistentWithBruteforce) {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 200; ++k) {
    Instance inst = random_instance(rng, Variant::Open, 8);
    OracleResult bf = opt_bruteforce(inst);
    DeltaInputs d = delta_inputs(inst);
    for (const auto& r : inst.requests) {
      double best = 1e300;
      for (Label e : bf.ender_set) best = std::min(best, std::abs(r.position - inst.request(e).position));
      EXPECT_NEAR(d.distance.at(r.label), best, 1e-12);
    }
  }
}
