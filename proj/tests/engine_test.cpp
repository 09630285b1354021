#include <gtest/gtest.h>

#include "oltsp/engine.hpp"
#include "oltsp/rng.hpp"

using namespace oltsp;

namespace {

Instance random_instance(Rng& rng, Variant v, int n) {
  Instance inst;
  inst.variant = v;
  inst.requests.push_back({0, 0, 0});
  for (int i = 1; i <= n; ++i) inst.requests.push_back({i, rng.uniform(-1, 2), rng.uniform(0, 4)});
  inst.predictions = perfect_predictions(inst.requests);
  return inst;
}

/// Releases the origin and then nothing, though it announces two requests.
class SilentSource : public EventSource {
 public:
  std::size_t total() const override { return 2; }
  std::optional<ReleaseEvent> query(const Segment& seg) override {
    if (seg.start_time == 0.0 && !sent_) {
      sent_ = true;
      return ReleaseEvent{0.0, {{0, 0, 0}}};
    }
    return std::nullopt;
  }

 private:
  bool sent_ = false;
};

/// Answers with an event outside the queried segment.
class AcausalSource : public EventSource {
 public:
  std::size_t total() const override { return 2; }
  std::optional<ReleaseEvent> query(const Segment& seg) override {
    if (!sent_) {
      sent_ = true;
      return ReleaseEvent{0.0, {{0, 0, 0}}};
    }
    return ReleaseEvent{seg.end_time + 5.0, {{1, 1, seg.end_time + 5.0}}};
  }

 private:
  bool sent_ = false;
};

}  // namespace

TEST(FixedSource, EventsInOrderAndBatched) {
  Instance inst{Variant::Open, {{0, 0, 0}, {1, 1, 1}, {2, -1, 2}, {3, 2, 2}}, {}};
  FixedSource src(inst);
  auto e0 = src.query({0, 0, 0, 0});
  ASSERT_TRUE(e0);
  EXPECT_EQ(e0->released.size(), 1u);
  EXPECT_FALSE(src.query({0, 0, 1, 0.5}));
  auto e1 = src.query({0.5, 0.5, 1, 5});
  ASSERT_TRUE(e1);
  EXPECT_EQ(e1->time, 1.0);
  auto e2 = src.query({1, 1, 0, 5});
  ASSERT_TRUE(e2);
  EXPECT_EQ(e2->time, 2.0);
  EXPECT_EQ(e2->released.size(), 2u);
  EXPECT_FALSE(src.query({2, 1, 0, 100}));
}

TEST(FixedSource, OriginOnly) {
  Instance inst{Variant::Closed, {{0, 0, 0}}, perfect_predictions({{0, 0, 0}})};
  SimResult r = simulate(inst, Algorithm::FarFirst);
  EXPECT_EQ(r.makespan, 0.0);
  EXPECT_TRUE(r.trajectory.empty());
}

TEST(Simulate, FarFirstClosedExample) {
  Instance inst{Variant::Closed, {{0, 0, 0}, {1, 2, 0}, {2, -1, 0}}, {}};
  inst.predictions = perfect_predictions(inst.requests);
  SimResult r = simulate(inst, Algorithm::FarFirst);
  EXPECT_DOUBLE_EQ(r.makespan, 6.0);
  EXPECT_EQ(check_run(r, Variant::Closed), "");
}

TEST(Simulate, OpenStopsAtLastServe) {
  Instance inst{Variant::Open, {{0, 0, 0}, {1, 1, 0}, {2, 0.5, 0}}, {}};
  inst.predictions = perfect_predictions(inst.requests);
  SimResult r = simulate(inst, Algorithm::NearFirst);
  EXPECT_DOUBLE_EQ(r.makespan, 1.0);
  EXPECT_DOUBLE_EQ(r.trajectory.end_time(), 1.0);
}

TEST(Simulate, ReleaseAndServeSameInstant) {
  // The agent stands at 1 when the request there is released.
  Instance inst{Variant::Open, {{0, 0, 0}, {1, 1, 3}}, {}};
  inst.predictions = perfect_predictions(inst.requests);
  SimResult r = simulate(inst, Algorithm::NearFirst);
  EXPECT_DOUBLE_EQ(r.serve_time.at(1), 3.0);
  EXPECT_DOUBLE_EQ(r.makespan, 3.0);
}

TEST(Simulate, NeverBeatsOpt) {
  Rng rng(12);
  for (int k = 0; k < 300; ++k) {
    Instance inst = random_instance(rng, k % 2 ? Variant::Open : Variant::Closed, 6);
    const double opt = opt_bruteforce(inst).opt_makespan;
    for (Algorithm a : {Algorithm::FarFirst, Algorithm::NearFirst, Algorithm::WaitCopy}) {
      SimResult r = simulate(inst, a);
      EXPECT_GE(r.makespan, opt - 1e-9);
      EXPECT_EQ(check_run(r, inst.variant), "");
      EXPECT_NEAR(evaluate(r.trajectory, inst).t_serve, r.t_serve, 1e-9);
    }
  }
}

TEST(Simulate, RatiosWithinProvenBoundsOnPerfectPredictions) {
  Rng rng(21);
  for (int k = 0; k < 300; ++k) {
    Instance open = random_instance(rng, Variant::Open, 7);
    Instance closed = open;
    closed.variant = Variant::Closed;
    OracleResult oo = opt_zigzag(open);
    OracleResult oc = opt_zigzag(closed);
    EXPECT_LE(competitive_ratio(simulate(closed, Algorithm::FarFirst), oc), farfirst_bound(0) + 1e-6);
    EXPECT_LE(competitive_ratio(simulate(open, Algorithm::NearFirst), oo), nearfirst_bound(0) + 1e-6);
    open.predictions.final_label = *oo.ender_set.begin();
    EXPECT_LE(competitive_ratio(simulate(open, Algorithm::Pivot), oo), pivot_bound(0, 0) + 1e-6);
  }
}

TEST(Simulate, Deterministic) {
  Rng rng(5);
  Instance inst = random_instance(rng, Variant::Closed, 8);
  SimResult a = simulate(inst, Algorithm::FarFirst);
  SimResult b = simulate(inst, Algorithm::FarFirst);
  EXPECT_EQ(a.trajectory, b.trajectory);
  EXPECT_EQ(a.serve_time, b.serve_time);
  EXPECT_EQ(a.makespan, b.makespan);
}

TEST(Simulate, TranscriptReplay) {
  Rng rng(6);
  Instance inst = random_instance(rng, Variant::Open, 8);
  SimResult a = simulate(inst, Algorithm::NearFirst);
  Instance replay = transcript_instance(a, inst.predictions, inst.variant);
  SimResult b = simulate(replay, Algorithm::NearFirst);
  EXPECT_EQ(a.trajectory, b.trajectory);
}

TEST(Simulate, ProtocolErrors) {
  SilentSource silent;
  EXPECT_THROW(simulate(silent, Algorithm::WaitCopy, PredictionSet{{{0, 0.0}, {1, 0.0}}, {}}, Variant::Open),
               ProtocolError);
  AcausalSource acausal;
  EXPECT_THROW(simulate(acausal, Algorithm::NearFirst, PredictionSet{{{0, 0.0}, {1, 1.0}}, {}}, Variant::Open),
               ProtocolError);
}

TEST(Simulate, HorizonGuard) {
  Instance inst{Variant::Open, {{0, 0, 0}, {1, 1, 50}}, {}};
  inst.predictions = perfect_predictions(inst.requests);
  EXPECT_THROW(simulate(inst, Algorithm::NearFirst, SimOptions{10.0}), Error);
}

TEST(Ratio, OptZeroIsOne) {
  SimResult s;
  OracleResult o;
  EXPECT_EQ(competitive_ratio(s, o), 1.0);
  s.makespan = 3;
  o.opt_makespan = 2;
  EXPECT_EQ(competitive_ratio(s, o), 1.5);
}

TEST(Bounds, Values) {
  EXPECT_DOUBLE_EQ(farfirst_bound(0), 1.5);
  EXPECT_DOUBLE_EQ(farfirst_bound(5), 3.0);
  EXPECT_DOUBLE_EQ(nearfirst_bound(0), 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(nearfirst_bound(0.7), 3.0);
  EXPECT_DOUBLE_EQ(pivot_bound(0, 0), 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(pivot_bound(1, 1), 3.0);
}
