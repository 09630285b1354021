#include <gtest/gtest.h>

#include "oltsp/core.hpp"

using namespace oltsp;

namespace {

Instance make(Variant v, std::vector<Request> reqs) {
  Instance inst;
  inst.variant = v;
  inst.requests = std::move(reqs);
  inst.predictions = perfect_predictions(inst.requests);
  return inst;
}

}  // namespace

TEST(Normalize, AddsOriginRequest) {
  Instance inst = make(Variant::Open, {{1, 1.0, 5.0}});
  Instance n = normalize_instance(inst);
  ASSERT_EQ(n.size(), 2u);
  EXPECT_EQ(n.requests[0], (Request{0, 0.0, 0.0}));
  EXPECT_EQ(n.predictions.at(0), 0.0);
  EXPECT_EQ(n.request(1), (Request{1, 1.0, 5.0}));
}

TEST(Normalize, Idempotent) {
  Instance inst = make(Variant::Closed, {{0, 0.0, 0.0}, {1, 2.0, 1.0}});
  EXPECT_EQ(normalize_instance(inst), inst);
  Instance twice = normalize_instance(normalize_instance(make(Variant::Open, {{3, -1.0, 0.0}})));
  EXPECT_EQ(twice.size(), 2u);
}

TEST(Normalize, PicksFreshLabelWhenZeroTaken) {
  Instance inst = make(Variant::Open, {{0, -1.0, 0.0}, {4, 2.0, 3.0}});
  Instance n = normalize_instance(inst);
  ASSERT_EQ(n.size(), 3u);
  EXPECT_EQ(n.requests[0].label, 5);
  Extremes e = extremes(n);
  EXPECT_EQ(e.left, -1.0);
  EXPECT_EQ(e.right, 2.0);
}

TEST(Normalize, RejectsDuplicateLabels) {
  Instance inst = make(Variant::Open, {{1, 1.0, 0.0}});
  inst.requests.push_back({1, 2.0, 0.0});
  EXPECT_THROW(normalize_instance(inst), ValidationError);
}

TEST(Validate, RejectsBadInputs) {
  Instance neg = make(Variant::Open, {{1, 1.0, -0.5}});
  EXPECT_THROW(validate(neg), ValidationError);
  Instance missing = make(Variant::Open, {{1, 1.0, 0.0}});
  missing.predictions.positions.clear();
  EXPECT_THROW(validate(missing), ValidationError);
  Instance bad_final = make(Variant::Open, {{1, 1.0, 0.0}});
  bad_final.predictions.final_label = 9;
  EXPECT_THROW(validate(bad_final), ValidationError);
}

TEST(Extremes, FarNearClassification) {
  Extremes a = extremes(make(Variant::Open, {{0, 0, 0}, {1, 2, 0}, {2, -1, 0}}));
  EXPECT_EQ(a.far, 2.0);
  EXPECT_EQ(a.near, -1.0);
  Extremes tie = extremes(make(Variant::Open, {{0, 0, 0}, {1, 1, 0}, {2, -1, 0}}));
  EXPECT_EQ(tie.far, 1.0);
  EXPECT_EQ(tie.near, -1.0);
  Extremes left = extremes(make(Variant::Open, {{0, 0, 0}, {1, -3, 0}, {2, 1, 0}}));
  EXPECT_EQ(left.far, -3.0);
  EXPECT_EQ(left.near, 1.0);
  EXPECT_EQ(left.span(), 4.0);
}

TEST(Trajectory, AppendEnforcesContinuityAndSpeed) {
  Trajectory tr;
  EXPECT_THROW(tr.append({0.0, 1.0, 0.0, 1.0}), ValidationError);
  EXPECT_THROW(tr.append({0.0, 0.0, 1.5, 1.0}), ValidationError);
  tr.move_to(2.0);
  tr.move_to(3.0);
  EXPECT_EQ(tr.segments().size(), 1u);  // equal velocities merge
  tr.wait_until(5.0);
  tr.move_to(1.0);
  EXPECT_DOUBLE_EQ(tr.position_at(1.5), 1.5);
  EXPECT_DOUBLE_EQ(tr.position_at(4.0), 3.0);
  EXPECT_DOUBLE_EQ(tr.position_at(6.0), 2.0);
  EXPECT_DOUBLE_EQ(tr.position_at(100.0), 1.0);
  EXPECT_DOUBLE_EQ(*tr.first_visit(2.0, 0.0), 2.0);
  EXPECT_DOUBLE_EQ(*tr.first_visit(2.0, 2.5), 6.0);
  EXPECT_FALSE(tr.first_visit(-1.0, 0.0));
}

TEST(Evaluate, OpenSingleMove) {
  Trajectory tr;
  tr.move_to(1.0);
  SimResult r = evaluate(tr, make(Variant::Open, {{1, 1.0, 0.0}}));
  EXPECT_DOUBLE_EQ(r.makespan, 1.0);
}

TEST(Evaluate, ClosedRoundTrip) {
  Trajectory tr;
  tr.move_to(1.0);
  tr.move_to(0.0);
  SimResult r = evaluate(tr, make(Variant::Closed, {{1, 1.0, 0.0}, {0, 0.0, 0.0}}));
  EXPECT_DOUBLE_EQ(r.serve_time.at(0), 0.0);
  EXPECT_DOUBLE_EQ(r.t_serve, 1.0);
  EXPECT_DOUBLE_EQ(r.makespan, 2.0);
}

TEST(Evaluate, ReleaseDominates) {
  Trajectory tr;
  tr.move_to(1.0);
  tr.wait_until(5.0);
  SimResult r = evaluate(tr, make(Variant::Open, {{1, 1.0, 5.0}}));
  EXPECT_DOUBLE_EQ(r.makespan, 5.0);
}

TEST(Evaluate, IncompleteTrajectory) {
  Trajectory tr;
  tr.move_to(1.0);
  EXPECT_THROW(evaluate(tr, make(Variant::Open, {{1, 1.0, 3.0}})), IncompleteTrajectoryError);
}

TEST(Evaluate, ClosedEqualsOpenPlusReturn) {
  Trajectory tr;
  tr.move_to(-1.0);
  tr.move_to(2.0);
  std::vector<Request> reqs{{0, 0, 0}, {1, -1, 0}, {2, 2, 0}};
  SimResult open = evaluate(tr, make(Variant::Open, reqs));
  SimResult closed = evaluate(tr, make(Variant::Closed, reqs));
  EXPECT_DOUBLE_EQ(closed.makespan, open.makespan + 2.0);
}

TEST(Evaluate, MonotoneInRequests) {
  Trajectory tr;
  tr.move_to(-1.0);
  tr.move_to(2.0);
  std::vector<Request> reqs{{0, 0, 0}, {1, -1, 0}};
  double before = evaluate(tr, make(Variant::Open, reqs)).makespan;
  reqs.push_back({2, 1.5, 2.0});
  double after = evaluate(tr, make(Variant::Open, reqs)).makespan;
  EXPECT_GE(after, before);
}
