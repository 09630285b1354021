#include <gtest/gtest.h>

#include "oltsp/engine.hpp"
#include "oltsp/io.hpp"

using namespace oltsp;

TEST(Json, InstanceRoundTrip) {
  Instance inst{Variant::Open, {{0, 0, 0}, {1, -1.5, 2}, {2, 3, 0.25}}, {}};
  inst.predictions.positions = {{0, 0}, {1, -1}, {2, 2.5}};
  inst.predictions.final_label = 2;
  EXPECT_EQ(instance_from_json(to_json(inst)), inst);
}

TEST(Json, MissingPredictionsArePerfect) {
  json j = json::parse(R"({"variant":"closed","requests":[{"label":1,"pos":2,"rel":1}]})");
  Instance inst = instance_from_json(j);
  EXPECT_EQ(inst.predictions.at(1), 2.0);
  EXPECT_EQ(inst.variant, Variant::Closed);
}

TEST(Json, Rejections) {
  EXPECT_THROW(instance_from_json(json::parse(R"({"variant":"loop","requests":[]})")), ValidationError);
  EXPECT_THROW(instance_from_json(json::parse(R"({"requests":[{"label":1}]})")), ValidationError);
  EXPECT_THROW(instance_from_json(json::parse(
                   R"({"requests":[{"label":1,"pos":1}],"predictions":[{"label":1,"pos":1},{"label":1,"pos":2}]})")),
               ValidationError);
  EXPECT_THROW(instance_from_json(json::parse(R"({"requests":[{"label":1,"pos":1,"rel":-2}]})")), ValidationError);
}

TEST(Json, SimResultHasTrajectory) {
  Instance inst{Variant::Closed, {{0, 0, 0}, {1, 1, 0}}, {}};
  inst.predictions = perfect_predictions(inst.requests);
  json j = to_json(simulate(inst, Algorithm::FarFirst));
  EXPECT_EQ(j["makespan"], 2.0);
  EXPECT_EQ(j["trajectory"].size(), 2u);
  EXPECT_EQ(j["serve_time"]["1"], 1.0);
}

TEST(Json, OracleResult) {
  Instance inst{Variant::Open, {{0, 0, 0}, {1, -1, 0}, {2, 1, 0}}, {}};
  inst.predictions = perfect_predictions(inst.requests);
  json j = to_json(opt_dp(inst));
  EXPECT_EQ(j["opt"], 3.0);
  EXPECT_EQ(j["enders"], json::array({1, 2}));
}
