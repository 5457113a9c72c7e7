// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "prips/error.hpp"
#include "prips/log.hpp"
#include "prips/pipeline.hpp"
#include "support/units.hpp"

namespace prips {
namespace {

using testing::Rng;

ModelConfig narrow_config() {
  ModelConfig c;
  c.hidden_dim = 24;
  c.heads = 4;
  c.schedule = {{0, 2}, {1, 2}, {1, 2}};
  return c;
}

std::vector<RepeatingUnit> random_units(Rng& rng, int count) {
  const std::vector<std::string> pool{"C", "C", "O", "N", "S"};
  std::uniform_int_distribution<int> len(2, 7), pick(0, 4);
  std::vector<RepeatingUnit> out;
  for (int i = 0; i < count; ++i) {
    std::vector<std::string> backbone(len(rng));
    for (auto& e : backbone) e = pool[pick(rng)];
    auto u = testing::chain_unit(backbone, 1, rng());
    testing::line_frames(u, 1, 1.2 + 0.05 * i);
    out.push_back(std::move(u));
  }
  return out;
}

TEST(PredictBatch, SingleUnitEqualsPredict) {
  Rng rng(71);
  const auto w = generate_test_weights(narrow_config(), 1);
  const auto units = random_units(rng, 1);
  const auto batch = predict_batch(units, w, 2);
  ASSERT_EQ(batch.size(), 1u);
  ASSERT_TRUE(batch[0].value.has_value());
  EXPECT_EQ(*batch[0].value, predict_unit(units[0], w).prediction);
}

TEST(PredictBatch, ParallelEqualsSerial) {
  Rng rng(72);
  const auto w = generate_test_weights(narrow_config(), 2);
  const auto units = random_units(rng, 10);
  ScopedWarningSink quiet([](std::string_view) {});
  const auto serial = predict_batch(units, w, 1);
  const auto parallel = predict_batch(units, w, 4);
  ASSERT_EQ(serial.size(), 10u);
  for (std::size_t i = 0; i < 10; ++i) {
    ASSERT_TRUE(serial[i].value.has_value()) << serial[i].error;
    ASSERT_TRUE(parallel[i].value.has_value());
    EXPECT_EQ(*serial[i].value, *parallel[i].value);
    EXPECT_EQ(*serial[i].value, predict_unit(units[i], w).prediction);
  }
}

TEST(PredictBatch, MalformedUnitCarriesErrorMarker) {
  Rng rng(73);
  const auto w = generate_test_weights(narrow_config(), 3);
  auto units = random_units(rng, 4);
  units[2].bonds.pop_back();  // disconnects the trailing anchor
  ScopedWarningSink quiet([](std::string_view) {});
  const auto r = predict_batch(units, w, 3);
  ASSERT_EQ(r.size(), 4u);
  EXPECT_FALSE(r[2].value.has_value());
  EXPECT_FALSE(r[2].error.empty());
  for (std::size_t i : {0u, 1u, 3u}) {
    ASSERT_TRUE(r[i].value.has_value());
    EXPECT_EQ(*r[i].value, predict_unit(units[i], w).prediction);
  }
}

TEST(ParallelFor, VisitsEveryIndexAndRethrows) {
  std::vector<int> hits(100, 0);
  parallel_for(100, 4, [&](std::size_t i) { ++hits[i]; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t i) {
                              if (i == 7) throw ValidationError("boom");
                            }),
               ValidationError);
  parallel_for(0, 4, [](std::size_t) { FAIL(); });
}

TEST(WorkerCount, EnvironmentOverride) {
  ::setenv("PERIODIC_RIPS_THREADS", "3", 1);
  EXPECT_EQ(worker_count(), 3u);
  ::unsetenv("PERIODIC_RIPS_THREADS");
  EXPECT_GE(worker_count(), 1u);
}

TEST(Featurize, NonPeriodicUsesFirstFrame) {
  auto u = testing::chain_unit({"C", "O", "C"}, 3, 4);
  const auto m = unit_distance_matrix(u, false);
  const auto q = intra_unit_distance_matrix(u.frames[0]);
  EXPECT_EQ(m.mode(), MetricMode::IntraUnit);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < u.size(); ++j) EXPECT_EQ(m(i, j), q(i, j));
  }
  EXPECT_EQ(unit_distance_matrix(u, true).mode(), MetricMode::Periodic);
}

TEST(Featurize, ExportsDescribeEveryLevel) {
  auto u = testing::chain_unit({"C", "O", "C"}, 1, 4);
  testing::line_frames(u, 1, 1.5);
  ScopedWarningSink quiet([](std::string_view) {});
  const auto fu = featurize_unit(u);
  const auto archive = feature_archive(u, fu, true);
  EXPECT_EQ(*archive.meta("format"), "prips-feature-archive/1");
  EXPECT_EQ(*archive.meta("schema"), "prips-features/1");
  for (int l = 0; l < 3; ++l) {
    const std::string p = "level" + std::to_string(l);
    const Tensor* v = archive.find(p + ".vertex");
    ASSERT_NE(v, nullptr);
    EXPECT_EQ(v->shape, (std::vector<std::int64_t>{5, 75}));
    const Tensor* ei = archive.find(p + ".edge_index");
    ASSERT_NE(ei, nullptr);
    EXPECT_EQ(ei->dtype, DType::I64);
    EXPECT_EQ(ei->shape[0], static_cast<std::int64_t>(fu.filtration.level(l).complex.count(1)));
  }
  std::ostringstream csv, curv;
  write_features_csv(csv, fu);
  write_curvature_csv(curv, fu);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "# schema=prips-features/1");
  EXPECT_EQ(curv.str().substr(0, curv.str().find('\n')), "dim,vertex_tuple,epsilon,raw,normalized");
}

TEST(Golden, BundledPolymerPredictions) {
  const auto w = generate_test_weights(ModelConfig{}, 2026);
  std::ifstream in(std::string(PRIPS_DATA_DIR) + "/golden/polymers_seed2026.csv");
  ASSERT_TRUE(in) << "missing golden file";
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    ASSERT_GE(cells.size(), 4u);
    const auto& name = cells[0];
    const double expected = std::strtod(cells[3].c_str(), nullptr);
    const auto u = load_repeating_unit(std::string(PRIPS_DATA_DIR) + "/polymers/" + name + ".json");
    EXPECT_EQ(predict_unit(u, w).prediction, expected) << name;
    ++rows;
  }
  EXPECT_EQ(rows, 3);
}

}  // namespace
}  // namespace prips
