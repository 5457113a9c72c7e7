// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prips/complex.hpp"
#include "prips/curvature.hpp"
#include "prips/distance.hpp"
#include "prips/features.hpp"
#include "prips/hsmp.hpp"
#include "prips/polymer.hpp"
#include "prips/tensor_archive.hpp"

namespace prips {

struct PipelineOptions {
  std::vector<double> cutoffs{2.0, 3.0, 4.0};
  int max_dim = 2;
  bool periodic = true;  // false: intra-unit matrix of frame 0
  ProfileOptions profile;
};

struct FeaturizedUnit {
  DistanceMatrix matrix;
  Filtration filtration;
  std::vector<LevelCurvature> curvature;
  std::vector<SimplexFeatureSet> features;
};

DistanceMatrix unit_distance_matrix(const RepeatingUnit& unit, bool periodic);

FeaturizedUnit featurize_unit(const RepeatingUnit& unit, const PipelineOptions& options = {});

/// Options matching a model: cutoffs and max_dim from its config.
PipelineOptions options_for(const ModelConfig& config, bool periodic = true);

ForwardResult predict_unit(const RepeatingUnit& unit, const ModelWeights& weights,
                           bool periodic = true, Precision precision = Precision::F64);

struct BatchResult {
  std::optional<double> value;
  std::string error;  // set when value is empty
};

/// Order-preserving batch prediction. A unit that fails carries its error
/// message; the rest of the batch proceeds.
std::vector<BatchResult> predict_batch(std::span<const RepeatingUnit> units,
                                       const ModelWeights& weights, std::size_t threads,
                                       bool periodic = true,
                                       Precision precision = Precision::F64);

/// Worker count from PERIODIC_RIPS_THREADS, else the hardware concurrency.
std::size_t worker_count();

/// Runs fn(i) for i in [0, n) on up to `threads` workers. The first exception
/// thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

/// Named-tensor container of per-level features plus simplex index arrays.
TensorArchive feature_archive(const RepeatingUnit& unit, const FeaturizedUnit& fu, bool periodic);

/// One row per simplex: epsilon, dim, vertices, space-separated features.
void write_features_csv(std::ostream& out, const FeaturizedUnit& fu);

/// Columns dim, vertex_tuple, epsilon, raw, normalized; one row per simplex,
/// level and sub-cutoff.
void write_curvature_csv(std::ostream& out, const FeaturizedUnit& fu);

}  // namespace prips
