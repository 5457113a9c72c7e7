// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prips/complex.hpp"
#include "prips/features.hpp"
#include "prips/tensor_archive.hpp"

namespace prips {

/// Message-passing layer counts at one filtration level.
struct LevelSchedule {
  int edge_layers = 0;
  int node_layers = 0;
  friend bool operator==(const LevelSchedule&, const LevelSchedule&) = default;
};

/// Encoder configuration. `cutoffs` and `schedule` are indexed from the finest
/// level (smallest cutoff) to the coarsest; the forward pass walks them in
/// reverse.
struct ModelConfig {
  int hidden_dim = 768;
  int heads = 12;
  std::vector<double> cutoffs{2.0, 3.0, 4.0};
  std::vector<LevelSchedule> schedule{{0, 6}, {4, 6}, {4, 6}};
  int max_dim = 2;
  std::string feature_schema{schema::kVersion};

  int head_dim() const { return hidden_dim / heads; }

  /// Throws ValidationError on an inconsistent configuration.
  void validate() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

inline constexpr std::string_view kWeightFormat = "prips-weights/1";

struct TensorSpec {
  std::string name;
  std::vector<std::int64_t> shape;
};

/// Every tensor a configuration requires, in a fixed order.
std::vector<TensorSpec> required_tensors(const ModelConfig& config);

/// Validated parameter set for one encoder.
class ModelWeights {
 public:
  ModelWeights() = default;

  const ModelConfig& config() const { return config_; }
  std::span<const double> tensor(const std::string& name) const;
  const std::vector<std::int64_t>& shape(const std::string& name) const;
  const std::map<std::string, std::vector<double>>& tensors() const { return values_; }
  std::optional<std::uint64_t> seed() const { return seed_; }

  /// Checks names and shapes against the config; throws ValidationError
  /// naming the first missing, extra or mis-shaped tensor.
  static ModelWeights from_archive(const TensorArchive& archive);
  TensorArchive to_archive(DType dtype = DType::F64) const;

  /// Direct construction; validates like from_archive.
  static ModelWeights create(ModelConfig config, std::map<std::string, std::vector<double>> values,
                             std::optional<std::uint64_t> seed = std::nullopt);

  /// Overwrites one tensor in place (same size). Used by derivative probes.
  void set_tensor(const std::string& name, std::vector<double> values);

 private:
  ModelConfig config_;
  std::map<std::string, std::vector<double>> values_;
  std::map<std::string, std::vector<std::int64_t>> shapes_;
  std::optional<std::uint64_t> seed_;
};

ModelWeights load_weights(const std::string& path);
void save_weights(const ModelWeights& weights, const std::string& path, DType dtype = DType::F64);

/// Deterministic uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights from a
/// splitmix64 stream, identical on every platform.
ModelWeights generate_test_weights(const ModelConfig& config, std::uint64_t seed);

/// Result of one forward pass.
struct ForwardResult {
  Matrix atom_embeddings;              // N x D, final vertex states at the finest level
  std::vector<double> polymer_embedding;  // D, mean over atoms
  double prediction = 0.0;
};

enum class Precision { F64, F32 };

/// Runs the encoder over per-level features (finest level first) built on
/// `filtration`. Throws VersionMismatch if the feature schema differs from the
/// weights' schema.
ForwardResult hsmp_forward(std::span<const SimplexFeatureSet> features,
                           const Filtration& filtration, const ModelWeights& weights,
                           std::string_view feature_schema = schema::kVersion,
                           Precision precision = Precision::F64);

}  // namespace prips
