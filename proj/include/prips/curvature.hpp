// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <map>
#include <vector>

#include "prips/complex.hpp"

namespace prips {

/// Positive simplex weights: one constant per dimension, with optional
/// per-simplex overrides keyed by vertex tuple. Defaults to 1 everywhere.
class WeightAssignment {
 public:
  WeightAssignment() = default;

  void set_dimension_weight(int dim, double w);
  void set_weight(const Simplex& s, double w);
  double weight(const Simplex& s) const;

 private:
  std::array<double, kMaxSimplexDim + 1> per_dim_{1.0, 1.0, 1.0, 1.0};
  std::map<Simplex, double> overrides_;
};

/// #Face + #Coface - #Parallel. Vertices have no faces.
int forman_combinatorial(const SimplicialComplex& complex, int dim, std::int32_t index);
int forman_combinatorial(const SimplicialComplex& complex, const Simplex& s);

/// Weighted Forman-Ricci curvature of an edge.
double forman_edge_weighted(const SimplicialComplex& complex, const WeightAssignment& weights,
                            std::int32_t edge);
double forman_edge_weighted(const SimplicialComplex& complex, const WeightAssignment& weights,
                            const Simplex& edge);

inline constexpr double kDefaultTemperature = 10.0;
inline constexpr double kProfileDelta = 0.25;
inline constexpr int kProfileSteps = 5;

/// 2 / (1 + exp(-x/T)) - 1, i.e. tanh(x / 2T), kept strictly inside (-1, 1).
double normalize_curvature(double x, double temperature = kDefaultTemperature);

struct ProfileOptions {
  double delta = kProfileDelta;
  int steps = kProfileSteps;
  double temperature = kDefaultTemperature;
  const WeightAssignment* edge_weights = nullptr;  // weighted formula for edges when set
};

struct CurvatureProfile {
  double base_epsilon = 0.0;
  double delta = kProfileDelta;
  std::vector<double> raw;         // curvature at base + k*delta
  std::vector<double> normalized;  // normalize_curvature(raw)
};

/// Cutoffs base + k*delta for k = 0..steps-1.
std::vector<double> profile_cutoffs(double base_epsilon, const ProfileOptions& opts = {});

/// Curvature of one simplex at each sub-cutoff, each from a freshly built
/// complex. Throws ValidationError if the simplex is absent at the base cutoff.
CurvatureProfile curvature_profile(const DistanceMatrix& d, const Simplex& sigma,
                                   double base_epsilon, const ProfileOptions& opts = {});

/// Profiles of every simplex of `base` (dimension <= base.max_dim()), indexed
/// [dim][ordinal in base]. Output-identical to calling curvature_profile per simplex.
struct LevelCurvature {
  double base_epsilon = 0.0;
  std::vector<std::vector<CurvatureProfile>> by_dim;
};
LevelCurvature level_curvature(const DistanceMatrix& d, const SimplicialComplex& base,
                               const ProfileOptions& opts = {});

}  // namespace prips
