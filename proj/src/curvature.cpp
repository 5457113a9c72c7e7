// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#include "prips/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "prips/error.hpp"

namespace prips {

void WeightAssignment::set_dimension_weight(int dim, double w) {
  if (dim < 0 || dim > kMaxSimplexDim) throw ValidationError("weight dimension out of range");
  if (!(w > 0.0)) throw ValidationError("weights must be positive");
  per_dim_[dim] = w;
}

void WeightAssignment::set_weight(const Simplex& s, double w) {
  if (!(w > 0.0)) throw ValidationError("weights must be positive");
  overrides_[s] = w;
}

double WeightAssignment::weight(const Simplex& s) const {
  auto it = overrides_.find(s);
  return it != overrides_.end() ? it->second : per_dim_[s.dim()];
}

int forman_combinatorial(const SimplicialComplex& complex, int dim, std::int32_t index) {
  const auto faces = static_cast<int>(complex.faces(dim, index).size());
  const auto cofaces = static_cast<int>(complex.cofaces(dim, index).size());
  const auto parallel = static_cast<int>(complex.parallel(dim, index).size());
  return faces + cofaces - parallel;
}

int forman_combinatorial(const SimplicialComplex& complex, const Simplex& s) {
  auto idx = complex.find(s);
  if (!idx) throw ValidationError("simplex is not in the complex");
  return forman_combinatorial(complex, s.dim(), *idx);
}

double forman_edge_weighted(const SimplicialComplex& complex, const WeightAssignment& weights,
                            std::int32_t edge) {
  const Simplex& e = complex.simplex(1, edge);
  const double we = weights.weight(e);

  double coface_term = 0.0;
  for (std::int32_t f : complex.cofaces(1, edge)) coface_term += we / weights.weight(complex.simplex(2, f));
  double face_term = 0.0;
  for (std::int32_t v : complex.faces(1, edge)) face_term += weights.weight(complex.simplex(0, v)) / we;

  double penalty = 0.0;
  for (std::int32_t other : complex.parallel(1, edge)) {
    const Simplex& eh = complex.simplex(1, other);
    const double root = std::sqrt(we * weights.weight(eh));
    double via_triangles = 0.0;
    for (std::int32_t f : complex.cofaces(1, edge)) {
      const Simplex& tri = complex.simplex(2, f);
      if (tri.contains(eh[0]) && tri.contains(eh[1])) via_triangles += root / weights.weight(tri);
    }
    double via_vertices = 0.0;
    for (std::int32_t v : complex.faces(1, edge)) {
      const Simplex& vs = complex.simplex(0, v);
      if (eh.contains(vs[0])) via_vertices += weights.weight(vs) / root;
    }
    penalty += std::abs(via_triangles - via_vertices);
  }
  return we * ((coface_term + face_term) - penalty);
}

double forman_edge_weighted(const SimplicialComplex& complex, const WeightAssignment& weights,
                            const Simplex& edge) {
  if (edge.dim() != 1) throw ValidationError("weighted Forman curvature is defined on edges");
  auto idx = complex.find(edge);
  if (!idx) throw ValidationError("edge is not in the complex");
  return forman_edge_weighted(complex, weights, *idx);
}

double normalize_curvature(double x, double temperature) {
  const double y = std::tanh(x / (2.0 * temperature));
  const double bound = std::nextafter(1.0, 0.0);
  return std::clamp(y, -bound, bound);
}

std::vector<double> profile_cutoffs(double base_epsilon, const ProfileOptions& opts) {
  std::vector<double> out;
  for (int k = 0; k < opts.steps; ++k) out.push_back(base_epsilon + k * opts.delta);
  return out;
}

namespace {

double curvature_at(const SimplicialComplex& cx, int dim, std::int32_t idx,
                    const ProfileOptions& opts) {
  if (dim == 1 && opts.edge_weights) return forman_edge_weighted(cx, *opts.edge_weights, idx);
  return forman_combinatorial(cx, dim, idx);
}

// Cofaces matter for the curvature of the top dimension, so sub-cutoff
// complexes are built one dimension higher.
int sweep_dim(int dim) { return std::min(dim + 1, kMaxSimplexDim); }

}  // namespace

CurvatureProfile curvature_profile(const DistanceMatrix& d, const Simplex& sigma,
                                   double base_epsilon, const ProfileOptions& opts) {
  CurvatureProfile prof;
  prof.base_epsilon = base_epsilon;
  prof.delta = opts.delta;
  const auto cutoffs = profile_cutoffs(base_epsilon, opts);
  for (std::size_t k = 0; k < cutoffs.size(); ++k) {
    const auto cx = build_vr_complex(d, cutoffs[k], sweep_dim(sigma.dim()));
    auto idx = cx.find(sigma);
    if (!idx) {
      throw ValidationError("simplex absent from the complex at cutoff " +
                            std::to_string(cutoffs[k]));
    }
    const double raw = curvature_at(cx, sigma.dim(), *idx, opts);
    prof.raw.push_back(raw);
    prof.normalized.push_back(normalize_curvature(raw, opts.temperature));
  }
  return prof;
}

LevelCurvature level_curvature(const DistanceMatrix& d, const SimplicialComplex& base,
                               const ProfileOptions& opts) {
  LevelCurvature out;
  out.base_epsilon = base.epsilon();
  const int top = base.max_dim();
  out.by_dim.resize(top + 1);
  for (int dim = 0; dim <= top; ++dim) {
    out.by_dim[dim].resize(base.count(dim));
    for (auto& p : out.by_dim[dim]) {
      p.base_epsilon = base.epsilon();
      p.delta = opts.delta;
    }
  }
  for (double eps : profile_cutoffs(base.epsilon(), opts)) {
    const auto cx = build_vr_complex(d, eps, sweep_dim(top));
    for (int dim = 0; dim <= top; ++dim) {
      const auto simplices = base.simplices(dim);
      for (std::size_t i = 0; i < simplices.size(); ++i) {
        auto idx = cx.find(simplices[i]);
        if (!idx) throw ValidationError("filtration is not nested at cutoff " + std::to_string(eps));
        const double raw = curvature_at(cx, dim, *idx, opts);
        out.by_dim[dim][i].raw.push_back(raw);
        out.by_dim[dim][i].normalized.push_back(normalize_curvature(raw, opts.temperature));
      }
    }
  }
  return out;
}

}  // namespace prips
