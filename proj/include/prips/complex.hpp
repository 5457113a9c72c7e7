// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "prips/distance.hpp"

namespace prips {

inline constexpr int kMaxSimplexDim = 3;

/// A simplex as a strictly increasing vertex tuple (at most 4 vertices).
class Simplex {
 public:
  Simplex() = default;
  Simplex(std::initializer_list<std::int32_t> vertices);
  explicit Simplex(std::span<const std::int32_t> vertices);

  int dim() const { return static_cast<int>(size_) - 1; }
  std::size_t size() const { return size_; }
  std::int32_t operator[](std::size_t i) const { return v_[i]; }
  std::span<const std::int32_t> vertices() const { return {v_.data(), size_}; }

  /// The face obtained by dropping vertex position `skip`.
  Simplex without(std::size_t skip) const;

  bool contains(std::int32_t vertex) const;

  friend bool operator==(const Simplex& a, const Simplex& b) {
    return a.size_ == b.size_ && a.v_ == b.v_;
  }
  friend bool operator<(const Simplex& a, const Simplex& b);

 private:
  std::array<std::int32_t, kMaxSimplexDim + 1> v_{};
  std::size_t size_ = 0;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

/// Reference to a simplex by (dimension, ordinal in canonical order).
struct SimplexRef {
  int dim = 0;
  std::int32_t index = 0;
  friend bool operator==(const SimplexRef&, const SimplexRef&) = default;
};

struct UpperNeighbor {
  std::int32_t neighbor;  // same dimension
  std::int32_t coface;    // one dimension up
  friend bool operator==(const UpperNeighbor&, const UpperNeighbor&) = default;
};

/// Vietoris-Rips complex at a fixed cutoff. Simplices are stored per dimension
/// in lexicographic order of their vertex tuples; all indices refer to that
/// order. Immutable after construction.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  double epsilon() const { return epsilon_; }
  int max_dim() const { return max_dim_; }
  std::size_t vertex_count() const { return levels_.empty() ? 0 : levels_[0].simplices.size(); }

  /// Highest dimension with at least one simplex.
  int dimension() const;
  std::size_t count(int dim) const;
  std::span<const Simplex> simplices(int dim) const;
  const Simplex& simplex(int dim, std::int32_t index) const {
    return levels_[dim].simplices[index];
  }

  std::optional<std::int32_t> find(const Simplex& s) const;
  bool contains(const Simplex& s) const { return find(s).has_value(); }

  /// Faces one dimension down (empty for vertices), in canonical order.
  std::span<const std::int32_t> faces(int dim, std::int32_t index) const;
  /// Cofaces one dimension up, in canonical order.
  std::span<const std::int32_t> cofaces(int dim, std::int32_t index) const;

  /// Every same-dimension simplex sharing a coface, one entry per coface,
  /// ordered by (coface, neighbor).
  std::vector<UpperNeighbor> upper_adjacent(int dim, std::int32_t index) const;
  std::vector<UpperNeighbor> upper_adjacent(const Simplex& s) const;

  /// Same-dimension simplices sharing a coface or a face, but not both.
  std::vector<std::int32_t> parallel(int dim, std::int32_t index) const;
  std::vector<Simplex> parallel(const Simplex& s) const;

  friend SimplicialComplex build_vr_complex(const DistanceMatrix& d, double epsilon, int max_dim);

 private:
  struct Level {
    std::vector<Simplex> simplices;
    std::unordered_map<Simplex, std::int32_t, SimplexHash> index;
    std::vector<std::int32_t> face_offsets, face_ids;
    std::vector<std::int32_t> coface_offsets, coface_ids;
  };

  std::int32_t require(const Simplex& s) const;

  double epsilon_ = 0.0;
  int max_dim_ = 0;
  std::vector<Level> levels_;
};

/// All simplices of dimension <= max_dim whose pairwise distances are <= epsilon
/// (exact comparison). Throws ValidationError unless epsilon > 0 and
/// 0 <= max_dim <= 3.
SimplicialComplex build_vr_complex(const DistanceMatrix& d, double epsilon, int max_dim = 2);

struct FiltrationLevel {
  double epsilon;
  SimplicialComplex complex;
};

/// Nested complexes at strictly increasing cutoffs.
class Filtration {
 public:
  std::span<const FiltrationLevel> levels() const { return levels_; }
  const FiltrationLevel& level(std::size_t i) const { return levels_[i]; }
  std::size_t size() const { return levels_.size(); }

  friend Filtration build_filtration(const DistanceMatrix& d, std::span<const double> cutoffs,
                                     int max_dim);

 private:
  std::vector<FiltrationLevel> levels_;
};

Filtration build_filtration(const DistanceMatrix& d, std::span<const double> cutoffs,
                            int max_dim = 2);

/// "# dim=k count=c" header per dimension, then one simplex per line.
void write_complex_text(std::ostream& out, const SimplicialComplex& complex);

}  // namespace prips
