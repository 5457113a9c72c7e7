// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "prips/polymer.hpp"

namespace prips {

enum class MetricMode { Periodic, IntraUnit };

/// Dense symmetric N x N matrix of interatomic distances in angstrom.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::size_t n, MetricMode mode) : n_(n), mode_(mode), values_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  MetricMode mode() const { return mode_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  std::span<const double> values() const { return values_; }

  /// Sets (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, double d) {
    values_[i * n_ + j] = d;
    values_[j * n_ + i] = d;
  }

 private:
  std::size_t n_ = 0;
  MetricMode mode_ = MetricMode::Periodic;
  std::vector<double> values_;
};

/// Euclidean distance, evaluated as sqrt(dx*dx + dy*dy + dz*dz).
double euclidean(const Vec3& a, const Vec3& b);

/// Entry (a,b) is the minimum over frames of the distance between atoms a and
/// b in that frame. Throws ValidationError on an empty list or size mismatch.
DistanceMatrix periodic_distance_matrix(std::span<const CoordinateFrame> frames);

/// Plain pairwise matrix of a single frame.
DistanceMatrix intra_unit_distance_matrix(const CoordinateFrame& frame);

// Dense text export: header row of atom indices, then one row per atom.
void write_matrix_csv(std::ostream& out, const DistanceMatrix& d);

// Binary export: 16-byte header (magic "PRDM", u32 version, u64 N) followed by
// row-major little-endian float64 values.
void write_matrix_binary(std::ostream& out, const DistanceMatrix& d);
DistanceMatrix read_matrix_binary(std::istream& in);

}  // namespace prips
