// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#include "prips/distance.hpp"

#include <cmath>
#include <cstring>
#include <ostream>
#include <string>

#include "prips/endian.hpp"
#include "prips/error.hpp"
#include "prips/log.hpp"

namespace prips {
namespace {

void check_frame(const CoordinateFrame& frame, std::size_t n) {
  if (frame.coords.size() != n) {
    throw ValidationError("frame size mismatch: " + std::to_string(frame.coords.size()) +
                          " rows, expected " + std::to_string(n));
  }
  for (std::size_t a = 0; a < n; ++a) {
    const auto& p = frame.coords[a];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw ValidationError("non-finite coordinate at atom " + std::to_string(a));
    }
  }
}

void warn_on_coincident(const DistanceMatrix& d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      if (d(i, j) == 0.0) {
        warn("atoms " + std::to_string(i) + " and " + std::to_string(j) +
             " coincide (zero distance)");
      }
    }
  }
}

}  // namespace

double euclidean(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

DistanceMatrix periodic_distance_matrix(std::span<const CoordinateFrame> frames) {
  if (frames.empty()) throw ValidationError("periodic distance matrix needs at least one frame");
  const std::size_t n = frames.front().coords.size();
  for (const auto& f : frames) check_frame(f, n);

  DistanceMatrix d(n, MetricMode::Periodic);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double best = euclidean(frames[0].coords[i], frames[0].coords[j]);
      for (std::size_t k = 1; k < frames.size(); ++k) {
        best = std::min(best, euclidean(frames[k].coords[i], frames[k].coords[j]));
      }
      d.set(i, j, best);
    }
  }
  warn_on_coincident(d);
  return d;
}

DistanceMatrix intra_unit_distance_matrix(const CoordinateFrame& frame) {
  const std::size_t n = frame.coords.size();
  check_frame(frame, n);
  DistanceMatrix d(n, MetricMode::IntraUnit);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, euclidean(frame.coords[i], frame.coords[j]));
  }
  warn_on_coincident(d);
  return d;
}

void write_matrix_csv(std::ostream& out, const DistanceMatrix& d) {
  char buf[64];
  out << "atom";
  for (std::size_t j = 0; j < d.size(); ++j) out << ',' << j;
  out << '\n';
  for (std::size_t i = 0; i < d.size(); ++i) {
    out << i;
    for (std::size_t j = 0; j < d.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", d(i, j));
      out << ',' << buf;
    }
    out << '\n';
  }
}

void write_matrix_binary(std::ostream& out, const DistanceMatrix& d) {
  out.write("PRDM", 4);
  detail::put_le<std::uint32_t>(out, 1);
  detail::put_le<std::uint64_t>(out, d.size());
  for (double v : d.values()) detail::put_le<double>(out, v);
}

DistanceMatrix read_matrix_binary(std::istream& in) {
  char magic[4];
  std::uint32_t version = 0;
  std::uint64_t n = 0;
  if (!in.read(magic, 4) || std::memcmp(magic, "PRDM", 4) != 0) {
    throw ParseError("not a distance-matrix file");
  }
  if (!detail::get_le(in, version) || !detail::get_le(in, n)) throw ParseError("truncated header");
  if (version != 1) throw VersionMismatch("unsupported matrix version " + std::to_string(version));
  DistanceMatrix d(n, MetricMode::Periodic);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double v = 0;
      if (!detail::get_le(in, v)) throw ParseError("truncated matrix body");
      if (j >= i) d.set(i, j, v);
    }
  }
  return d;
}

}  // namespace prips
