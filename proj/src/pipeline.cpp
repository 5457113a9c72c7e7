// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#include "prips/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "prips/error.hpp"
#include "prips/log.hpp"

namespace prips {
namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string vertex_tuple(const Simplex& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(s[i]);
  }
  return out;
}

Tensor matrix_tensor(const Matrix& m) {
  Tensor t;
  t.dtype = DType::F64;
  t.shape = {static_cast<std::int64_t>(m.rows), static_cast<std::int64_t>(m.cols)};
  t.values = m.data;
  return t;
}

Tensor index_tensor(const SimplicialComplex& cx, int dim) {
  Tensor t;
  t.dtype = DType::I64;
  t.shape = {static_cast<std::int64_t>(cx.count(dim)), dim + 1};
  for (const auto& s : cx.simplices(dim)) {
    for (auto v : s.vertices()) t.ints.push_back(v);
  }
  return t;
}

}  // namespace

DistanceMatrix unit_distance_matrix(const RepeatingUnit& unit, bool periodic) {
  if (unit.frames.empty()) throw ValidationError("unit has no coordinate frames");
  if (periodic) return periodic_distance_matrix(unit.frames);
  return intra_unit_distance_matrix(unit.frames.front());
}

FeaturizedUnit featurize_unit(const RepeatingUnit& unit, const PipelineOptions& options) {
  validate_unit(unit);
  if (options.periodic) {
    try {
      for (const auto& d : validate_frames(unit, enumerate_cyclic_permutations(unit))) {
        warn(unit.meta.name.empty() ? d.message : unit.meta.name + ": " + d.message);
      }
    } catch (const ValidationError& e) {
      warn(std::string("frame check skipped: ") + e.what());
    }
  }
  FeaturizedUnit fu;
  fu.matrix = unit_distance_matrix(unit, options.periodic);
  fu.filtration = build_filtration(fu.matrix, options.cutoffs, options.max_dim);
  for (const auto& level : fu.filtration.levels()) {
    fu.curvature.push_back(level_curvature(fu.matrix, level.complex, options.profile));
  }
  fu.features = assemble_features(unit, fu.filtration, fu.curvature);
  return fu;
}

PipelineOptions options_for(const ModelConfig& config, bool periodic) {
  PipelineOptions opts;
  opts.cutoffs = config.cutoffs;
  opts.max_dim = config.max_dim;
  opts.periodic = periodic;
  return opts;
}

ForwardResult predict_unit(const RepeatingUnit& unit, const ModelWeights& weights, bool periodic,
                           Precision precision) {
  const FeaturizedUnit fu = featurize_unit(unit, options_for(weights.config(), periodic));
  return hsmp_forward(fu.features, fu.filtration, weights, schema::kVersion, precision);
}

std::size_t worker_count() {
  if (const char* env = std::getenv("PERIODIC_RIPS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<BatchResult> predict_batch(std::span<const RepeatingUnit> units,
                                       const ModelWeights& weights, std::size_t threads,
                                       bool periodic, Precision precision) {
  std::vector<BatchResult> out(units.size());
  parallel_for(units.size(), threads, [&](std::size_t i) {
    try {
      out[i].value = predict_unit(units[i], weights, periodic, precision).prediction;
    } catch (const std::exception& e) {
      out[i].error = e.what();
    }
  });
  return out;
}

TensorArchive feature_archive(const RepeatingUnit& unit, const FeaturizedUnit& fu, bool periodic) {
  TensorArchive a;
  a.set_meta("format", "prips-feature-archive/1");
  a.set_meta("schema", std::string(schema::kVersion));
  if (!unit.meta.name.empty()) a.set_meta("name", unit.meta.name);
  a.set_meta("mode", periodic ? "periodic" : "intra_unit");
  a.set_meta("atoms", std::to_string(unit.size()));
  a.set_meta("frames", std::to_string(periodic ? unit.frames.size() : 1));
  std::string cutoffs;
  for (std::size_t i = 0; i < fu.filtration.size(); ++i) {
    cutoffs += (i ? "," : "") + format_double(fu.filtration.level(i).epsilon);
  }
  a.set_meta("cutoffs", cutoffs);
  for (std::size_t i = 0; i < fu.features.size(); ++i) {
    const std::string base = "level" + std::to_string(i);
    const auto& f = fu.features[i];
    const auto& cx = fu.filtration.level(i).complex;
    a.put(base + ".vertex", matrix_tensor(f.vertex));
    a.put(base + ".edge", matrix_tensor(f.edge));
    a.put(base + ".triangle", matrix_tensor(f.triangle));
    a.put(base + ".edge_index", index_tensor(cx, 1));
    a.put(base + ".triangle_index", index_tensor(cx, 2));
  }
  return a;
}

void write_features_csv(std::ostream& out, const FeaturizedUnit& fu) {
  out << "# schema=" << schema::kVersion << '\n';
  out << "epsilon,dim,vertices,features\n";
  for (std::size_t l = 0; l < fu.features.size(); ++l) {
    const auto& cx = fu.filtration.level(l).complex;
    const Matrix* mats[3] = {&fu.features[l].vertex, &fu.features[l].edge,
                             &fu.features[l].triangle};
    for (int dim = 0; dim < 3; ++dim) {
      const auto simplices = cx.simplices(dim);
      for (std::size_t i = 0; i < simplices.size(); ++i) {
        out << format_double(cx.epsilon()) << ',' << dim << ',' << vertex_tuple(simplices[i])
            << ',';
        const auto row = mats[dim]->row(i);
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? " " : "") << format_double(row[c]);
        out << '\n';
      }
    }
  }
}

void write_curvature_csv(std::ostream& out, const FeaturizedUnit& fu) {
  out << "dim,vertex_tuple,epsilon,raw,normalized\n";
  for (std::size_t l = 0; l < fu.curvature.size(); ++l) {
    const auto& cx = fu.filtration.level(l).complex;
    const auto& lc = fu.curvature[l];
    for (std::size_t dim = 0; dim < lc.by_dim.size(); ++dim) {
      const auto simplices = cx.simplices(static_cast<int>(dim));
      for (std::size_t i = 0; i < simplices.size(); ++i) {
        const auto& p = lc.by_dim[dim][i];
        for (std::size_t k = 0; k < p.raw.size(); ++k) {
          out << dim << ',' << vertex_tuple(simplices[i]) << ','
              << format_double(p.base_epsilon + static_cast<double>(k) * p.delta) << ','
              << format_double(p.raw[k]) << ',' << format_double(p.normalized[k]) << '\n';
        }
      }
    }
  }
}

}  // namespace prips
