// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#include "prips/hsmp.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "prips/error.hpp"
#include "prips/hsmp_engine.hpp"

namespace prips {
namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(part);
  return out;
}

const std::string& require_meta(const TensorArchive& archive, const std::string& key) {
  const std::string* v = archive.meta(key);
  if (!v) throw ValidationError("weight manifest is missing '" + key + "'");
  return *v;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad integer for " + what + ": '" + s + "'");
  }
}

ModelConfig config_from_archive(const TensorArchive& archive) {
  const std::string& format = require_meta(archive, "format");
  if (format != kWeightFormat) {
    throw VersionMismatch("unsupported weight format '" + format + "'");
  }
  ModelConfig cfg;
  cfg.feature_schema = require_meta(archive, "feature_schema");
  cfg.hidden_dim = parse_int(require_meta(archive, "hidden_dim"), "hidden_dim");
  cfg.heads = parse_int(require_meta(archive, "heads"), "heads");
  cfg.max_dim = parse_int(require_meta(archive, "max_dim"), "max_dim");
  cfg.cutoffs.clear();
  for (const auto& c : split(require_meta(archive, "cutoffs"), ',')) {
    try {
      cfg.cutoffs.push_back(std::stod(c));
    } catch (const std::exception&) {
      throw ParseError("bad cutoff '" + c + "'");
    }
  }
  cfg.schedule.clear();
  for (const auto& s : split(require_meta(archive, "schedule"), ',')) {
    auto parts = split(s, ':');
    if (parts.size() != 2) throw ParseError("bad schedule entry '" + s + "'");
    cfg.schedule.push_back({parse_int(parts[0], "schedule"), parse_int(parts[1], "schedule")});
  }
  cfg.validate();
  return cfg;
}

// splitmix64: portable, seedable, and independent of the standard library's
// distribution implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Uniform in [-1, 1).
  double symmetric() { return static_cast<double>(next() >> 11) * 0x1.0p-52 - 1.0; }

 private:
  std::uint64_t state_;
};

}  // namespace

void ModelConfig::validate() const {
  if (hidden_dim <= 0 || heads <= 0) throw ValidationError("hidden_dim and heads must be positive");
  if (hidden_dim % heads != 0) {
    throw ValidationError("hidden_dim " + std::to_string(hidden_dim) +
                          " is not divisible by heads " + std::to_string(heads));
  }
  if (cutoffs.empty()) throw ValidationError("model needs at least one cutoff");
  for (std::size_t i = 1; i < cutoffs.size(); ++i) {
    if (!(cutoffs[i] > cutoffs[i - 1])) throw ValidationError("model cutoffs must be increasing");
  }
  if (schedule.size() != cutoffs.size()) {
    throw ValidationError("schedule must list one entry per cutoff");
  }
  for (const auto& s : schedule) {
    if (s.edge_layers < 0 || s.node_layers < 0) throw ValidationError("negative layer count");
  }
  if (max_dim < 1 || max_dim > 2) throw ValidationError("model max_dim must be 1 or 2");
}

std::vector<TensorSpec> required_tensors(const ModelConfig& config) {
  config.validate();
  const std::int64_t d = config.hidden_dim, k = config.heads, dh = config.head_dim();
  std::vector<TensorSpec> out;
  auto add = [&](std::string name, std::vector<std::int64_t> shape) {
    out.push_back({std::move(name), std::move(shape)});
  };
  add("input.vertex.weight", {d, static_cast<std::int64_t>(schema::kVertexFeatureWidth)});
  add("input.vertex.bias", {d});
  add("input.edge.weight", {d, static_cast<std::int64_t>(schema::kEdgeFeatureWidth)});
  add("input.edge.bias", {d});
  add("input.triangle.weight", {d, static_cast<std::int64_t>(schema::kTriangleFeatureWidth)});
  add("input.triangle.bias", {d});
  for (std::size_t l = 0; l < config.schedule.size(); ++l) {
    const auto& s = config.schedule[l];
    for (auto [kind, layers] : {std::pair{"edge", s.edge_layers}, std::pair{"node", s.node_layers}}) {
      for (int t = 0; t < layers; ++t) {
        const std::string base = "level" + std::to_string(l) + "." + kind + ".layer" + std::to_string(t);
        add(base + ".w1", {k, dh, dh});
        add(base + ".b1", {k, dh});
        add(base + ".w2", {k, dh, dh});
        add(base + ".b2", {k, dh});
      }
    }
  }
  for (std::size_t l = 0; l + 1 < config.cutoffs.size(); ++l) {
    const std::string base = "csr" + std::to_string(l);
    add(base + ".inner.w1", {d, d});
    add(base + ".inner.b1", {d});
    add(base + ".inner.w2", {d, d});
    add(base + ".inner.b2", {d});
    add(base + ".outer.w1", {d, 2 * d});
    add(base + ".outer.b1", {d});
    add(base + ".outer.w2", {d, d});
    add(base + ".outer.b2", {d});
  }
  add("head.w1", {d, d});
  add("head.b1", {d});
  add("head.w2", {1, d});
  add("head.b2", {1});
  return out;
}

std::span<const double> ModelWeights::tensor(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw ValidationError("missing tensor '" + name + "'");
  return it->second;
}

const std::vector<std::int64_t>& ModelWeights::shape(const std::string& name) const {
  auto it = shapes_.find(name);
  if (it == shapes_.end()) throw ValidationError("missing tensor '" + name + "'");
  return it->second;
}

ModelWeights ModelWeights::create(ModelConfig config,
                                  std::map<std::string, std::vector<double>> values,
                                  std::optional<std::uint64_t> seed) {
  ModelWeights w;
  w.config_ = std::move(config);
  w.seed_ = seed;
  std::set<std::string> expected;
  for (const auto& spec : required_tensors(w.config_)) {
    expected.insert(spec.name);
    auto it = values.find(spec.name);
    if (it == values.end()) throw ValidationError("missing tensor '" + spec.name + "'");
    std::int64_t numel = 1;
    for (auto dim : spec.shape) numel *= dim;
    if (static_cast<std::int64_t>(it->second.size()) != numel) {
      throw ValidationError("tensor '" + spec.name + "' has " + std::to_string(it->second.size()) +
                            " values, expected shape " + shape_string(spec.shape));
    }
    w.shapes_[spec.name] = spec.shape;
  }
  for (const auto& [name, v] : values) {
    if (!expected.count(name)) throw ValidationError("unexpected tensor '" + name + "'");
  }
  w.values_ = std::move(values);
  return w;
}

ModelWeights ModelWeights::from_archive(const TensorArchive& archive) {
  ModelConfig cfg = config_from_archive(archive);
  std::map<std::string, std::vector<double>> values;
  std::set<std::string> expected;
  for (const auto& spec : required_tensors(cfg)) {
    expected.insert(spec.name);
    const Tensor* t = archive.find(spec.name);
    if (!t) throw ValidationError("missing tensor '" + spec.name + "'");
    if (t->dtype == DType::I64) throw ValidationError("tensor '" + spec.name + "' must be floating point");
    if (t->shape != spec.shape) {
      throw ValidationError("tensor '" + spec.name + "' has shape " + shape_string(t->shape) +
                            ", expected " + shape_string(spec.shape));
    }
    values[spec.name] = t->values;
  }
  for (const auto& [name, t] : archive.tensors()) {
    if (!expected.count(name)) throw ValidationError("unexpected tensor '" + name + "'");
  }
  std::optional<std::uint64_t> seed;
  if (const std::string* s = archive.meta("seed")) seed = std::stoull(*s);
  return create(std::move(cfg), std::move(values), seed);
}

TensorArchive ModelWeights::to_archive(DType dtype) const {
  TensorArchive a;
  a.set_meta("format", std::string(kWeightFormat));
  a.set_meta("feature_schema", config_.feature_schema);
  a.set_meta("hidden_dim", std::to_string(config_.hidden_dim));
  a.set_meta("heads", std::to_string(config_.heads));
  a.set_meta("max_dim", std::to_string(config_.max_dim));
  std::string cutoffs, sched;
  for (std::size_t i = 0; i < config_.cutoffs.size(); ++i) {
    cutoffs += (i ? "," : "") + format_double(config_.cutoffs[i]);
    sched += (i ? "," : "") + std::to_string(config_.schedule[i].edge_layers) + ":" +
             std::to_string(config_.schedule[i].node_layers);
  }
  a.set_meta("cutoffs", cutoffs);
  a.set_meta("schedule", sched);
  if (seed_) a.set_meta("seed", std::to_string(*seed_));
  for (const auto& [name, values] : values_) {
    Tensor t;
    t.dtype = dtype;
    t.shape = shapes_.at(name);
    t.values = values;
    a.put(name, std::move(t));
  }
  return a;
}

void ModelWeights::set_tensor(const std::string& name, std::vector<double> values) {
  auto it = values_.find(name);
  if (it == values_.end()) throw ValidationError("missing tensor '" + name + "'");
  if (it->second.size() != values.size()) throw ValidationError("size mismatch for '" + name + "'");
  it->second = std::move(values);
}

ModelWeights load_weights(const std::string& path) {
  return ModelWeights::from_archive(TensorArchive::load(path));
}

void save_weights(const ModelWeights& weights, const std::string& path, DType dtype) {
  weights.to_archive(dtype).save(path);
}

ModelWeights generate_test_weights(const ModelConfig& config, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::map<std::string, std::vector<double>> values;
  for (const auto& spec : required_tensors(config)) {
    std::int64_t numel = 1;
    for (auto d : spec.shape) numel *= d;
    // Fan-in is the last dimension of a weight; biases use the hidden width.
    const double fan_in = spec.shape.size() >= 2 ? static_cast<double>(spec.shape.back())
                                                 : static_cast<double>(config.hidden_dim);
    const double scale = 1.0 / std::sqrt(fan_in);
    std::vector<double> v(static_cast<std::size_t>(numel));
    for (auto& x : v) x = scale * rng.symmetric();
    values[spec.name] = std::move(v);
  }
  return ModelWeights::create(config, std::move(values), seed);
}

ForwardResult hsmp_forward(std::span<const SimplexFeatureSet> features,
                           const Filtration& filtration, const ModelWeights& weights,
                           std::string_view feature_schema, Precision precision) {
  if (feature_schema != weights.config().feature_schema) {
    throw VersionMismatch("feature schema '" + std::string(feature_schema) +
                          "' does not match the weights' schema '" +
                          weights.config().feature_schema + "'");
  }
  ForwardResult result;
  auto collect = [&](const auto& out) {
    result.atom_embeddings = Matrix(out.atoms.rows, out.atoms.cols);
    for (std::size_t i = 0; i < out.atoms.data.size(); ++i) {
      result.atom_embeddings.data[i] = static_cast<double>(out.atoms.data[i]);
    }
    for (const auto& p : out.pooled) result.polymer_embedding.push_back(static_cast<double>(p));
    result.prediction = static_cast<double>(out.prediction);
  };
  if (precision == Precision::F64) {
    collect(engine::forward(features, filtration, engine::cast_params<double>(weights)));
  } else {
    collect(engine::forward(features, filtration, engine::cast_params<float>(weights)));
  }
  return result;
}

}  // namespace prips
