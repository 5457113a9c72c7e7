// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

// Scalar-generic building blocks of the encoder forward pass. Instantiated for
// double (reference), float (fast mode) and Dual (forward-mode derivatives).

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "prips/complex.hpp"
#include "prips/error.hpp"
#include "prips/features.hpp"
#include "prips/hsmp.hpp"

namespace prips::engine {

inline double primal(double x) { return x; }
inline double primal(float x) { return x; }

/// Value plus one directional derivative.
struct Dual {
  double v = 0.0;
  double d = 0.0;

  Dual() = default;
  Dual(double value, double tangent = 0.0) : v(value), d(tangent) {}

  friend Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
  friend Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
  friend Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
  friend Dual operator/(Dual a, Dual b) {
    return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
  }
  Dual& operator+=(Dual b) { return *this = *this + b; }
  friend bool operator<(Dual a, Dual b) { return a.v < b.v; }
  friend bool operator>(Dual a, Dual b) { return a.v > b.v; }
  friend Dual exp(Dual a) {
    const double e = std::exp(a.v);
    return {e, e * a.d};
  }
  friend double primal(Dual a) { return a.v; }
};

template <typename T>
T relu(T x) {
  return primal(x) > 0.0 ? x : T(0.0);
}

template <typename T>
T scalar_exp(T x) {
  using std::exp;
  return exp(x);
}

/// Sum that depends only on the multiset of terms: sort by value, then reduce
/// pairwise. Keeps results bitwise stable under any reordering of inputs.
template <typename T>
T invariant_sum(std::vector<T>& terms) {
  if (terms.empty()) return T(0.0);
  std::sort(terms.begin(), terms.end(),
            [](const T& a, const T& b) { return primal(a) < primal(b); });
  std::size_t n = terms.size();
  while (n > 1) {
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) terms[i] = terms[2 * i] + terms[2 * i + 1];
    if (n % 2) terms[half] = terms[n - 1];
    n = half + n % 2;
  }
  return terms[0];
}

/// Row-major block of per-simplex hidden vectors.
template <typename T>
struct Rows {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  Rows() = default;
  Rows(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, T(0.0)) {}
  T* row(std::size_t r) { return data.data() + r * cols; }
  const T* row(std::size_t r) const { return data.data() + r * cols; }
};

/// Parameters converted to scalar type T, looked up by tensor name.
template <typename T>
class ParamSet {
 public:
  ParamSet() = default;

  /// `make(name, flat_index, value)` produces each scalar.
  template <typename Make>
  ParamSet(const ModelWeights& weights, Make make) : config_(weights.config()) {
    for (const auto& [name, values] : weights.tensors()) {
      auto& out = owned_[name];
      out.reserve(values.size());
      for (std::size_t i = 0; i < values.size(); ++i) out.push_back(make(name, i, values[i]));
    }
  }

  const ModelConfig& config() const { return config_; }

  std::span<const T> operator[](const std::string& name) const {
    auto it = owned_.find(name);
    if (it == owned_.end()) throw ValidationError("missing tensor '" + name + "'");
    return it->second;
  }

 private:
  ModelConfig config_;
  std::map<std::string, std::vector<T>> owned_;
};

template <typename T>
ParamSet<T> cast_params(const ModelWeights& weights) {
  return ParamSet<T>(weights, [](const std::string&, std::size_t, double v) { return T(v); });
}

/// y = W x + b with W row-major [out, in]; accumulation in fixed index order.
template <typename T>
void affine(std::span<const T> w, std::span<const T> b, const T* x, std::size_t in,
            std::size_t out, T* y) {
  for (std::size_t o = 0; o < out; ++o) {
    const T* wr = w.data() + o * in;
    T acc = b[o];
    for (std::size_t i = 0; i < in; ++i) acc = acc + wr[i] * x[i];
    y[o] = acc;
  }
}

/// Two-layer perceptron: W2 relu(W1 x + b1) + b2. Hidden width = out.
template <typename T>
void mlp2(std::span<const T> w1, std::span<const T> b1, std::span<const T> w2,
          std::span<const T> b2, const T* x, std::size_t in, std::size_t out, T* y) {
  std::vector<T> hidden(out);
  affine(w1, b1, x, in, out, hidden.data());
  for (auto& h : hidden) h = relu(h);
  affine(w2, b2, hidden.data(), out, out, y);
}

/// Lifts an initial feature matrix to the hidden width.
template <typename T>
Rows<T> project(const Matrix& features, std::span<const T> w, std::span<const T> b,
                std::size_t hidden) {
  Rows<T> out(features.rows, hidden);
  std::vector<T> x(features.cols);
  for (std::size_t r = 0; r < features.rows; ++r) {
    for (std::size_t c = 0; c < features.cols; ++c) x[c] = T(features(r, c));
    affine(w, b, x.data(), features.cols, hidden, out.row(r));
  }
  return out;
}

/// Channel-wise softmax aggregation: for each channel, weights are the
/// softmax of the incoming values and the output is their weighted sum.
/// An empty message list aggregates to zero.
template <typename T>
void softmax_aggregate(const std::vector<std::vector<T>>& messages, std::size_t width, T* out) {
  if (messages.empty()) {
    std::fill(out, out + width, T(0.0));
    return;
  }
  std::vector<T> weights(messages.size()), weighted(messages.size());
  for (std::size_t c = 0; c < width; ++c) {
    T peak = messages[0][c];
    for (const auto& m : messages) {
      if (primal(m[c]) > primal(peak)) peak = m[c];
    }
    for (std::size_t j = 0; j < messages.size(); ++j) {
      weights[j] = scalar_exp(messages[j][c] - peak);
      weighted[j] = weights[j] * messages[j][c];
    }
    const T z = invariant_sum(weights);
    const T num = invariant_sum(weighted);
    out[c] = num / z;
  }
}

/// T layers of multi-head simplicial message passing on one dimension.
/// `cofaces` holds the (fixed) hidden states of the dimension above; each
/// simplex receives relu(h_tau + h_sigma') from every upper-adjacent pair
/// (sigma', tau) and updates to MLP(h_sigma + AGG(messages)) per head.
template <typename T>
Rows<T> multi_head_block(const Rows<T>& state, const Rows<T>& cofaces,
                         const std::vector<std::vector<UpperNeighbor>>& adjacency, int layers,
                         const ParamSet<T>& params, const std::string& prefix, int heads) {
  const std::size_t width = state.cols;
  if (heads <= 0 || width % static_cast<std::size_t>(heads) != 0) {
    throw ValidationError("hidden width " + std::to_string(width) + " is not divisible by " +
                          std::to_string(heads) + " heads");
  }
  if (adjacency.size() != state.rows) throw ValidationError("adjacency does not match the state");
  const std::size_t dh = width / heads;

  Rows<T> current = state;
  for (int t = 0; t < layers; ++t) {
    const std::string base = prefix + ".layer" + std::to_string(t);
    const auto w1 = params[base + ".w1"], b1 = params[base + ".b1"];
    const auto w2 = params[base + ".w2"], b2 = params[base + ".b2"];
    Rows<T> next(current.rows, width);
    std::vector<T> input(dh), agg(dh);
    for (int h = 0; h < heads; ++h) {
      const std::size_t off = h * dh;
      const auto hw1 = w1.subspan(h * dh * dh, dh * dh), hb1 = b1.subspan(h * dh, dh);
      const auto hw2 = w2.subspan(h * dh * dh, dh * dh), hb2 = b2.subspan(h * dh, dh);
      for (std::size_t s = 0; s < current.rows; ++s) {
        std::vector<std::vector<T>> messages;
        messages.reserve(adjacency[s].size());
        for (const auto& nb : adjacency[s]) {
          std::vector<T> m(dh);
          const T* hn = current.row(nb.neighbor) + off;
          const T* ht = cofaces.row(nb.coface) + off;
          for (std::size_t c = 0; c < dh; ++c) m[c] = relu(ht[c] + hn[c]);
          messages.push_back(std::move(m));
        }
        softmax_aggregate(messages, dh, agg.data());
        const T* hs = current.row(s) + off;
        for (std::size_t c = 0; c < dh; ++c) input[c] = hs[c] + agg[c];
        mlp2(hw1, hb1, hw2, hb2, input.data(), dh, dh, next.row(s) + off);
      }
    }
    current = std::move(next);
  }
  return current;
}

/// Gated residual from the coarser level: x + c * MLP_outer(c || MLP_inner(c)),
/// where c is the coarse state of the same vertex tuple.
template <typename T>
Rows<T> cross_scale_refine(const Rows<T>& fine, const SimplicialComplex& fine_complex, int dim,
                           const Rows<T>& coarse, const SimplicialComplex& coarse_complex,
                           const ParamSet<T>& params, const std::string& prefix) {
  const std::size_t width = fine.cols;
  const auto iw1 = params[prefix + ".inner.w1"], ib1 = params[prefix + ".inner.b1"];
  const auto iw2 = params[prefix + ".inner.w2"], ib2 = params[prefix + ".inner.b2"];
  const auto ow1 = params[prefix + ".outer.w1"], ob1 = params[prefix + ".outer.b1"];
  const auto ow2 = params[prefix + ".outer.w2"], ob2 = params[prefix + ".outer.b2"];

  Rows<T> out = fine;
  std::vector<T> cat(2 * width), gate(width);
  for (std::size_t s = 0; s < fine.rows; ++s) {
    const auto& simplex = fine_complex.simplex(dim, static_cast<std::int32_t>(s));
    const auto match = coarse_complex.find(simplex);
    if (!match) throw ValidationError("simplex missing from the coarser level (filtration not nested)");
    const T* c = coarse.row(*match);
    std::copy(c, c + width, cat.begin());
    mlp2(iw1, ib1, iw2, ib2, c, width, width, cat.data() + width);
    mlp2(ow1, ob1, ow2, ob2, cat.data(), 2 * width, width, gate.data());
    T* x = out.row(s);
    for (std::size_t k = 0; k < width; ++k) x[k] = x[k] + c[k] * gate[k];
  }
  return out;
}

/// Per-dimension hidden states of one level (vertices, edges, triangles).
template <typename T>
struct LevelState {
  std::vector<Rows<T>> by_dim;
};

template <typename T>
struct ForwardOutput {
  Rows<T> atoms;
  std::vector<T> pooled;
  T prediction{};
};

inline std::vector<std::vector<UpperNeighbor>> upper_adjacency(const SimplicialComplex& cx,
                                                               int dim) {
  std::vector<std::vector<UpperNeighbor>> out(cx.count(dim));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = cx.upper_adjacent(dim, static_cast<std::int32_t>(i));
  }
  return out;
}

inline std::string level_prefix(std::size_t level) { return "level" + std::to_string(level); }

/// Runs the blocks scheduled at one level: edge updates first (cofaces are
/// triangles), then node updates (cofaces are the updated edges).
template <typename T>
void run_level(LevelState<T>& state, const SimplicialComplex& cx, const LevelSchedule& sched,
               const ParamSet<T>& params, std::size_t level, int heads) {
  const std::string prefix = level_prefix(level);
  if (sched.edge_layers > 0) {
    state.by_dim[1] = multi_head_block(state.by_dim[1], state.by_dim[2], upper_adjacency(cx, 1),
                                       sched.edge_layers, params, prefix + ".edge", heads);
  }
  if (sched.node_layers > 0) {
    state.by_dim[0] = multi_head_block(state.by_dim[0], state.by_dim[1], upper_adjacency(cx, 0),
                                       sched.node_layers, params, prefix + ".node", heads);
  }
}

template <typename T>
LevelState<T> project_level(const SimplexFeatureSet& features, const ParamSet<T>& params,
                            std::size_t hidden) {
  LevelState<T> st;
  st.by_dim.push_back(
      project(features.vertex, params["input.vertex.weight"], params["input.vertex.bias"], hidden));
  st.by_dim.push_back(
      project(features.edge, params["input.edge.weight"], params["input.edge.bias"], hidden));
  st.by_dim.push_back(project(features.triangle, params["input.triangle.weight"],
                              params["input.triangle.bias"], hidden));
  return st;
}

template <typename T>
ForwardOutput<T> forward(std::span<const SimplexFeatureSet> features, const Filtration& filtration,
                         const ParamSet<T>& params) {
  const ModelConfig& cfg = params.config();
  const std::size_t levels = filtration.size();
  if (features.size() != levels || cfg.cutoffs.size() != levels) {
    throw ValidationError("features, filtration and model disagree on the number of levels");
  }
  for (std::size_t l = 0; l < levels; ++l) {
    if (filtration.level(l).epsilon != cfg.cutoffs[l]) {
      throw ValidationError("filtration cutoffs differ from the model configuration");
    }
    const auto& cx = filtration.level(l).complex;
    const auto& f = features[l];
    if (f.vertex.rows != cx.count(0) || f.edge.rows != cx.count(1) || f.triangle.rows != cx.count(2)) {
      throw ValidationError("feature rows do not match the complex at level " + std::to_string(l));
    }
  }
  const auto hidden = static_cast<std::size_t>(cfg.hidden_dim);

  std::size_t l = levels - 1;
  LevelState<T> state = project_level(features[l], params, hidden);
  run_level(state, filtration.level(l).complex, cfg.schedule[l], params, l, cfg.heads);
  while (l > 0) {
    --l;
    LevelState<T> fine = project_level(features[l], params, hidden);
    const auto& fcx = filtration.level(l).complex;
    const auto& ccx = filtration.level(l + 1).complex;
    const std::string prefix = "csr" + std::to_string(l);
    for (int dim = 0; dim < 3; ++dim) {
      fine.by_dim[dim] = cross_scale_refine(fine.by_dim[dim], fcx, dim, state.by_dim[dim], ccx,
                                            params, prefix);
    }
    state = std::move(fine);
    run_level(state, fcx, cfg.schedule[l], params, l, cfg.heads);
  }

  ForwardOutput<T> out;
  out.atoms = state.by_dim[0];
  out.pooled.assign(hidden, T(0.0));
  std::vector<T> column(out.atoms.rows);
  const T count(static_cast<double>(out.atoms.rows));
  for (std::size_t c = 0; c < hidden; ++c) {
    for (std::size_t r = 0; r < out.atoms.rows; ++r) column[r] = out.atoms.row(r)[c];
    out.pooled[c] = invariant_sum(column) / count;
  }
  // Regression head: D -> D -> 1.
  std::vector<T> head(1);
  std::vector<T> hidden_act(hidden);
  affine(params["head.w1"], params["head.b1"], out.pooled.data(), hidden, hidden, hidden_act.data());
  for (auto& h : hidden_act) h = relu(h);
  affine(params["head.w2"], params["head.b2"], hidden_act.data(), hidden, 1, head.data());
  out.prediction = head[0];
  return out;
}

}  // namespace prips::engine
