// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "prips/error.hpp"
#include "prips/hsmp.hpp"
#include "prips/hsmp_engine.hpp"
#include "prips/pipeline.hpp"
#include "support/units.hpp"

namespace prips {
namespace {

using engine::Dual;
using engine::ParamSet;
using engine::Rows;
using testing::Rng;

ModelConfig small_config(int d = 24, int k = 4) {
  ModelConfig c;
  c.hidden_dim = d;
  c.heads = k;
  c.schedule = {{0, 2}, {1, 2}, {1, 2}};
  return c;
}

RepeatingUnit bundled(const std::string& name) {
  return load_repeating_unit(std::string(PRIPS_DATA_DIR) + "/polymers/" + name + ".json");
}

DistanceMatrix constant_matrix(int n, double value) {
  DistanceMatrix d(n, MetricMode::IntraUnit);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) d.set(i, j, value);
  }
  return d;
}

Rows<double> random_rows(Rng& rng, std::size_t rows, std::size_t cols) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Rows<double> r(rows, cols);
  for (auto& v : r.data) v = u(rng);
  return r;
}

// Independent, loop-by-loop evaluation of W2 relu(W1 x + b1) + b2.
std::vector<double> naive_mlp(std::span<const double> w1, std::span<const double> b1,
                              std::span<const double> w2, std::span<const double> b2,
                              const std::vector<double>& x, std::size_t out) {
  const std::size_t in = x.size();
  std::vector<double> h(out), y(out);
  for (std::size_t o = 0; o < out; ++o) {
    double s = 0.0;
    for (std::size_t i = 0; i < in; ++i) s += w1[o * in + i] * x[i];
    h[o] = std::max(0.0, s + b1[o]);
  }
  for (std::size_t o = 0; o < out; ++o) {
    double s = 0.0;
    for (std::size_t i = 0; i < out; ++i) s += w2[o * out + i] * h[i];
    y[o] = s + b2[o];
  }
  return y;
}

// ---------------------------------------------------------------------------
// Configuration and weight validation

TEST(ModelConfig, DefaultsMatchThePublishedEncoder) {
  const ModelConfig c;
  EXPECT_EQ(c.hidden_dim, 768);
  EXPECT_EQ(c.heads, 12);
  EXPECT_EQ(c.head_dim(), 64);
  EXPECT_EQ(c.cutoffs, (std::vector<double>{2.0, 3.0, 4.0}));
  ASSERT_EQ(c.schedule.size(), 3u);
  EXPECT_EQ(c.schedule[2], (LevelSchedule{4, 6}));
  EXPECT_EQ(c.schedule[1], (LevelSchedule{4, 6}));
  EXPECT_EQ(c.schedule[0], (LevelSchedule{0, 6}));
  EXPECT_EQ(c.max_dim, 2);
  EXPECT_NO_THROW(c.validate());
}

TEST(ModelConfig, RejectsInconsistentSettings) {
  auto bad = small_config();
  bad.heads = 5;
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = small_config();
  bad.cutoffs = {2.0, 4.0, 3.0};
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = small_config();
  bad.schedule.pop_back();
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = small_config();
  bad.schedule[0].node_layers = -1;
  EXPECT_THROW(bad.validate(), ValidationError);
}

TEST(RequiredTensors, DefaultLayout) {
  std::map<std::string, std::vector<std::int64_t>> shapes;
  for (const auto& t : required_tensors(ModelConfig{})) shapes[t.name] = t.shape;
  using S = std::vector<std::int64_t>;
  EXPECT_EQ(shapes.at("input.vertex.weight"), (S{768, 75}));
  EXPECT_EQ(shapes.at("input.edge.weight"), (S{768, 11}));
  EXPECT_EQ(shapes.at("input.triangle.weight"), (S{768, 5}));
  EXPECT_EQ(shapes.at("level0.node.layer5.w1"), (S{12, 64, 64}));
  EXPECT_EQ(shapes.at("level2.edge.layer3.b2"), (S{12, 64}));
  EXPECT_EQ(shapes.count("level0.edge.layer0.w1"), 0u);
  EXPECT_EQ(shapes.count("level2.node.layer6.w1"), 0u);
  EXPECT_EQ(shapes.at("csr0.inner.w1"), (S{768, 768}));
  EXPECT_EQ(shapes.at("csr1.outer.w1"), (S{768, 1536}));
  EXPECT_EQ(shapes.count("csr2.inner.w1"), 0u);
  EXPECT_EQ(shapes.at("head.w2"), (S{1, 768}));
  EXPECT_EQ(shapes.at("head.b2"), (S{1}));
}

TensorArchive without(const TensorArchive& a, const std::string& drop) {
  TensorArchive out;
  for (const auto& [k, v] : a.metadata()) out.set_meta(k, v);
  for (const auto& [name, t] : a.tensors()) {
    if (name != drop) out.put(name, t);
  }
  return out;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST(LoadWeights, ManifestValidation) {
  const auto w = generate_test_weights(ModelConfig{}, 1);
  const auto archive = w.to_archive();
  EXPECT_NO_THROW(ModelWeights::from_archive(archive));

  const auto missing = message_of([&] { ModelWeights::from_archive(without(archive, "head.b2")); });
  EXPECT_NE(missing.find("head.b2"), std::string::npos) << missing;

  auto narrow = archive;
  narrow.put("input.vertex.weight", Tensor{DType::F64, {512, 75}, std::vector<double>(512 * 75), {}});
  const auto shape = message_of([&] { ModelWeights::from_archive(narrow); });
  EXPECT_NE(shape.find("input.vertex.weight"), std::string::npos) << shape;

  auto extra = archive;
  extra.put("head.w3", Tensor{DType::F64, {1}, {0.0}, {}});
  EXPECT_NE(message_of([&] { ModelWeights::from_archive(extra); }).find("head.w3"),
            std::string::npos);

  auto ints = archive;
  ints.put("head.b2", Tensor{DType::I64, {1}, {}, {0}});
  EXPECT_THROW(ModelWeights::from_archive(ints), ValidationError);

  auto version = archive;
  version.set_meta("format", "prips-weights/0");
  EXPECT_THROW(ModelWeights::from_archive(version), VersionMismatch);
}

TEST(LoadWeights, FileRoundTrip) {
  const auto w = generate_test_weights(small_config(), 9);
  const auto dir = std::filesystem::temp_directory_path() / "prips_hsmp_roundtrip";
  std::filesystem::create_directories(dir);
  save_weights(w, (dir / "w64.hsmp").string());
  save_weights(w, (dir / "w32.hsmp").string(), DType::F32);
  const auto a = load_weights((dir / "w64.hsmp").string());
  const auto b = load_weights((dir / "w32.hsmp").string());
  EXPECT_EQ(a.config(), w.config());
  EXPECT_EQ(a.tensors(), w.tensors());
  EXPECT_EQ(a.seed(), std::optional<std::uint64_t>(9));
  for (const auto& [name, values] : w.tensors()) {
    const auto got = b.tensor(name);
    for (std::size_t i = 0; i < values.size(); ++i) {
      ASSERT_EQ(got[i], static_cast<double>(static_cast<float>(values[i])));
    }
  }
  std::filesystem::remove_all(dir);
}

TEST(GenerateTestWeights, DeterministicAndBounded) {
  const auto a = generate_test_weights(small_config(), 3);
  const auto b = generate_test_weights(small_config(), 3);
  const auto c = generate_test_weights(small_config(), 4);
  EXPECT_EQ(a.tensors(), b.tensors());
  EXPECT_NE(a.tensors(), c.tensors());
  const auto w = a.tensor("input.vertex.weight");
  for (double v : w) EXPECT_LE(std::fabs(v), 1.0 / std::sqrt(75.0));
}

// ---------------------------------------------------------------------------
// Blocks

TEST(MultiHeadBlock, ZeroLayersIsIdentity) {
  Rng rng(41);
  const auto w = generate_test_weights(small_config(), 1);
  const auto p = engine::cast_params<double>(w);
  const auto cx = build_vr_complex(constant_matrix(3, 1.0), 1.0);
  const auto state = random_rows(rng, 3, 24);
  const auto cof = random_rows(rng, 3, 24);
  const auto out = engine::multi_head_block(state, cof, engine::upper_adjacency(cx, 0), 0, p,
                                            "level0.node", 4);
  EXPECT_EQ(out.data, state.data);
}

TEST(MultiHeadBlock, HeadCountMustDivideWidth) {
  Rng rng(42);
  const auto p = engine::cast_params<double>(generate_test_weights(small_config(), 1));
  const auto state = random_rows(rng, 2, 24);
  std::vector<std::vector<UpperNeighbor>> none(2);
  EXPECT_THROW(engine::multi_head_block(state, state, none, 1, p, "level0.node", 5),
               ValidationError);
}

TEST(MultiHeadBlock, EmptyNeighborhoodReducesToMlp) {
  Rng rng(43);
  const auto w = generate_test_weights(small_config(), 2);
  const auto p = engine::cast_params<double>(w);
  const auto cx = build_vr_complex(constant_matrix(2, 5.0), 1.0);
  const auto state = random_rows(rng, 2, 24);
  const Rows<double> no_edges(0, 24);
  const auto out = engine::multi_head_block(state, no_edges, engine::upper_adjacency(cx, 0), 1,
                                            p, "level0.node", 4);
  const std::size_t dh = 6;
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t h = 0; h < 4; ++h) {
      std::vector<double> x(state.row(s) + h * dh, state.row(s) + (h + 1) * dh);
      const auto y = naive_mlp(w.tensor("level0.node.layer0.w1").subspan(h * 36, 36),
                               w.tensor("level0.node.layer0.b1").subspan(h * dh, dh),
                               w.tensor("level0.node.layer0.w2").subspan(h * 36, 36),
                               w.tensor("level0.node.layer0.b2").subspan(h * dh, dh), x, dh);
      for (std::size_t c = 0; c < dh; ++c) EXPECT_NEAR(out.row(s)[h * dh + c], y[c], 1e-13);
    }
  }
}

// Single-head message passing written out directly.
std::vector<std::vector<double>> naive_single_head(const ModelWeights& w, const std::string& prefix,
                                                   const Rows<double>& state,
                                                   const Rows<double>& cof,
                                                   const std::vector<std::vector<UpperNeighbor>>& adj,
                                                   int layers) {
  const std::size_t d = state.cols;
  std::vector<std::vector<double>> h(state.rows);
  for (std::size_t s = 0; s < state.rows; ++s) h[s].assign(state.row(s), state.row(s) + d);
  for (int t = 0; t < layers; ++t) {
    const std::string base = prefix + ".layer" + std::to_string(t);
    auto next = h;
    for (std::size_t s = 0; s < h.size(); ++s) {
      std::vector<double> x = h[s];
      if (!adj[s].empty()) {
        for (std::size_t c = 0; c < d; ++c) {
          std::vector<double> m;
          for (const auto& nb : adj[s]) m.push_back(std::max(0.0, cof.row(nb.coface)[c] + h[nb.neighbor][c]));
          double z = 0.0, num = 0.0;
          for (double v : m) {
            z += std::exp(v);
            num += std::exp(v) * v;
          }
          x[c] += num / z;
        }
      }
      next[s] = naive_mlp(w.tensor(base + ".w1"), w.tensor(base + ".b1"), w.tensor(base + ".w2"),
                          w.tensor(base + ".b2"), x, d);
    }
    h = std::move(next);
  }
  return h;
}

TEST(MultiHeadBlock, SingleHeadMatchesScalarOracle) {
  Rng rng(44);
  const auto cfg = small_config(8, 1);
  const auto w = generate_test_weights(cfg, 5);
  const auto p = engine::cast_params<double>(w);
  for (int trial = 0; trial < 5; ++trial) {
    const auto cx = build_vr_complex(testing::random_matrix(rng, 6, 0.5, 3.0), 2.0);
    for (int dim : {0, 1}) {
      const auto state = random_rows(rng, cx.count(dim), 8);
      const auto cof = random_rows(rng, cx.count(dim + 1), 8);
      const auto adj = engine::upper_adjacency(cx, dim);
      const auto out = engine::multi_head_block(state, cof, adj, 2, p, "level1.node", 1);
      const auto ref = naive_single_head(w, "level1.node", state, cof, adj, 2);
      for (std::size_t s = 0; s < ref.size(); ++s) {
        for (std::size_t c = 0; c < 8; ++c) {
          EXPECT_NEAR(out.row(s)[c], ref[s][c], 1e-12 * (1.0 + std::fabs(ref[s][c])));
        }
      }
    }
  }
}

TEST(MultiHeadBlock, HeadSplitShapes) {
  // k=1 and k=12 both map D-wide rows to D-wide rows.
  Rng rng(45);
  for (int k : {1, 12}) {
    const auto cfg = small_config(24, k);
    EXPECT_EQ(cfg.head_dim() * k, 24);
    const auto w = generate_test_weights(cfg, 6);
    std::map<std::string, std::vector<std::int64_t>> shapes;
    for (const auto& t : required_tensors(cfg)) shapes[t.name] = t.shape;
    EXPECT_EQ(shapes.at("level0.node.layer0.w1"),
              (std::vector<std::int64_t>{k, 24 / k, 24 / k}));
    const auto cx = build_vr_complex(testing::random_matrix(rng, 6, 0.5, 3.0), 2.0);
    const auto state = random_rows(rng, cx.count(0), 24);
    const auto cof = random_rows(rng, cx.count(1), 24);
    const auto out = engine::multi_head_block(state, cof, engine::upper_adjacency(cx, 0), 2,
                                              engine::cast_params<double>(w), "level0.node", k);
    EXPECT_EQ(out.rows, state.rows);
    EXPECT_EQ(out.cols, 24u);
    for (double v : out.data) EXPECT_TRUE(std::isfinite(v));

    auto u = testing::chain_unit({"C", "C", "O", "C"}, 1, 3);
    const auto r = predict_unit(u, w, false);
    EXPECT_EQ(r.atom_embeddings.rows, u.size());
    EXPECT_EQ(r.atom_embeddings.cols, 24u);
    EXPECT_EQ(r.polymer_embedding.size(), 24u);
    EXPECT_TRUE(std::isfinite(r.prediction));
  }
}

TEST(MultiHeadBlock, SymmetricTriangleGivesIdenticalRows) {
  Rng rng(46);
  const auto cfg = small_config(12, 3);
  const auto p = engine::cast_params<double>(generate_test_weights(cfg, 7));
  const auto cx = build_vr_complex(constant_matrix(3, 1.0), 1.0);
  engine::LevelState<double> st;
  for (std::size_t n : {3u, 3u, 1u}) {
    const auto one = random_rows(rng, 1, 12);
    Rows<double> r(n, 12);
    for (std::size_t i = 0; i < n; ++i) std::copy(one.row(0), one.row(0) + 12, r.row(i));
    st.by_dim.push_back(r);
  }
  engine::run_level(st, cx, cfg.schedule[1], p, 1, cfg.heads);
  for (int dim : {0, 1}) {
    for (std::size_t i = 1; i < 3; ++i) {
      for (std::size_t c = 0; c < 12; ++c) EXPECT_EQ(st.by_dim[dim].row(i)[c], st.by_dim[dim].row(0)[c]);
    }
  }
}

ModelWeights with_zero_gate(const ModelWeights& w, std::size_t level) {
  auto z = w;
  const std::string pre = "csr" + std::to_string(level);
  for (const char* part : {".inner.w1", ".inner.b1", ".inner.w2", ".inner.b2", ".outer.w1",
                           ".outer.b1", ".outer.w2", ".outer.b2"}) {
    z.set_tensor(pre + part, std::vector<double>(w.tensor(pre + part).size(), 0.0));
  }
  return z;
}

TEST(CrossScaleRefine, ZeroGateIsExactIdentity) {
  Rng rng(47);
  const auto w = with_zero_gate(generate_test_weights(small_config(), 8), 0);
  const auto p = engine::cast_params<double>(w);
  const auto d = testing::random_matrix(rng, 7, 0.5, 4.0);
  const auto fine = build_vr_complex(d, 2.0), coarse = build_vr_complex(d, 3.0);
  for (int dim = 0; dim <= 2; ++dim) {
    const auto x = random_rows(rng, fine.count(dim), 24);
    const auto c = random_rows(rng, coarse.count(dim), 24);
    const auto out = engine::cross_scale_refine(x, fine, dim, c, coarse, p, "csr0");
    EXPECT_EQ(out.data, x.data);
  }
}

TEST(CrossScaleRefine, ZeroCoarseStateIsIdentity) {
  Rng rng(48);
  const auto p = engine::cast_params<double>(generate_test_weights(small_config(), 9));
  const auto d = testing::random_matrix(rng, 7, 0.5, 4.0);
  const auto fine = build_vr_complex(d, 2.0), coarse = build_vr_complex(d, 3.0);
  const auto x = random_rows(rng, fine.count(1), 24);
  const Rows<double> c(coarse.count(1), 24);
  EXPECT_EQ(engine::cross_scale_refine(x, fine, 1, c, coarse, p, "csr1").data, x.data);
}

TEST(CrossScaleRefine, MatchesScalarOracle) {
  Rng rng(49);
  const auto cfg = small_config(6, 2);
  const auto w = generate_test_weights(cfg, 10);
  const auto p = engine::cast_params<double>(w);
  const auto d = testing::random_matrix(rng, 6, 0.5, 4.0);
  const auto fine = build_vr_complex(d, 2.0), coarse = build_vr_complex(d, 3.0);
  const auto x = random_rows(rng, fine.count(1), 6);
  const auto c = random_rows(rng, coarse.count(1), 6);
  const auto out = engine::cross_scale_refine(x, fine, 1, c, coarse, p, "csr0");
  for (std::size_t s = 0; s < fine.count(1); ++s) {
    const auto j = *coarse.find(fine.simplex(1, static_cast<std::int32_t>(s)));
    std::vector<double> cv(c.row(j), c.row(j) + 6);
    const auto inner = naive_mlp(w.tensor("csr0.inner.w1"), w.tensor("csr0.inner.b1"),
                                 w.tensor("csr0.inner.w2"), w.tensor("csr0.inner.b2"), cv, 6);
    std::vector<double> cat = cv;
    cat.insert(cat.end(), inner.begin(), inner.end());
    const auto gate = naive_mlp(w.tensor("csr0.outer.w1"), w.tensor("csr0.outer.b1"),
                                w.tensor("csr0.outer.w2"), w.tensor("csr0.outer.b2"), cat, 6);
    for (std::size_t k = 0; k < 6; ++k) {
      EXPECT_NEAR(out.row(s)[k], x.row(s)[k] + cv[k] * gate[k], 1e-13);
    }
  }
}

TEST(CrossScaleRefine, MissingCoarseSimplexRejected) {
  Rng rng(50);
  const auto p = engine::cast_params<double>(generate_test_weights(small_config(), 1));
  const auto d = testing::random_matrix(rng, 6, 0.5, 4.0);
  const auto fine = build_vr_complex(d, 3.0), coarse = build_vr_complex(d, 0.1);
  if (fine.count(1) == 0) GTEST_SKIP();
  const auto x = random_rows(rng, fine.count(1), 24);
  const Rows<double> c(0, 24);
  EXPECT_THROW(engine::cross_scale_refine(x, fine, 1, c, coarse, p, "csr0"), ValidationError);
}

// ---------------------------------------------------------------------------
// Full forward pass

TEST(HsmpForward, SchemaMismatchIsAVersionError) {
  const auto w = generate_test_weights(small_config(), 1);
  const auto u = testing::chain_unit({"C", "C"});
  const auto fu = featurize_unit(u, options_for(w.config(), false));
  EXPECT_THROW(hsmp_forward(fu.features, fu.filtration, w, "prips-features/0"), VersionMismatch);
}

TEST(HsmpForward, SingleAtomPoolsToItsEmbedding) {
  Rng rng(51);
  const auto w = generate_test_weights(small_config(), 2);
  const DistanceMatrix d(1, MetricMode::IntraUnit);
  const auto filt = build_filtration(d, w.config().cutoffs);
  std::vector<SimplexFeatureSet> fs(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t l = 0; l < 3; ++l) {
    fs[l].epsilon = w.config().cutoffs[l];
    fs[l].vertex = Matrix(1, 75);
    for (auto& v : fs[l].vertex.data) v = u(rng);
    fs[l].edge = Matrix(0, 11);
    fs[l].triangle = Matrix(0, 5);
  }
  const auto r = hsmp_forward(fs, filt, w);
  ASSERT_EQ(r.atom_embeddings.rows, 1u);
  for (std::size_t c = 0; c < 24; ++c) EXPECT_EQ(r.polymer_embedding[c], r.atom_embeddings(0, c));
}

TEST(HsmpForward, DeterministicAndF32Close) {
  const auto w = generate_test_weights(small_config(), 3);
  const auto u = bundled("PMMA");
  const auto a = predict_unit(u, w);
  const auto b = predict_unit(u, w);
  EXPECT_EQ(a.prediction, b.prediction);
  EXPECT_EQ(a.atom_embeddings.data, b.atom_embeddings.data);
  const auto f = predict_unit(u, w, true, Precision::F32);
  EXPECT_NEAR(f.prediction, a.prediction, 1e-4 * (1.0 + std::fabs(a.prediction)));
}

TEST(HsmpForward, PermutationInvariantBitwise) {
  Rng rng(52);
  const auto w = generate_test_weights(small_config(), 4);
  for (const char* name : {"PEO", "PMMA", "BPA-PC"}) {
    const auto u = bundled(name);
    const auto ref = predict_unit(u, w);
    for (int trial = 0; trial < 20; ++trial) {
      const auto perm = testing::random_permutation(rng, static_cast<int>(u.size()));
      const auto r = predict_unit(relabel_atoms(u, perm), w);
      ASSERT_EQ(r.prediction, ref.prediction) << name << " trial " << trial;
      ASSERT_EQ(r.polymer_embedding, ref.polymer_embedding);
      for (std::size_t a = 0; a < u.size(); ++a) {
        for (std::size_t c = 0; c < 24; ++c) {
          ASSERT_EQ(r.atom_embeddings(perm[a], c), ref.atom_embeddings(a, c));
        }
      }
    }
  }
}

TEST(HsmpForward, FiniteDifferenceMatchesDualDerivative) {
  Rng rng(53);
  const auto cfg = small_config(24, 4);
  const auto w = generate_test_weights(cfg, 11);
  // Narrower widths leave every ReLU of the last layer dead for this input.
  auto u = testing::chain_unit({"C", "C", "O", "C"}, 1, 12);  // 6 atoms
  ASSERT_EQ(u.size(), 6u);
  testing::line_frames(u, 1, 1.3);
  const auto fu = featurize_unit(u, options_for(cfg, false));
  std::normal_distribution<double> normal;
  const double h = 1e-6;
  int nonzero = 0;
  for (const auto& spec : required_tensors(cfg)) {
    const auto base = w.tensor(spec.name);
    std::vector<double> dir(base.size());
    for (auto& v : dir) v = normal(rng);
    const ParamSet<Dual> params(w, [&](const std::string& name, std::size_t i, double v) {
      return Dual(v, name == spec.name ? dir[i] : 0.0);
    });
    const double ad = engine::forward<Dual>(fu.features, fu.filtration, params).prediction.d;
    auto plus = w, minus = w;
    std::vector<double> vp(base.begin(), base.end()), vm(base.begin(), base.end());
    for (std::size_t i = 0; i < dir.size(); ++i) {
      vp[i] += h * dir[i];
      vm[i] -= h * dir[i];
    }
    plus.set_tensor(spec.name, vp);
    minus.set_tensor(spec.name, vm);
    const double fd = (hsmp_forward(fu.features, fu.filtration, plus).prediction -
                       hsmp_forward(fu.features, fu.filtration, minus).prediction) /
                      (2 * h);
    if (std::fabs(ad) < 1e-12) {
      EXPECT_LT(std::fabs(fd), 1e-8) << spec.name;
      continue;
    }
    ++nonzero;
    EXPECT_LE(std::fabs(fd - ad) / std::fabs(ad), 1e-4) << spec.name << " ad=" << ad << " fd=" << fd;
  }
  EXPECT_GT(nonzero, 10);
}

}  // namespace
}  // namespace prips
