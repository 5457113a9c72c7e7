// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "prips/complex.hpp"
#include "prips/error.hpp"
#include "support/oracles.hpp"

namespace prips {
namespace {

using testing::Rng;
using testing::to_vector;

DistanceMatrix matrix_from(const std::vector<std::vector<double>>& rows) {
  DistanceMatrix d(rows.size(), MetricMode::IntraUnit);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) d.set(i, j, rows[i][j]);
  }
  return d;
}

std::vector<std::vector<int>> listed(const SimplicialComplex& cx, int dim) {
  std::vector<std::vector<int>> out;
  for (const auto& s : cx.simplices(dim)) out.push_back(to_vector(s));
  return out;
}

TEST(SimplexType, SortsAndRejectsRepeats) {
  const Simplex s{3, 1, 2};
  EXPECT_EQ(s.dim(), 2);
  EXPECT_EQ(to_vector(s), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(to_vector(s.without(1)), (std::vector<int>{1, 3}));
  EXPECT_THROW((Simplex{1, 1}), std::invalid_argument);
  EXPECT_TRUE((Simplex{0, 2}) < (Simplex{1, 2}));
}

TEST(BuildVrComplex, FullTriangle) {
  const auto cx = build_vr_complex(matrix_from({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}), 1.0);
  EXPECT_EQ(cx.count(0), 3u);
  EXPECT_EQ(cx.count(1), 3u);
  EXPECT_EQ(cx.count(2), 1u);
}

TEST(BuildVrComplex, OneLongPair) {
  const auto cx = build_vr_complex(matrix_from({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}), 1.5);
  EXPECT_EQ(cx.count(1), 2u);
  EXPECT_EQ(cx.count(2), 0u);
}

TEST(BuildVrComplex, ThresholdIsInclusiveAndExact) {
  const auto d = matrix_from({{0, 2.0}, {2.0, 0}});
  EXPECT_EQ(build_vr_complex(d, 2.0).count(1), 1u);
  EXPECT_EQ(build_vr_complex(d, std::nextafter(2.0, 0.0)).count(1), 0u);
}

TEST(BuildVrComplex, Errors) {
  const auto d = matrix_from({{0, 1}, {1, 0}});
  EXPECT_THROW(build_vr_complex(d, 1.0, 4), ValidationError);
  EXPECT_THROW(build_vr_complex(d, 1.0, -1), ValidationError);
  EXPECT_THROW(build_vr_complex(d, 0.0, 2), ValidationError);
}

TEST(BuildVrComplex, MatchesSubsetOracle) {
  Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 8;
    const auto d = trial % 2 ? testing::random_matrix(rng, n) : testing::random_grid_matrix(rng, n);
    for (int max_dim : {0, 1, 2, 3}) {
      const double eps = 1.0 + 0.5 * (trial % 7);
      const auto cx = build_vr_complex(d, eps, max_dim);
      const auto oracle = testing::brute_vr(d, eps, max_dim);
      for (int dim = 0; dim <= max_dim; ++dim) ASSERT_EQ(listed(cx, dim), oracle[dim]);
    }
  }
}

TEST(BuildVrComplex, CliqueCounts) {
  for (int m = 1; m <= 8; ++m) {
    DistanceMatrix d(m, MetricMode::IntraUnit);
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) d.set(i, j, 1.0);
    }
    const auto cx = build_vr_complex(d, 1e9, 2);
    EXPECT_EQ(cx.count(1), static_cast<std::size_t>(m * (m - 1) / 2));
    EXPECT_EQ(cx.count(2), static_cast<std::size_t>(m * (m - 1) * (m - 2) / 6));
  }
}

TEST(BuildVrComplex, IncidenceIndicesConsistent) {
  Rng rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = testing::random_matrix(rng, 8);
    const auto cx = build_vr_complex(d, 3.0, 3);
    for (int dim = 1; dim <= 3; ++dim) {
      for (std::int32_t k = 0; k < static_cast<std::int32_t>(cx.count(dim)); ++k) {
        const auto& s = cx.simplex(dim, k);
        const auto faces = cx.faces(dim, k);
        ASSERT_EQ(faces.size(), s.size());
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
          // Downward closure: every face is present and indexed.
          const auto f = cx.find(s.without(drop));
          ASSERT_TRUE(f.has_value());
          EXPECT_NE(std::find(faces.begin(), faces.end(), *f), faces.end());
          const auto cof = cx.cofaces(dim - 1, *f);
          EXPECT_NE(std::find(cof.begin(), cof.end(), k), cof.end());
        }
      }
    }
  }
}

TEST(BuildFiltration, DefaultCutoffsNestedLevels) {
  Rng rng(7);
  const auto d = testing::random_matrix(rng, 8, 0.8, 5.0);
  const std::vector<double> cutoffs{2.0, 3.0, 4.0};
  const auto f = build_filtration(d, cutoffs);
  ASSERT_EQ(f.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(f.level(i).epsilon, cutoffs[i]);
    const auto direct = build_vr_complex(d, cutoffs[i], 2);
    for (int dim = 0; dim <= 2; ++dim) EXPECT_EQ(listed(f.level(i).complex, dim), listed(direct, dim));
  }
  for (std::size_t i = 0; i + 1 < 3; ++i) {
    for (int dim = 0; dim <= 2; ++dim) {
      for (const auto& s : f.level(i).complex.simplices(dim)) {
        EXPECT_TRUE(f.level(i + 1).complex.contains(s));
      }
    }
  }
}

TEST(BuildFiltration, SingleCutoffAndOrderErrors) {
  Rng rng(8);
  const auto d = testing::random_matrix(rng, 5);
  const std::vector<double> one{2.5};
  EXPECT_EQ(listed(build_filtration(d, one).level(0).complex, 1),
            listed(build_vr_complex(d, 2.5), 1));
  const std::vector<double> bad{3.0, 2.0};
  EXPECT_THROW(build_filtration(d, bad), ValidationError);
  const std::vector<double> flat{2.0, 2.0};
  EXPECT_THROW(build_filtration(d, flat), ValidationError);
}

TEST(UpperAdjacent, IsolatedTriangleEdge) {
  const auto cx = build_vr_complex(matrix_from({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}), 1.0);
  const auto nbrs = cx.upper_adjacent(Simplex{0, 1});
  ASSERT_EQ(nbrs.size(), 2u);
  for (const auto& u : nbrs) EXPECT_EQ(u.coface, 0);
  EXPECT_EQ(to_vector(cx.simplex(1, nbrs[0].neighbor)), (std::vector<int>{0, 2}));
  EXPECT_EQ(to_vector(cx.simplex(1, nbrs[1].neighbor)), (std::vector<int>{1, 2}));
}

TEST(UpperAdjacent, TwoVertexComplex) {
  const auto cx = build_vr_complex(matrix_from({{0, 1}, {1, 0}}), 1.0);
  const auto nbrs = cx.upper_adjacent(Simplex{0});
  ASSERT_EQ(nbrs.size(), 1u);
  EXPECT_EQ(nbrs[0].neighbor, 1);
  EXPECT_EQ(nbrs[0].coface, 0);
  EXPECT_THROW(cx.upper_adjacent(Simplex{0, 2}), ValidationError);
}

TEST(UpperAdjacent, MatchesCofaceOracleAndIsSymmetric) {
  Rng rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const auto d = testing::random_grid_matrix(rng, 8);
    const auto cx = build_vr_complex(d, 2.5, 3);
    for (int dim = 0; dim <= 2; ++dim) {
      for (std::int32_t k = 0; k < static_cast<std::int32_t>(cx.count(dim)); ++k) {
        const auto a = to_vector(cx.simplex(dim, k));
        std::multiset<std::pair<std::vector<int>, std::vector<int>>> expected, got;
        for (const auto& other : cx.simplices(dim)) {
          const auto b = to_vector(other);
          if (a == b) continue;
          if (testing::brute_shares_coface(cx, a, b)) expected.insert({b, testing::set_union(a, b)});
        }
        for (const auto& u : cx.upper_adjacent(dim, k)) {
          got.insert({to_vector(cx.simplex(dim, u.neighbor)), to_vector(cx.simplex(dim + 1, u.coface))});
          const auto back = cx.upper_adjacent(dim, u.neighbor);
          EXPECT_TRUE(std::any_of(back.begin(), back.end(), [&](const UpperNeighbor& x) {
            return x.neighbor == k && x.coface == u.coface;
          }));
        }
        ASSERT_EQ(got, expected);
      }
    }
  }
}

TEST(ParallelSimplices, FaceOnlyEdgesAreParallel) {
  // Path 0-1-2: edges share vertex 1 and no triangle.
  const auto cx = build_vr_complex(matrix_from({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}), 1.0);
  const auto par = cx.parallel(Simplex{0, 1});
  ASSERT_EQ(par.size(), 1u);
  EXPECT_EQ(par[0], (Simplex{1, 2}));
}

TEST(ParallelSimplices, TriangleEdgesAreNotParallel) {
  const auto cx = build_vr_complex(matrix_from({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}), 1.0);
  EXPECT_TRUE(cx.parallel(Simplex{0, 1}).empty());
}

TEST(ParallelSimplices, MatchesXorOracleAndIsSymmetric) {
  Rng rng(10);
  for (int trial = 0; trial < 40; ++trial) {
    const auto d = testing::random_grid_matrix(rng, 8);
    const auto cx = build_vr_complex(d, 2.0 + 0.25 * (trial % 8), 3);
    for (int dim = 0; dim <= 2; ++dim) {
      for (std::int32_t k = 0; k < static_cast<std::int32_t>(cx.count(dim)); ++k) {
        const auto& s = cx.simplex(dim, k);
        std::vector<std::vector<int>> got;
        for (const auto& p : cx.parallel(s)) got.push_back(to_vector(p));
        std::sort(got.begin(), got.end());
        ASSERT_EQ(got, testing::brute_parallel(cx, s));
        for (std::int32_t other : cx.parallel(dim, k)) {
          const auto back = cx.parallel(dim, other);
          EXPECT_NE(std::find(back.begin(), back.end(), k), back.end());
        }
      }
    }
  }
}

TEST(ComplexExport, TextFormat) {
  const auto cx = build_vr_complex(matrix_from({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}), 1.0);
  std::ostringstream out;
  write_complex_text(out, cx);
  EXPECT_EQ(out.str(),
            "# dim=0 count=3\n0\n1\n2\n# dim=1 count=3\n0 1\n0 2\n1 2\n# dim=2 count=1\n0 1 2\n");
}

}  // namespace
}  // namespace prips
