// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#include "prips/features.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "prips/error.hpp"
#include "prips/log.hpp"

namespace prips {
namespace {

std::size_t clamp_slot(int value, int lo, int hi, const char* what, const AtomRecord& atom) {
  if (value < lo || value > hi) {
    warn(std::string(what) + " " + std::to_string(value) + " on atom " +
         std::to_string(atom.index) + " clamped to [" + std::to_string(lo) + ", " +
         std::to_string(hi) + "]");
  }
  return static_cast<std::size_t>(std::clamp(value, lo, hi) - lo);
}

}  // namespace

std::array<double, schema::kAtomWidth> atom_feature_vector(const AtomRecord& atom) {
  using namespace schema;
  std::array<double, kAtomWidth> x{};
  auto it = std::find(kElements.begin(), kElements.end(), atom.element);
  if (it != kElements.end()) {
    x[kElementOffset + static_cast<std::size_t>(it - kElements.begin())] = 1.0;
  } else {
    warn("element '" + atom.element + "' is outside the vocabulary; element slots left zero");
  }
  x[kDegreeOffset + clamp_slot(atom.degree, 0, 5, "degree", atom)] = 1.0;
  x[kValenceOffset + clamp_slot(atom.implicit_valence, 0, 6, "implicit valence", atom)] = 1.0;
  x[kChargeOffset + clamp_slot(atom.formal_charge, -2, 2, "formal charge", atom)] = 1.0;
  x[kRadicalOffset + clamp_slot(atom.radical_electrons, 0, 3, "radical electrons", atom)] = 1.0;
  x[kHybridOffset + static_cast<std::size_t>(atom.hybridization)] = 1.0;
  x[kAromaticOffset] = atom.aromatic ? 1.0 : 0.0;
  return x;
}

std::array<double, schema::kBondWidth> bond_feature_vector(const BondRecord* bond) {
  std::array<double, schema::kBondWidth> x{};
  if (!bond) return x;
  x[static_cast<std::size_t>(bond->type)] = 1.0;
  x[4] = bond->conjugated ? 1.0 : 0.0;
  x[5] = bond->in_ring ? 1.0 : 0.0;
  return x;
}

std::optional<BondRecord> covalent_bond(const RepeatingUnit& unit, int i, int j) {
  if (const BondRecord* b = unit.find_bond(i, j)) return *b;
  // The seam: the atoms bonded to the two anchors are bonded to each other
  // across neighboring units.
  const auto [s, e] = unit.anchors();
  auto sole_neighbor = [&](int anchor) -> const BondRecord* {
    const BondRecord* found = nullptr;
    for (const auto& b : unit.bonds) {
      if (b.i == anchor || b.j == anchor) {
        if (found) return nullptr;
        found = &b;
      }
    }
    return found;
  };
  const BondRecord* bs = sole_neighbor(s);
  const BondRecord* be = sole_neighbor(e);
  if (!bs || !be) return std::nullopt;
  const int first = bs->i == s ? bs->j : bs->i;
  const int last = be->i == e ? be->j : be->i;
  if (first == last || unit.atoms[first].is_anchor || unit.atoms[last].is_anchor) return std::nullopt;
  if (std::minmax(i, j) != std::minmax(first, last)) return std::nullopt;
  BondRecord seam = *bs;
  seam.i = std::min(i, j);
  seam.j = std::max(i, j);
  return seam;
}

SimplexFeatureSet assemble_level_features(const RepeatingUnit& unit,
                                          const SimplicialComplex& complex,
                                          const LevelCurvature& curvature) {
  using namespace schema;
  if (complex.vertex_count() != unit.size()) {
    throw ValidationError("complex has " + std::to_string(complex.vertex_count()) +
                          " vertices but the unit has " + std::to_string(unit.size()) + " atoms");
  }
  const int top = std::min(complex.max_dim(), 2);
  if (static_cast<int>(curvature.by_dim.size()) <= top) {
    throw ValidationError("curvature profiles missing for dimension " + std::to_string(top));
  }
  for (int dim = 0; dim <= top; ++dim) {
    if (curvature.by_dim[dim].size() != complex.count(dim)) {
      throw ValidationError("curvature profiles do not cover every simplex of dimension " +
                            std::to_string(dim));
    }
    for (const auto& p : curvature.by_dim[dim]) {
      if (p.normalized.size() != kCurvatureWidth) {
        throw ValidationError("curvature profile must have 5 entries");
      }
    }
  }

  SimplexFeatureSet out;
  out.epsilon = complex.epsilon();
  out.vertex = Matrix(complex.count(0), kVertexFeatureWidth);
  for (std::size_t v = 0; v < complex.count(0); ++v) {
    const auto chem = atom_feature_vector(unit.atoms[v]);
    auto row = out.vertex.row(v);
    std::copy(chem.begin(), chem.end(), row.begin());
    const auto& curv = curvature.by_dim[0][v].normalized;
    std::copy(curv.begin(), curv.end(), row.begin() + kAtomWidth);
  }

  out.edge = Matrix(complex.count(1), kEdgeFeatureWidth);
  for (std::size_t e = 0; e < complex.count(1); ++e) {
    const auto& s = complex.simplex(1, static_cast<std::int32_t>(e));
    const auto bond = covalent_bond(unit, s[0], s[1]);
    const auto chem = bond_feature_vector(bond ? &*bond : nullptr);
    auto row = out.edge.row(e);
    std::copy(chem.begin(), chem.end(), row.begin());
    const auto& curv = curvature.by_dim[1][e].normalized;
    std::copy(curv.begin(), curv.end(), row.begin() + kBondWidth);
  }

  out.triangle = Matrix(complex.count(2), kTriangleFeatureWidth);
  for (std::size_t f = 0; f < complex.count(2); ++f) {
    const auto& curv = curvature.by_dim[2][f].normalized;
    std::copy(curv.begin(), curv.end(), out.triangle.row(f).begin());
  }
  return out;
}

std::vector<SimplexFeatureSet> assemble_features(const RepeatingUnit& unit,
                                                 const Filtration& filtration,
                                                 std::span<const LevelCurvature> curvature) {
  if (curvature.size() != filtration.size()) {
    throw ValidationError("missing curvature profiles for some filtration levels");
  }
  std::vector<SimplexFeatureSet> out;
  for (std::size_t i = 0; i < filtration.size(); ++i) {
    out.push_back(assemble_level_features(unit, filtration.level(i).complex, curvature[i]));
  }
  return out;
}

}  // namespace prips
