// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prips/complex.hpp"
#include "prips/curvature.hpp"
#include "prips/polymer.hpp"

namespace prips {

/// Row-major dense matrix of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
};

// Feature layout. Atom vector (70): element one-hot 43, degree 0-5 (6),
// implicit valence 0-6 (7), formal charge -2..+2 (5), radical electrons 0-3
// (4), hybridization SP/SP2/SP3/other (4), aromatic flag (1).
// Bond vector (6): single/double/triple/aromatic one-hot, conjugated, in ring.
namespace schema {

inline constexpr std::string_view kVersion = "prips-features/1";

inline constexpr std::array<std::string_view, 43> kElements = {
    "*",  "H",  "B",  "C",  "N",  "O",  "F",  "Si", "P",  "S",  "Cl",
    "Br", "I",  "Li", "Na", "K",  "Mg", "Ca", "Al", "Ge", "Se", "Sn",
    "Te", "As", "Sb", "Bi", "Zn", "Cu", "Fe", "Co", "Ni", "Ti", "Zr",
    "Cr", "Mn", "Pt", "Pd", "Ag", "Au", "Hg", "Pb", "Cd", "Ga"};

inline constexpr std::size_t kElementWidth = kElements.size();
inline constexpr std::size_t kDegreeWidth = 6;
inline constexpr std::size_t kValenceWidth = 7;
inline constexpr std::size_t kChargeWidth = 5;
inline constexpr std::size_t kRadicalWidth = 4;
inline constexpr std::size_t kHybridWidth = 4;
inline constexpr std::size_t kAromaticWidth = 1;

inline constexpr std::size_t kElementOffset = 0;
inline constexpr std::size_t kDegreeOffset = kElementOffset + kElementWidth;
inline constexpr std::size_t kValenceOffset = kDegreeOffset + kDegreeWidth;
inline constexpr std::size_t kChargeOffset = kValenceOffset + kValenceWidth;
inline constexpr std::size_t kRadicalOffset = kChargeOffset + kChargeWidth;
inline constexpr std::size_t kHybridOffset = kRadicalOffset + kRadicalWidth;
inline constexpr std::size_t kAromaticOffset = kHybridOffset + kHybridWidth;
inline constexpr std::size_t kAtomWidth = kAromaticOffset + kAromaticWidth;

inline constexpr std::size_t kBondWidth = 6;
inline constexpr std::size_t kCurvatureWidth = 5;

inline constexpr std::size_t kVertexFeatureWidth = kAtomWidth + kCurvatureWidth;
inline constexpr std::size_t kEdgeFeatureWidth = kBondWidth + kCurvatureWidth;
inline constexpr std::size_t kTriangleFeatureWidth = kCurvatureWidth;

static_assert(kAtomWidth == 70);
static_assert(kVertexFeatureWidth == 75 && kEdgeFeatureWidth == 11);

}  // namespace schema

std::array<double, schema::kAtomWidth> atom_feature_vector(const AtomRecord& atom);

/// Zero vector when `bond` is null (VR edge without a covalent bond).
std::array<double, schema::kBondWidth> bond_feature_vector(const BondRecord* bond);

/// Covalent bond joining atoms i and j, including the bond that closes the
/// chain across the unit boundary (anchor neighbors). Null if none.
std::optional<BondRecord> covalent_bond(const RepeatingUnit& unit, int i, int j);

/// Initial simplex features of one filtration level. Rows follow the level's
/// canonical simplex order.
struct SimplexFeatureSet {
  double epsilon = 0.0;
  Matrix vertex;    // N x 75
  Matrix edge;      // E x 11
  Matrix triangle;  // F x 5
};

SimplexFeatureSet assemble_level_features(const RepeatingUnit& unit,
                                          const SimplicialComplex& complex,
                                          const LevelCurvature& curvature);

std::vector<SimplexFeatureSet> assemble_features(const RepeatingUnit& unit,
                                                 const Filtration& filtration,
                                                 std::span<const LevelCurvature> curvature);

}  // namespace prips
