// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace prips {

enum class Hybridization { SP, SP2, SP3, Other };
enum class BondType { Single, Double, Triple, Aromatic };

std::string_view to_string(Hybridization h);
std::string_view to_string(BondType t);

struct AtomRecord {
  int index = 0;
  std::string element;
  int degree = 0;
  int implicit_valence = 0;
  int formal_charge = 0;
  int radical_electrons = 0;
  Hybridization hybridization = Hybridization::Other;
  bool aromatic = false;
  bool is_anchor = false;  // the "*" polymerization site
};

struct BondRecord {
  int i = 0;
  int j = 0;
  BondType type = BondType::Single;
  bool conjugated = false;
  bool in_ring = false;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Coordinates of one cyclic permutation, indexed by canonical atom index.
struct CoordinateFrame {
  int permutation_id = 0;
  std::vector<Vec3> coords;
};

struct UnitMeta {
  std::string name;
  std::string psmiles;  // stored verbatim, never parsed
  std::string family;
  std::string substitution_key;
};

/// One repeating unit of a linear homopolymer. Immutable once parsed.
struct RepeatingUnit {
  std::vector<AtomRecord> atoms;
  std::vector<BondRecord> bonds;
  std::vector<CoordinateFrame> frames;
  UnitMeta meta;

  std::size_t size() const { return atoms.size(); }

  /// The two anchor indices in ascending order. Throws if there are not two.
  std::pair<int, int> anchors() const;

  /// Sorted neighbor lists of the covalent graph.
  std::vector<std::vector<int>> adjacency() const;

  /// Covalent bond between i and j, if any.
  const BondRecord* find_bond(int i, int j) const;
};

/// Parses the JSON repeating-unit document (format "prips-unit/1").
/// Throws ParseError for malformed documents and ValidationError for
/// invariant violations (anchor count, duplicate bonds, frame size, ...).
RepeatingUnit parse_repeating_unit(std::istream& in);
RepeatingUnit parse_repeating_unit(std::string_view text);
RepeatingUnit load_repeating_unit(const std::string& path);

/// Checks the structural invariants of an already-built unit.
void validate_unit(const RepeatingUnit& unit);

std::string write_repeating_unit(const RepeatingUnit& unit);

/// Copy of `unit` with atom a moved to index perm[a] (bonds and frames too).
RepeatingUnit relabel_atoms(const RepeatingUnit& unit, const std::vector<int>& perm);

// --- cyclic permutations of the backbone ------------------------------------

struct BackboneDecomposition {
  std::vector<int> path;  // anchor, backbone atoms..., anchor
  // Fragments in backbone order; each lists its atoms in ascending index.
  std::vector<std::vector<int>> fragments;
  std::vector<int> fragment_of;  // atom -> fragment, -1 for anchors
};

/// Shortest anchor-to-anchor path (ties broken by the lexicographically
/// smallest index sequence), cut at non-ring backbone bonds.
BackboneDecomposition decompose_backbone(const RepeatingUnit& unit);

struct PermutationSpec {
  int rotation = 0;                 // index of the first fragment
  std::vector<int> fragment_order;  // cyclic rotation of 0..F-1
  std::vector<int> atom_map;        // canonical atom -> position in permuted unit
};

/// All distinct cyclic rotations of the backbone fragments. Rotations whose
/// refined canonical graph forms coincide are dropped, keeping the first.
std::vector<PermutationSpec> enumerate_cyclic_permutations(const RepeatingUnit& unit);

/// Covalent graph of the unit re-cut at the start of fragment `rotation`.
struct BondGraph {
  std::size_t n = 0;
  std::vector<BondRecord> bonds;
};
BondGraph rotated_bond_graph(const RepeatingUnit& unit, const BackboneDecomposition& bb,
                             int rotation);

enum class Severity { Warning, Error };

struct Diagnostic {
  Severity severity = Severity::Warning;
  std::string message;
  std::optional<int> frame;
  std::optional<int> atom;
};

/// Read-only consistency report between frames and permutation specs.
std::vector<Diagnostic> validate_frames(const RepeatingUnit& unit,
                                        const std::vector<PermutationSpec>& specs);

}  // namespace prips
