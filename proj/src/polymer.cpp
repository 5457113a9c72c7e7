// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#include "prips/polymer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "prips/error.hpp"

namespace prips {

using nlohmann::json;

std::string_view to_string(Hybridization h) {
  switch (h) {
    case Hybridization::SP: return "SP";
    case Hybridization::SP2: return "SP2";
    case Hybridization::SP3: return "SP3";
    case Hybridization::Other: return "other";
  }
  return "other";
}

std::string_view to_string(BondType t) {
  switch (t) {
    case BondType::Single: return "single";
    case BondType::Double: return "double";
    case BondType::Triple: return "triple";
    case BondType::Aromatic: return "aromatic";
  }
  return "single";
}

namespace {

Hybridization parse_hybridization(const std::string& s) {
  if (s == "SP" || s == "sp") return Hybridization::SP;
  if (s == "SP2" || s == "sp2") return Hybridization::SP2;
  if (s == "SP3" || s == "sp3") return Hybridization::SP3;
  return Hybridization::Other;
}

BondType parse_bond_type(const std::string& s) {
  if (s == "single") return BondType::Single;
  if (s == "double") return BondType::Double;
  if (s == "triple") return BondType::Triple;
  if (s == "aromatic") return BondType::Aromatic;
  throw ParseError("unknown bond type '" + s + "'");
}

template <typename T>
T field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ParseError(where + ": field '" + key + "' has the wrong type");
  }
}

template <typename T>
T field_or(const json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  return field<T>(obj, key, where);
}

RepeatingUnit from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("document must be a JSON object");
  for (const char* key : {"atoms", "bonds", "frames"}) {
    if (!doc.contains(key) || !doc[key].is_array()) {
      throw ParseError(std::string("missing array '") + key + "'");
    }
  }

  RepeatingUnit unit;
  const auto& atoms = doc["atoms"];
  unit.atoms.reserve(atoms.size());
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const auto& a = atoms[k];
    const std::string where = "atoms[" + std::to_string(k) + "]";
    if (!a.is_object()) throw ParseError(where + ": expected an object");
    AtomRecord rec;
    rec.index = field_or<int>(a, "index", static_cast<int>(k), where);
    rec.element = field<std::string>(a, "element", where);
    rec.degree = field<int>(a, "degree", where);
    rec.implicit_valence = field_or<int>(a, "implicit_valence", 0, where);
    rec.formal_charge = field_or<int>(a, "formal_charge", 0, where);
    rec.radical_electrons = field_or<int>(a, "radical_electrons", 0, where);
    rec.hybridization =
        parse_hybridization(field_or<std::string>(a, "hybridization", "other", where));
    rec.aromatic = field_or<bool>(a, "aromatic", false, where);
    rec.is_anchor = field_or<bool>(a, "is_anchor", false, where);
    unit.atoms.push_back(std::move(rec));
  }
  std::sort(unit.atoms.begin(), unit.atoms.end(),
            [](const AtomRecord& l, const AtomRecord& r) { return l.index < r.index; });
  for (std::size_t k = 0; k < unit.atoms.size(); ++k) {
    if (unit.atoms[k].index != static_cast<int>(k)) {
      throw ValidationError("atom indices must be exactly 0..N-1 without duplicates");
    }
  }

  for (std::size_t k = 0; k < doc["bonds"].size(); ++k) {
    const auto& b = doc["bonds"][k];
    const std::string where = "bonds[" + std::to_string(k) + "]";
    if (!b.is_object()) throw ParseError(where + ": expected an object");
    BondRecord rec;
    rec.i = field<int>(b, "i", where);
    rec.j = field<int>(b, "j", where);
    rec.type = parse_bond_type(field_or<std::string>(b, "type", "single", where));
    rec.conjugated = field_or<bool>(b, "conjugated", false, where);
    rec.in_ring = field_or<bool>(b, "in_ring", false, where);
    unit.bonds.push_back(rec);
  }

  for (std::size_t k = 0; k < doc["frames"].size(); ++k) {
    const auto& f = doc["frames"][k];
    const std::string where = "frames[" + std::to_string(k) + "]";
    CoordinateFrame frame;
    const json* rows = &f;
    if (f.is_object()) {
      frame.permutation_id = field_or<int>(f, "permutation_id", static_cast<int>(k), where);
      if (!f.contains("coords")) throw ParseError(where + ": missing field 'coords'");
      rows = &f["coords"];
    } else {
      frame.permutation_id = static_cast<int>(k);
    }
    if (!rows->is_array()) throw ParseError(where + ": coordinates must be an array");
    for (const auto& row : *rows) {
      if (!row.is_array() || row.size() != 3 || !row[0].is_number() || !row[1].is_number() ||
          !row[2].is_number()) {
        throw ParseError(where + ": each coordinate row must hold three numbers");
      }
      frame.coords.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
    }
    unit.frames.push_back(std::move(frame));
  }

  if (doc.contains("meta")) {
    const auto& m = doc["meta"];
    if (!m.is_object()) throw ParseError("'meta' must be an object");
    unit.meta.name = field_or<std::string>(m, "name", "", "meta");
    unit.meta.psmiles = field_or<std::string>(m, "psmiles", "", "meta");
    unit.meta.family = field_or<std::string>(m, "family", "", "meta");
    unit.meta.substitution_key = field_or<std::string>(m, "substitution_key", "", "meta");
  }

  validate_unit(unit);
  return unit;
}

}  // namespace

std::pair<int, int> RepeatingUnit::anchors() const {
  std::vector<int> found;
  for (const auto& a : atoms) {
    if (a.is_anchor) found.push_back(a.index);
  }
  if (found.size() != 2) {
    throw ValidationError("anchor count must be 2, found " + std::to_string(found.size()));
  }
  return {found[0], found[1]};
}

std::vector<std::vector<int>> RepeatingUnit::adjacency() const {
  std::vector<std::vector<int>> adj(atoms.size());
  for (const auto& b : bonds) {
    adj[b.i].push_back(b.j);
    adj[b.j].push_back(b.i);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

const BondRecord* RepeatingUnit::find_bond(int i, int j) const {
  for (const auto& b : bonds) {
    if ((b.i == i && b.j == j) || (b.i == j && b.j == i)) return &b;
  }
  return nullptr;
}

void validate_unit(const RepeatingUnit& unit) {
  const int n = static_cast<int>(unit.atoms.size());
  if (n == 0) throw ValidationError("unit has no atoms");
  for (int k = 0; k < n; ++k) {
    const auto& a = unit.atoms[k];
    if (a.index != k) throw ValidationError("atom records must be in canonical index order");
    if (a.degree < 0) throw ValidationError("negative degree on atom " + std::to_string(k));
  }
  (void)unit.anchors();

  std::set<std::pair<int, int>> seen;
  for (const auto& b : unit.bonds) {
    if (b.i < 0 || b.j < 0 || b.i >= n || b.j >= n) {
      throw ValidationError("bond references a missing atom (" + std::to_string(b.i) + "," +
                            std::to_string(b.j) + ")");
    }
    if (b.i == b.j) throw ValidationError("self bond on atom " + std::to_string(b.i));
    auto key = std::minmax(b.i, b.j);
    if (!seen.insert({key.first, key.second}).second) {
      throw ValidationError("duplicate bond (" + std::to_string(key.first) + "," +
                            std::to_string(key.second) + ")");
    }
  }

  if (unit.frames.empty()) throw ValidationError("unit has no coordinate frames");
  for (std::size_t k = 0; k < unit.frames.size(); ++k) {
    const auto& f = unit.frames[k];
    if (f.coords.size() != unit.atoms.size()) {
      throw ValidationError("frame size mismatch: frame " + std::to_string(k) + " has " +
                            std::to_string(f.coords.size()) + " rows, expected " +
                            std::to_string(n));
    }
    for (std::size_t a = 0; a < f.coords.size(); ++a) {
      const auto& p = f.coords[a];
      if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
        throw ValidationError("non-finite coordinate in frame " + std::to_string(k) +
                              " atom " + std::to_string(a));
      }
    }
  }

  // connectivity
  auto adj = unit.adjacency();
  std::vector<char> seen_atom(n, 0);
  std::vector<int> stack{0};
  seen_atom[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[u]) {
      if (!seen_atom[v]) {
        seen_atom[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  if (reached != n) throw ValidationError("covalent graph is disconnected");
}

RepeatingUnit parse_repeating_unit(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
  return from_json(doc);
}

RepeatingUnit parse_repeating_unit(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
  return from_json(doc);
}

RepeatingUnit load_repeating_unit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_repeating_unit(in);
}

std::string write_repeating_unit(const RepeatingUnit& unit) {
  json doc;
  doc["format"] = "prips-unit/1";
  json meta = json::object();
  if (!unit.meta.name.empty()) meta["name"] = unit.meta.name;
  if (!unit.meta.psmiles.empty()) meta["psmiles"] = unit.meta.psmiles;
  if (!unit.meta.family.empty()) meta["family"] = unit.meta.family;
  if (!unit.meta.substitution_key.empty()) meta["substitution_key"] = unit.meta.substitution_key;
  doc["meta"] = meta;
  json atoms = json::array();
  for (const auto& a : unit.atoms) {
    atoms.push_back({{"index", a.index},
                     {"element", a.element},
                     {"degree", a.degree},
                     {"implicit_valence", a.implicit_valence},
                     {"formal_charge", a.formal_charge},
                     {"radical_electrons", a.radical_electrons},
                     {"hybridization", std::string(to_string(a.hybridization))},
                     {"aromatic", a.aromatic},
                     {"is_anchor", a.is_anchor}});
  }
  doc["atoms"] = atoms;
  json bonds = json::array();
  for (const auto& b : unit.bonds) {
    bonds.push_back({{"i", b.i},
                     {"j", b.j},
                     {"type", std::string(to_string(b.type))},
                     {"conjugated", b.conjugated},
                     {"in_ring", b.in_ring}});
  }
  doc["bonds"] = bonds;
  json frames = json::array();
  for (const auto& f : unit.frames) {
    json rows = json::array();
    for (const auto& p : f.coords) rows.push_back({p.x, p.y, p.z});
    frames.push_back({{"permutation_id", f.permutation_id}, {"coords", rows}});
  }
  doc["frames"] = frames;
  return doc.dump(1);
}

RepeatingUnit relabel_atoms(const RepeatingUnit& unit, const std::vector<int>& perm) {
  const std::size_t n = unit.size();
  if (perm.size() != n) throw ValidationError("relabeling has the wrong length");
  RepeatingUnit out = unit;
  for (std::size_t a = 0; a < n; ++a) {
    AtomRecord rec = unit.atoms[a];
    rec.index = perm[a];
    out.atoms[perm[a]] = rec;
  }
  for (auto& b : out.bonds) {
    b.i = perm[b.i];
    b.j = perm[b.j];
  }
  for (std::size_t k = 0; k < unit.frames.size(); ++k) {
    for (std::size_t a = 0; a < n; ++a) out.frames[k].coords[perm[a]] = unit.frames[k].coords[a];
  }
  return out;
}

}  // namespace prips
