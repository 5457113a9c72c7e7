// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <tuple>

#include "prips/error.hpp"
#include "prips/polymer.hpp"

namespace prips {
namespace {

// Bonds whose removal disconnects the graph; every other bond lies on a ring.
std::set<std::pair<int, int>> find_bridges(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> order(n, -1), low(n, 0);
  std::set<std::pair<int, int>> bridges;
  int counter = 0;
  std::function<void(int, int)> dfs = [&](int u, int parent) {
    order[u] = low[u] = counter++;
    bool skipped_parent = false;
    for (int v : adj[u]) {
      if (v == parent && !skipped_parent) {
        skipped_parent = true;
        continue;
      }
      if (order[v] < 0) {
        dfs(v, u);
        low[u] = std::min(low[u], low[v]);
        if (low[v] > order[u]) bridges.insert(std::minmax(u, v));
      } else {
        low[u] = std::min(low[u], order[v]);
      }
    }
  };
  for (int u = 0; u < n; ++u) {
    if (order[u] < 0) dfs(u, -1);
  }
  return bridges;
}

std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj, int source) {
  std::vector<int> dist(adj.size(), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

using CanonicalForm = std::pair<std::vector<int>, std::vector<std::tuple<int, int, int>>>;

// Color refinement run jointly over all graphs so colors are comparable.
std::vector<CanonicalForm> refined_forms(const RepeatingUnit& unit,
                                         const std::vector<BondGraph>& graphs) {
  const std::size_t n = unit.size();
  std::map<std::string, int> initial;
  std::vector<int> base(n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto& r = unit.atoms[a];
    std::string key = r.element + '|' + std::to_string(r.aromatic) + '|' +
                      std::to_string(r.formal_charge) + '|' +
                      std::to_string(r.implicit_valence) + '|' +
                      std::to_string(r.radical_electrons) + '|' + std::to_string(r.is_anchor);
    auto [it, inserted] = initial.emplace(key, static_cast<int>(initial.size()));
    base[a] = it->second;
  }

  struct Adj {
    std::vector<std::vector<std::pair<int, int>>> nbrs;  // (neighbor, bond type)
  };
  std::vector<Adj> adjs(graphs.size());
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    adjs[g].nbrs.resize(n);
    for (const auto& b : graphs[g].bonds) {
      adjs[g].nbrs[b.i].push_back({b.j, static_cast<int>(b.type)});
      adjs[g].nbrs[b.j].push_back({b.i, static_cast<int>(b.type)});
    }
  }

  std::vector<std::vector<int>> colors(graphs.size(), base);
  std::size_t classes = initial.size();
  for (std::size_t round = 0; round < n; ++round) {
    std::map<std::vector<int>, int> dictionary;
    std::vector<std::vector<int>> next(graphs.size(), std::vector<int>(n));
    for (std::size_t g = 0; g < graphs.size(); ++g) {
      for (std::size_t a = 0; a < n; ++a) {
        std::vector<std::pair<int, int>> around;
        for (auto [v, type] : adjs[g].nbrs[a]) around.push_back({type, colors[g][v]});
        std::sort(around.begin(), around.end());
        std::vector<int> sig{colors[g][a]};
        for (auto [type, c] : around) {
          sig.push_back(type);
          sig.push_back(c);
        }
        auto [it, inserted] = dictionary.emplace(sig, 0);
        if (inserted) it->second = static_cast<int>(dictionary.size()) - 1;
        next[g][a] = it->second;
      }
    }
    // The dictionary is ordered, so renumber by signature order for stability.
    std::map<int, int> renumber;
    int rank = 0;
    for (auto& [sig, id] : dictionary) renumber[id] = rank++;
    for (auto& row : next) {
      for (auto& c : row) c = renumber[c];
    }
    colors = std::move(next);
    if (dictionary.size() == classes) break;
    classes = dictionary.size();
  }

  std::vector<CanonicalForm> forms;
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    CanonicalForm form;
    form.first = colors[g];
    std::sort(form.first.begin(), form.first.end());
    for (const auto& b : graphs[g].bonds) {
      int ci = colors[g][b.i], cj = colors[g][b.j];
      form.second.emplace_back(std::min(ci, cj), std::max(ci, cj), static_cast<int>(b.type));
    }
    std::sort(form.second.begin(), form.second.end());
    forms.push_back(std::move(form));
  }
  return forms;
}

}  // namespace

BackboneDecomposition decompose_backbone(const RepeatingUnit& unit) {
  const int n = static_cast<int>(unit.size());
  const auto [start, end] = unit.anchors();
  const auto adj = unit.adjacency();

  const auto from_start = bfs_distances(adj, start);
  if (std::any_of(from_start.begin(), from_start.end(), [](int d) { return d < 0; })) {
    throw ValidationError("covalent graph is disconnected");
  }
  const auto to_end = bfs_distances(adj, end);
  if (to_end[start] < 0) throw ValidationError("no anchor-to-anchor path");

  BackboneDecomposition bb;
  bb.path.push_back(start);
  int cur = start;
  while (cur != end) {
    int next = -1;
    for (int v : adj[cur]) {  // adjacency is sorted: first hit is the smallest index
      if (to_end[v] == to_end[cur] - 1) {
        next = v;
        break;
      }
    }
    bb.path.push_back(next);
    cur = next;
  }
  const std::size_t m = bb.path.size() - 2;
  if (m == 0) throw ValidationError("anchors are bonded directly; unit has no backbone");
  for (std::size_t k = 1; k + 1 < bb.path.size(); ++k) {
    if (unit.atoms[bb.path[k]].is_anchor) throw ValidationError("backbone passes through an anchor");
  }

  const auto bridges = find_bridges(adj);
  std::set<std::pair<int, int>> cut;
  for (std::size_t k = 1; k + 1 < m + 1; ++k) {
    auto key = std::minmax(bb.path[k], bb.path[k + 1]);
    if (bridges.count(key)) cut.insert(key);
  }

  // Fragments: components after removing anchors and breakable backbone bonds.
  bb.fragment_of.assign(n, -1);
  std::vector<int> component(n, -1);
  int count = 0;
  for (int seed = 0; seed < n; ++seed) {
    if (unit.atoms[seed].is_anchor || component[seed] >= 0) continue;
    std::vector<int> stack{seed};
    component[seed] = count;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u]) {
        if (unit.atoms[v].is_anchor || component[v] >= 0) continue;
        if (cut.count(std::minmax(u, v))) continue;
        component[v] = count;
        stack.push_back(v);
      }
    }
    ++count;
  }

  // Order components by where they first meet the backbone.
  std::vector<int> order;
  for (std::size_t k = 1; k <= m; ++k) {
    int c = component[bb.path[k]];
    if (std::find(order.begin(), order.end(), c) == order.end()) order.push_back(c);
  }
  if (static_cast<int>(order.size()) != count) {
    throw ValidationError("side chain attached only through an anchor");
  }
  std::vector<int> rank(count);
  for (int f = 0; f < count; ++f) rank[order[f]] = f;
  bb.fragments.assign(count, {});
  for (int a = 0; a < n; ++a) {
    if (component[a] < 0) continue;
    bb.fragment_of[a] = rank[component[a]];
    bb.fragments[rank[component[a]]].push_back(a);
  }
  return bb;
}

BondGraph rotated_bond_graph(const RepeatingUnit& unit, const BackboneDecomposition& bb,
                             int rotation) {
  BondGraph graph{unit.size(), unit.bonds};
  const int fragments = static_cast<int>(bb.fragments.size());
  if (rotation < 0 || rotation >= fragments) throw ValidationError("rotation out of range");
  if (rotation == 0) return graph;

  const std::size_t m = bb.path.size() - 2;
  const int start = bb.path.front(), end = bb.path.back();
  const int first = bb.path[1], last = bb.path[m];
  int x = -1, y = -1;  // the backbone bond that becomes the new seam
  for (std::size_t k = 1; k < m; ++k) {
    if (bb.fragment_of[bb.path[k]] == rotation - 1 && bb.fragment_of[bb.path[k + 1]] == rotation) {
      x = bb.path[k];
      y = bb.path[k + 1];
    }
  }
  const BondRecord* seam_src = unit.find_bond(start, first);
  const BondRecord* cut_src = unit.find_bond(x, y);

  auto drop = [&](int i, int j) {
    std::erase_if(graph.bonds, [&](const BondRecord& b) {
      return (b.i == i && b.j == j) || (b.i == j && b.j == i);
    });
  };
  drop(start, first);
  drop(end, last);
  drop(x, y);
  BondRecord seam = *seam_src;
  seam.i = std::min(first, last);
  seam.j = std::max(first, last);
  graph.bonds.push_back(seam);
  BondRecord head = *cut_src, tail = *cut_src;
  head.i = start;
  head.j = y;
  tail.i = end;
  tail.j = x;
  graph.bonds.push_back(head);
  graph.bonds.push_back(tail);
  return graph;
}

std::vector<PermutationSpec> enumerate_cyclic_permutations(const RepeatingUnit& unit) {
  const auto bb = decompose_backbone(unit);
  const int fragments = static_cast<int>(bb.fragments.size());
  const int n = static_cast<int>(unit.size());

  std::vector<BondGraph> graphs;
  for (int r = 0; r < fragments; ++r) graphs.push_back(rotated_bond_graph(unit, bb, r));
  const auto forms = refined_forms(unit, graphs);

  std::vector<PermutationSpec> specs;
  std::vector<const CanonicalForm*> kept;
  for (int r = 0; r < fragments; ++r) {
    bool duplicate = std::any_of(kept.begin(), kept.end(),
                                 [&](const CanonicalForm* f) { return *f == forms[r]; });
    if (duplicate) continue;
    kept.push_back(&forms[r]);

    PermutationSpec spec;
    spec.rotation = r;
    spec.atom_map.assign(n, -1);
    int pos = 0;
    spec.atom_map[bb.path.front()] = pos++;
    for (int k = 0; k < fragments; ++k) {
      int f = (r + k) % fragments;
      spec.fragment_order.push_back(f);
      for (int a : bb.fragments[f]) spec.atom_map[a] = pos++;
    }
    spec.atom_map[bb.path.back()] = pos++;
    specs.push_back(std::move(spec));
  }
  return specs;
}

std::vector<Diagnostic> validate_frames(const RepeatingUnit& unit,
                                        const std::vector<PermutationSpec>& specs) {
  std::vector<Diagnostic> out;
  const std::size_t k = unit.frames.size();
  if (k != specs.size()) {
    if (k == 1 && specs.size() > 1) {
      out.push_back({Severity::Warning,
                     "single-frame mode: 1 frame for " + std::to_string(specs.size()) +
                         " cyclic permutations; periodic matrix equals the intra-unit matrix",
                     std::nullopt, std::nullopt});
    } else {
      out.push_back({Severity::Warning,
                     "frame count " + std::to_string(k) + " does not match " +
                         std::to_string(specs.size()) + " cyclic permutations",
                     std::nullopt, std::nullopt});
    }
  }
  for (std::size_t f = 0; f < k; ++f) {
    const auto& frame = unit.frames[f];
    if (frame.coords.size() != unit.size()) {
      out.push_back({Severity::Error,
                     "frame size " + std::to_string(frame.coords.size()) + " != atom count " +
                         std::to_string(unit.size()),
                     static_cast<int>(f), std::nullopt});
      continue;
    }
    for (std::size_t a = 0; a < frame.coords.size(); ++a) {
      const auto& p = frame.coords[a];
      if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
        out.push_back({Severity::Error, "non-finite coordinate at atom " + std::to_string(a),
                       static_cast<int>(f), static_cast<int>(a)});
      }
    }
  }
  return out;
}

}  // namespace prips
