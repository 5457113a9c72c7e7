// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#include "prips/complex.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

#include "prips/error.hpp"

namespace prips {

Simplex::Simplex(std::initializer_list<std::int32_t> vertices)
    : Simplex(std::span<const std::int32_t>(vertices.begin(), vertices.size())) {}

Simplex::Simplex(std::span<const std::int32_t> vertices) {
  if (vertices.empty() || vertices.size() > v_.size()) {
    throw std::invalid_argument("simplex must have between 1 and 4 vertices");
  }
  std::copy(vertices.begin(), vertices.end(), v_.begin());
  size_ = vertices.size();
  std::sort(v_.begin(), v_.begin() + size_);
  if (std::adjacent_find(v_.begin(), v_.begin() + size_) != v_.begin() + size_) {
    throw std::invalid_argument("simplex vertices must be distinct");
  }
}

Simplex Simplex::without(std::size_t skip) const {
  Simplex face;
  for (std::size_t i = 0; i < size_; ++i) {
    if (i != skip) face.v_[face.size_++] = v_[i];
  }
  return face;
}

bool Simplex::contains(std::int32_t vertex) const {
  return std::find(v_.begin(), v_.begin() + size_, vertex) != v_.begin() + size_;
}

bool operator<(const Simplex& a, const Simplex& b) {
  return std::lexicographical_compare(a.v_.begin(), a.v_.begin() + a.size_, b.v_.begin(),
                                      b.v_.begin() + b.size_);
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (auto v : s.vertices()) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

int SimplicialComplex::dimension() const {
  for (int d = static_cast<int>(levels_.size()) - 1; d >= 0; --d) {
    if (!levels_[d].simplices.empty()) return d;
  }
  return -1;
}

std::size_t SimplicialComplex::count(int dim) const {
  if (dim < 0 || dim >= static_cast<int>(levels_.size())) return 0;
  return levels_[dim].simplices.size();
}

std::span<const Simplex> SimplicialComplex::simplices(int dim) const {
  if (dim < 0 || dim >= static_cast<int>(levels_.size())) return {};
  return levels_[dim].simplices;
}

std::optional<std::int32_t> SimplicialComplex::find(const Simplex& s) const {
  const int dim = s.dim();
  if (dim < 0 || dim >= static_cast<int>(levels_.size())) return std::nullopt;
  auto it = levels_[dim].index.find(s);
  if (it == levels_[dim].index.end()) return std::nullopt;
  return it->second;
}

std::int32_t SimplicialComplex::require(const Simplex& s) const {
  auto idx = find(s);
  if (!idx) throw ValidationError("simplex is not in the complex");
  return *idx;
}

std::span<const std::int32_t> SimplicialComplex::faces(int dim, std::int32_t index) const {
  if (dim == 0) return {};
  const auto& lv = levels_[dim];
  return {lv.face_ids.data() + lv.face_offsets[index],
          static_cast<std::size_t>(lv.face_offsets[index + 1] - lv.face_offsets[index])};
}

std::span<const std::int32_t> SimplicialComplex::cofaces(int dim, std::int32_t index) const {
  const auto& lv = levels_[dim];
  if (lv.coface_offsets.empty()) return {};
  return {lv.coface_ids.data() + lv.coface_offsets[index],
          static_cast<std::size_t>(lv.coface_offsets[index + 1] - lv.coface_offsets[index])};
}

std::vector<UpperNeighbor> SimplicialComplex::upper_adjacent(int dim, std::int32_t index) const {
  std::vector<UpperNeighbor> out;
  for (std::int32_t tau : cofaces(dim, index)) {
    for (std::int32_t other : faces(dim + 1, tau)) {
      if (other != index) out.push_back({other, tau});
    }
  }
  return out;
}

std::vector<UpperNeighbor> SimplicialComplex::upper_adjacent(const Simplex& s) const {
  return upper_adjacent(s.dim(), require(s));
}

std::vector<std::int32_t> SimplicialComplex::parallel(int dim, std::int32_t index) const {
  std::vector<std::int32_t> via_coface, via_face;
  for (const auto& u : upper_adjacent(dim, index)) via_coface.push_back(u.neighbor);
  for (std::int32_t eta : faces(dim, index)) {
    for (std::int32_t other : cofaces(dim - 1, eta)) {
      if (other != index) via_face.push_back(other);
    }
  }
  std::sort(via_coface.begin(), via_coface.end());
  via_coface.erase(std::unique(via_coface.begin(), via_coface.end()), via_coface.end());
  std::sort(via_face.begin(), via_face.end());
  via_face.erase(std::unique(via_face.begin(), via_face.end()), via_face.end());
  std::vector<std::int32_t> out;
  std::set_symmetric_difference(via_coface.begin(), via_coface.end(), via_face.begin(),
                                via_face.end(), std::back_inserter(out));
  return out;
}

std::vector<Simplex> SimplicialComplex::parallel(const Simplex& s) const {
  std::vector<Simplex> out;
  for (std::int32_t idx : parallel(s.dim(), require(s))) out.push_back(simplex(s.dim(), idx));
  return out;
}

SimplicialComplex build_vr_complex(const DistanceMatrix& d, double epsilon, int max_dim) {
  if (!(epsilon > 0.0)) throw ValidationError("cutoff must be positive");
  if (max_dim < 0 || max_dim > kMaxSimplexDim) {
    throw ValidationError("max_dim must be in [0, 3], got " + std::to_string(max_dim));
  }
  const auto n = static_cast<std::int32_t>(d.size());
  SimplicialComplex cx;
  cx.epsilon_ = epsilon;
  cx.max_dim_ = max_dim;
  cx.levels_.resize(max_dim + 1);

  std::vector<char> adjacent(static_cast<std::size_t>(n) * n, 0);
  std::vector<std::vector<std::int32_t>> higher(n);  // neighbors with larger index
  for (std::int32_t i = 0; i < n; ++i) {
    for (std::int32_t j = i + 1; j < n; ++j) {
      if (d(i, j) <= epsilon) {
        adjacent[i * n + j] = adjacent[j * n + i] = 1;
        higher[i].push_back(j);
      }
    }
  }
  auto adj = [&](std::int32_t a, std::int32_t b) { return adjacent[a * n + b] != 0; };

  for (std::int32_t i = 0; i < n; ++i) cx.levels_[0].simplices.push_back(Simplex{i});
  if (max_dim >= 1) {
    for (std::int32_t i = 0; i < n; ++i) {
      for (std::int32_t j : higher[i]) cx.levels_[1].simplices.push_back(Simplex{i, j});
    }
  }
  if (max_dim >= 2) {
    for (const auto& e : cx.levels_[1].simplices) {
      for (std::int32_t k : higher[e[1]]) {
        if (adj(e[0], k)) cx.levels_[2].simplices.push_back(Simplex{e[0], e[1], k});
      }
    }
  }
  if (max_dim >= 3) {
    for (const auto& t : cx.levels_[2].simplices) {
      for (std::int32_t l : higher[t[2]]) {
        if (adj(t[0], l) && adj(t[1], l)) {
          cx.levels_[3].simplices.push_back(Simplex{t[0], t[1], t[2], l});
        }
      }
    }
  }

  for (auto& lv : cx.levels_) {
    lv.index.reserve(lv.simplices.size());
    for (std::size_t k = 0; k < lv.simplices.size(); ++k) {
      lv.index.emplace(lv.simplices[k], static_cast<std::int32_t>(k));
    }
  }

  for (int dim = 1; dim <= max_dim; ++dim) {
    auto& lv = cx.levels_[dim];
    auto& below = cx.levels_[dim - 1];
    lv.face_offsets.assign(1, 0);
    std::vector<std::vector<std::int32_t>> cof(below.simplices.size());
    for (std::size_t k = 0; k < lv.simplices.size(); ++k) {
      const auto& s = lv.simplices[k];
      std::vector<std::int32_t> ids;
      for (std::size_t drop = 0; drop < s.size(); ++drop) ids.push_back(below.index.at(s.without(drop)));
      std::sort(ids.begin(), ids.end());
      for (auto f : ids) {
        lv.face_ids.push_back(f);
        cof[f].push_back(static_cast<std::int32_t>(k));
      }
      lv.face_offsets.push_back(static_cast<std::int32_t>(lv.face_ids.size()));
    }
    below.coface_offsets.assign(1, 0);
    for (const auto& list : cof) {
      below.coface_ids.insert(below.coface_ids.end(), list.begin(), list.end());
      below.coface_offsets.push_back(static_cast<std::int32_t>(below.coface_ids.size()));
    }
  }
  return cx;
}

Filtration build_filtration(const DistanceMatrix& d, std::span<const double> cutoffs, int max_dim) {
  if (cutoffs.empty()) throw ValidationError("filtration needs at least one cutoff");
  for (std::size_t i = 1; i < cutoffs.size(); ++i) {
    if (!(cutoffs[i] > cutoffs[i - 1])) {
      throw ValidationError("cutoffs must be strictly increasing");
    }
  }
  Filtration f;
  for (double eps : cutoffs) f.levels_.push_back({eps, build_vr_complex(d, eps, max_dim)});
  return f;
}

void write_complex_text(std::ostream& out, const SimplicialComplex& complex) {
  for (int dim = 0; dim <= complex.max_dim(); ++dim) {
    out << "# dim=" << dim << " count=" << complex.count(dim) << '\n';
    for (const auto& s : complex.simplices(dim)) {
      for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
      out << '\n';
    }
  }
}

}  // namespace prips
