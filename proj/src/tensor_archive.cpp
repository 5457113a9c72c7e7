// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#include "prips/tensor_archive.hpp"

#include <fstream>
#include <sstream>

#include "prips/endian.hpp"
#include "prips/error.hpp"

namespace prips {
namespace {

constexpr const char* kMagic = "HSMPW1";

const char* dtype_name(DType t) {
  switch (t) {
    case DType::F32: return "f32";
    case DType::F64: return "f64";
    case DType::I64: return "i64";
  }
  return "f64";
}

DType parse_dtype(const std::string& s) {
  if (s == "f32") return DType::F32;
  if (s == "f64") return DType::F64;
  if (s == "i64") return DType::I64;
  throw ParseError("unknown dtype '" + s + "'");
}

std::size_t element_size(DType t) { return t == DType::F32 ? 4 : 8; }

std::vector<std::int64_t> parse_shape(const std::string& s) {
  std::vector<std::int64_t> shape;
  if (s == "scalar") return shape;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    try {
      shape.push_back(std::stoll(part));
    } catch (const std::exception&) {
      throw ParseError("bad tensor shape '" + s + "'");
    }
    if (shape.back() < 0) throw ParseError("negative tensor dimension");
  }
  return shape;
}

}  // namespace

std::int64_t Tensor::numel() const {
  std::int64_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

std::string shape_string(const std::vector<std::int64_t>& shape) {
  if (shape.empty()) return "scalar";
  std::string s;
  for (std::size_t i = 0; i < shape.size(); ++i) s += (i ? "x" : "") + std::to_string(shape[i]);
  return s;
}

void TensorArchive::set_meta(const std::string& key, const std::string& value) {
  if (key.find_first_of(" \n") != std::string::npos || value.find('\n') != std::string::npos) {
    throw ValidationError("metadata keys may not contain spaces or newlines");
  }
  for (auto& [k, v] : meta_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  meta_.emplace_back(key, value);
}

const std::string* TensorArchive::meta(const std::string& key) const {
  for (const auto& [k, v] : meta_) {
    if (k == key) return &v;
  }
  return nullptr;
}

void TensorArchive::put(const std::string& name, Tensor tensor) {
  if (name.empty() || name.find_first_of(" \n") != std::string::npos) {
    throw ValidationError("tensor names may not be empty or contain whitespace");
  }
  const auto expected = static_cast<std::size_t>(tensor.numel());
  const auto held = tensor.dtype == DType::I64 ? tensor.ints.size() : tensor.values.size();
  if (held != expected) {
    throw ValidationError("tensor '" + name + "' holds " + std::to_string(held) +
                          " values for shape " + shape_string(tensor.shape));
  }
  tensors_[name] = std::move(tensor);
}

const Tensor* TensorArchive::find(const std::string& name) const {
  auto it = tensors_.find(name);
  return it == tensors_.end() ? nullptr : &it->second;
}

void TensorArchive::write(std::ostream& out) const {
  std::ostringstream manifest;
  for (const auto& [k, v] : meta_) manifest << "meta " << k << ' ' << v << '\n';
  std::uint64_t offset = 0;
  for (const auto& [name, t] : tensors_) {
    const std::uint64_t nbytes = static_cast<std::uint64_t>(t.numel()) * element_size(t.dtype);
    manifest << "tensor " << name << ' ' << dtype_name(t.dtype) << ' ' << shape_string(t.shape)
             << ' ' << offset << ' ' << nbytes << '\n';
    offset += (nbytes + 7) / 8 * 8;
  }
  const std::string text = manifest.str();
  out << kMagic << '\n' << text.size() << '\n' << text;
  for (const auto& [name, t] : tensors_) {
    std::uint64_t written = 0;
    if (t.dtype == DType::I64) {
      for (auto v : t.ints) detail::put_le<std::int64_t>(out, v);
      written = t.ints.size() * 8;
    } else if (t.dtype == DType::F64) {
      for (double v : t.values) detail::put_le<double>(out, v);
      written = t.values.size() * 8;
    } else {
      for (double v : t.values) detail::put_le<float>(out, static_cast<float>(v));
      written = t.values.size() * 4;
    }
    for (; written % 8 != 0; ++written) out.put('\0');
  }
  if (!out) throw std::runtime_error("failed to write tensor archive");
}

TensorArchive TensorArchive::read(std::istream& in) {
  std::string magic;
  if (!std::getline(in, magic) || magic != kMagic) {
    throw ParseError("not a tensor archive (bad magic)");
  }
  std::string len_line;
  if (!std::getline(in, len_line)) throw ParseError("truncated archive header");
  std::size_t len = 0;
  try {
    len = std::stoull(len_line);
  } catch (const std::exception&) {
    throw ParseError("bad manifest length");
  }
  std::string text(len, '\0');
  if (!in.read(text.data(), static_cast<std::streamsize>(len))) {
    throw ParseError("truncated manifest");
  }

  struct Entry {
    std::string name;
    Tensor tensor;
    std::uint64_t offset, nbytes;
  };
  std::vector<Entry> entries;
  TensorArchive archive;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "meta") {
      std::string key, value;
      ls >> key;
      std::getline(ls >> std::ws, value);
      archive.meta_.emplace_back(key, value);
    } else if (kind == "tensor") {
      Entry e;
      std::string dtype, shape;
      if (!(ls >> e.name >> dtype >> shape >> e.offset >> e.nbytes)) {
        throw ParseError("bad tensor line: " + line);
      }
      e.tensor.dtype = parse_dtype(dtype);
      e.tensor.shape = parse_shape(shape);
      if (e.nbytes != static_cast<std::uint64_t>(e.tensor.numel()) * element_size(e.tensor.dtype)) {
        throw ParseError("tensor '" + e.name + "' byte count disagrees with its shape");
      }
      entries.push_back(std::move(e));
    } else {
      throw ParseError("unknown manifest line: " + line);
    }
  }

  std::string blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  for (auto& e : entries) {
    if (e.offset + e.nbytes > blob.size()) throw ParseError("tensor '" + e.name + "' is truncated");
    std::istringstream body(blob.substr(e.offset, e.nbytes));
    const auto n = static_cast<std::size_t>(e.tensor.numel());
    if (e.tensor.dtype == DType::I64) {
      e.tensor.ints.resize(n);
      for (auto& v : e.tensor.ints) detail::get_le(body, v);
    } else if (e.tensor.dtype == DType::F64) {
      e.tensor.values.resize(n);
      for (auto& v : e.tensor.values) detail::get_le(body, v);
    } else {
      e.tensor.values.resize(n);
      for (auto& v : e.tensor.values) {
        float f = 0;
        detail::get_le(body, f);
        v = f;
      }
    }
    archive.tensors_[e.name] = std::move(e.tensor);
  }
  return archive;
}

void TensorArchive::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write(out);
}

TensorArchive TensorArchive::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  return read(in);
}

}  // namespace prips
