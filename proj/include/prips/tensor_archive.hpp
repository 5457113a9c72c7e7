// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace prips {

enum class DType { F32, F64, I64 };

struct Tensor {
  DType dtype = DType::F64;
  std::vector<std::int64_t> shape;
  std::vector<double> values;       // F32 / F64 payload (F32 widened on load)
  std::vector<std::int64_t> ints;   // I64 payload

  std::int64_t numel() const;
};

/// Named tensors plus ordered key/value metadata.
///
/// On disk: the magic line "HSMPW1", a decimal manifest byte length on its own
/// line, the manifest text, then the blob. Manifest lines are either
/// "meta <key> <value>" or "tensor <name> <dtype> <d0>x<d1>... <offset> <nbytes>",
/// offsets relative to the blob start. Blob values are little-endian row-major.
class TensorArchive {
 public:
  void set_meta(const std::string& key, const std::string& value);
  const std::string* meta(const std::string& key) const;
  const std::vector<std::pair<std::string, std::string>>& metadata() const { return meta_; }

  void put(const std::string& name, Tensor tensor);
  const Tensor* find(const std::string& name) const;
  const std::map<std::string, Tensor>& tensors() const { return tensors_; }

  void write(std::ostream& out) const;
  static TensorArchive read(std::istream& in);

  void save(const std::string& path) const;
  static TensorArchive load(const std::string& path);

 private:
  std::vector<std::pair<std::string, std::string>> meta_;
  std::map<std::string, Tensor> tensors_;
};

std::string shape_string(const std::vector<std::int64_t>& shape);

}  // namespace prips
