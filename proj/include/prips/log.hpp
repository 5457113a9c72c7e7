// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string_view>

namespace prips {

using WarningSink = std::function<void(std::string_view)>;

// Warnings go to stderr unless a sink is installed. The sink is process-wide;
// install it before starting worker threads.
void set_warning_sink(WarningSink sink);
void warn(std::string_view message);

/// Installs a sink for the lifetime of the guard and restores the old one.
class ScopedWarningSink {
 public:
  explicit ScopedWarningSink(WarningSink sink);
  ~ScopedWarningSink();
  ScopedWarningSink(const ScopedWarningSink&) = delete;
  ScopedWarningSink& operator=(const ScopedWarningSink&) = delete;

 private:
  WarningSink previous_;
};

}  // namespace prips
