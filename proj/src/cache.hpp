// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT
//
// File-backed memo of computed results, keyed by the SHA-256 of a request
// description. Enabled when ORBITAL_SSP_CACHE names a directory.

#ifndef ORBITAL_SSP_SRC_CACHE_HPP
#define ORBITAL_SSP_SRC_CACHE_HPP

#include <filesystem>
#include <optional>
#include <string>

namespace orbital_ssp::cli {

std::string sha256_hex(const std::string& data);

class ResultCache {
 public:
  // Reads ORBITAL_SSP_CACHE; an unset or empty variable disables the cache.
  static ResultCache from_env();
  explicit ResultCache(std::filesystem::path dir);
  ResultCache() = default;

  bool enabled() const { return !dir_.empty(); }
  std::optional<std::string> get(const std::string& request) const;
  void put(const std::string& request, const std::string& value) const;
  std::filesystem::path path_for(const std::string& request) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace orbital_ssp::cli

#endif  // ORBITAL_SSP_SRC_CACHE_HPP
