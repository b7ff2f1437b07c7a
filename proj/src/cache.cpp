// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT

#include "cache.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace orbital_ssp::cli {

std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

ResultCache ResultCache::from_env() {
  const char* v = std::getenv("ORBITAL_SSP_CACHE");
  if (!v || !*v) return ResultCache();
  return ResultCache(v);
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw std::runtime_error("cannot create cache directory " + dir_.string() + ": " + ec.message());
}

std::filesystem::path ResultCache::path_for(const std::string& request) const {
  return dir_ / (sha256_hex(request) + ".json");
}

std::optional<std::string> ResultCache::get(const std::string& request) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(path_for(request), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ResultCache::put(const std::string& request, const std::string& value) const {
  if (!enabled()) return;
  auto target = path_for(request);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out << value;
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace orbital_ssp::cli
