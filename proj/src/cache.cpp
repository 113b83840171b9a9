#include "qlab/cache.hpp"

#include <array>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <openssl/evp.h>
#include <unistd.h>

namespace qlab {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 15]);
  }
  return out;
}

ResultCache::ResultCache(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

std::string ResultCache::key(const std::string& encoding, const MeasureSpec& m) {
  // Fields are newline-separated; none of them can contain a newline.
  std::string eps = m.uses_epsilon() ? to_fraction_string(m.epsilon) : "-";
  return sha256_hex(encoding + "\n" + m.name() + "\n" + eps + "\n" + kEngineVersion);
}

fs::path ResultCache::path_for(const std::string& key) const { return dir_ / (key + ".json"); }

std::optional<MeasureResult> ResultCache::load(const std::string& encoding, const MeasureSpec& m) const {
  std::ifstream in(path_for(key(encoding, m)));
  if (!in) return std::nullopt;
  try {
    auto doc = nlohmann::ordered_json::parse(in);
    // Guard against digest collisions and stale formats.
    if (doc.at("function") != encoding || doc.at("measure") != m.name() ||
        doc.at("engine_version") != kEngineVersion) {
      return std::nullopt;
    }
    return MeasureResult{parse_rational(doc.at("value").get<std::string>()), doc.at("certificate")};
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable entries are recomputed and overwritten
  }
}

void ResultCache::store(const std::string& encoding, const MeasureSpec& m, const MeasureResult& r) const {
  static std::atomic<unsigned> counter{0};
  const std::string k = key(encoding, m);
  nlohmann::ordered_json doc = {{"function", encoding},
                                {"measure", m.name()},
                                {"value", to_fraction_string(r.value)},
                                {"certificate", r.certificate},
                                {"engine_version", kEngineVersion}};
  std::ostringstream tmp_name;
  tmp_name << k << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id())
           << "." << counter++;
  const fs::path tmp = dir_ / tmp_name.str();
  {
    std::ofstream out(tmp);
    if (!out) throw fs::filesystem_error("cannot write cache entry", tmp, std::make_error_code(std::errc::io_error));
    out << doc.dump() << "\n";
    if (!out) throw fs::filesystem_error("cannot write cache entry", tmp, std::make_error_code(std::errc::io_error));
  }
  fs::rename(tmp, path_for(k));
}

}  // namespace qlab
