#include "ecs/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ecs {

std::string resolve_cache_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  const char* env = std::getenv("ECS_CACHE_DIR");
  if (env && *env) return env;
  return {};
}

namespace {

void append_sanitized(std::string& out, const std::string& s) {
  for (char c : s) {
    if (c == '/')
      out += '_';
    else if (c == '-')
      out += 'm';
    else
      out += c;
  }
}

}  // namespace

std::string cache_file_name(const CacheKey& key) {
  std::string out = "gk-";
  append_sanitized(out, key.scalar);
  out += "-N" + std::to_string(key.num_particles) + "-n";
  for (size_t i = 0; i < key.n.size(); ++i) {
    if (i) out += '_';
    append_sanitized(out, std::to_string(key.n[i]));
  }
  out += "-lam";
  append_sanitized(out, key.lambda);
  out += "-Lq" + std::to_string(key.lq) + "-Sg" + std::to_string(key.sg);
  out += "-";
  append_sanitized(out, key.variant);
  out += ".json";
  return out;
}

Json cache_key_to_json(const CacheKey& key) {
  Json j;
  j["scalar"] = key.scalar;
  j["num_particles"] = key.num_particles;
  j["n"] = key.n;
  j["lambda"] = key.lambda;
  j["q2_order"] = key.lq;
  j["gamma_order"] = key.sg;
  j["variant"] = key.variant;
  return j;
}

bool cache_key_matches(const Json& j, const CacheKey& key) {
  return j == cache_key_to_json(key);
}

bool read_text_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write file: " + path);
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace ecs
