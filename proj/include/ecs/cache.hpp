#pragma once

#include <string>
#include <vector>

#include "ecs/gk.hpp"
#include "ecs/jsonio.hpp"

namespace ecs {

// Identifies one formula build of the self energy coefficient table.  Bump
// when the enumeration or its pruning changes shape, so stale cache files
// are never mistaken for current ones.
inline constexpr const char* kSelfEnergyVariant = "walks-v1";

struct CacheKey {
  std::string scalar;
  int num_particles = 0;
  std::vector<long> n;
  std::string lambda;  // "p/q" in numeric mode, "P" in symbolic mode
  int lq = 0;
  int sg = 0;
  std::string variant = kSelfEnergyVariant;
};

// Explicit flag wins; otherwise ECS_CACHE_DIR; empty result disables
// caching entirely.
std::string resolve_cache_dir(const std::string& flag_value);

std::string cache_file_name(const CacheKey& key);
Json cache_key_to_json(const CacheKey& key);
bool cache_key_matches(const Json& j, const CacheKey& key);

bool read_text_file(const std::string& path, std::string& out);
void write_text_file(const std::string& path, const std::string& content);

template <class Model>
Json self_energy_to_json(const SelfEnergyTable<Model>& t, const CacheKey& key) {
  Json j;
  j["key"] = cache_key_to_json(key);
  j["kmax"] = t.kmax;
  Json coeffs = Json::array();
  for (const auto& c : t.coeff) coeffs.push_back(series_to_json(c));
  j["coeff"] = std::move(coeffs);
  return j;
}

template <class Model>
SelfEnergyTable<Model> self_energy_from_json(const Json& j, const CacheKey& key) {
  using S = typename Model::Scalar;
  if (!j.is_object() || !j.contains("key") || !j.contains("kmax") ||
      !j.contains("coeff"))
    throw UsageError("malformed cache file");
  if (!cache_key_matches(j["key"], key))
    throw UsageError("cache file key mismatch");
  SelfEnergyTable<Model> t;
  t.lq = key.lq;
  t.sg = key.sg;
  t.kmax = j["kmax"].get<int>();
  for (const auto& c : j["coeff"]) t.coeff.push_back(series_from_json<S>(c));
  if ((int)t.coeff.size() != t.kmax + 1)
    throw UsageError("cache file coefficient count mismatch");
  return t;
}

// Build through the cache when dir is nonempty: load on hit, otherwise
// compute and store.  A malformed or mismatched file is recomputed and
// overwritten rather than trusted.
template <class Model>
SelfEnergyTable<Model> self_energy_cached(const Model& model, int lq, int sg,
                                          int kmax, const std::string& dir,
                                          const CacheKey& key) {
  if (!dir.empty()) {
    std::string path = dir + "/" + cache_file_name(key);
    std::string text;
    if (read_text_file(path, text)) {
      try {
        Json j = Json::parse(text);
        return self_energy_from_json<Model>(j, key);
      } catch (const std::exception&) {
        // fall through to recomputation
      }
    }
    SelfEnergyTable<Model> t = build_self_energy(model, lq, sg, kmax);
    write_text_file(path, dump_json(self_energy_to_json(t, key)));
    return t;
  }
  return build_self_energy(model, lq, sg, kmax);
}

}  // namespace ecs
