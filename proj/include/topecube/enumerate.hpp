#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "topecube/canonical.hpp"
#include "topecube/expansions.hpp"
#include "topecube/faces.hpp"
#include "topecube/parallel.hpp"
#include "topecube/topes_io.hpp"

namespace topecube {

struct GenerateOptions {
  int threads = 1;
  std::string catalog;  // root directory for persisted levels; empty = none
  bool resume = false;
  std::function<void(const std::string&)> log;
};

inline constexpr int kMaxPartialCubeDimension = 6;
inline constexpr int kMaxAntipodalDimension = 7;

// ------------------------------------------------------------- catalog

namespace catalog {

namespace fs = std::filesystem;

inline fs::path level_dir(const std::string& root, const std::string& stream, int n) {
  return fs::path(root) / stream / ("n=" + std::to_string(n));
}

inline std::optional<std::vector<ToGraph>> load(const std::string& root,
                                                const std::string& stream, int n) {
  auto dir = level_dir(root, stream, n);
  std::ifstream mf(dir / "manifest.json");
  if (!mf) return std::nullopt;
  nlohmann::json m;
  try {
    mf >> m;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (!m.value("complete", false)) return std::nullopt;
  std::vector<ToGraph> out;
  for (const auto& name : m.at("classes")) out.push_back(read_topes_file((dir / name.get<std::string>()).string()));
  if (out.size() != m.at("count").get<std::size_t>()) return std::nullopt;
  return out;
}

// Writes one file per class and then the manifest; a level without a
// complete manifest is regenerated on resume.
inline void store(const std::string& root, const std::string& stream, int n,
                  const std::vector<ToGraph>& graphs,
                  const nlohmann::json& extra = nlohmann::json::object()) {
  auto dir = level_dir(root, stream, n);
  fs::create_directories(dir);
  nlohmann::json m = extra;
  m["stream"] = stream;
  m["n"] = n;
  m["count"] = graphs.size();
  m["classes"] = nlohmann::json::array();
  for (const auto& g : graphs) {
    std::string name = canonical_key(g, Level::Isomorphism).hex() + ".topes";
    write_topes_file((dir / name).string(), g);
    m["classes"].push_back(name);
  }
  m["complete"] = true;
  std::ofstream(dir / "manifest.json") << m.dump(2) << '\n';
}

}  // namespace catalog

// ---------------------------------------------------------- generation

using GraphFilter = std::function<bool(const ToGraph&)>;

// One representative (in canonical form) per isomorphism class among all
// isometric expansions of the parents that pass `keep`.
inline std::vector<ToGraph> expansion_classes(const std::vector<ToGraph>& parents,
                                              const GraphFilter& keep, int threads) {
  std::set<CanonicalKey> all;
  std::mutex mu;
  parallel_for(parents.size(), threads, [&](std::size_t i, std::size_t) {
    std::set<CanonicalKey> local;
    for_each_isometric_cover(parents[i], [&](const VertexSet& h1, const VertexSet& h2) {
      ToGraph g = expand_unchecked(parents[i], h1, h2);
      if (!is_partial_cube(g) || (keep && !keep(g))) return;
      local.insert(canonical_key(g, Level::Isomorphism));
    });
    std::lock_guard lk(mu);
    all.merge(local);
  });
  std::vector<ToGraph> out;
  for (const auto& k : all) out.push_back(k.graph());
  return out;
}

namespace detail {

inline std::vector<ToGraph> generate_chain(const std::string& stream, int n,
                                           const GraphFilter& keep,
                                           const GenerateOptions& opt) {
  std::vector<ToGraph> level{ToGraph(1, {0, 1})};
  for (int k = 2; k <= n; ++k) {
    std::optional<std::vector<ToGraph>> cached;
    if (opt.resume && !opt.catalog.empty()) cached = catalog::load(opt.catalog, stream, k);
    if (cached) {
      level = std::move(*cached);
      if (opt.log) opt.log(stream + " n=" + std::to_string(k) + ": loaded " +
                           std::to_string(level.size()) + " classes");
      continue;
    }
    level = expansion_classes(level, keep, opt.threads);
    if (opt.log) opt.log(stream + " n=" + std::to_string(k) + ": " +
                         std::to_string(level.size()) + " classes");
    if (!opt.catalog.empty()) catalog::store(opt.catalog, stream, k, level);
  }
  return level;
}

}  // namespace detail

// Simple partial cubes of isometric dimension exactly n, one per class.
inline std::vector<ToGraph> generate_partial_cubes(int n, const GenerateOptions& opt = {}) {
  if (n < 1) throw PreconditionError("dimension must be positive");
  if (n > kMaxPartialCubeDimension)
    throw GuardError("generate_partial_cubes: n > 6 refused");
  return detail::generate_chain("partial-cubes", n, nullptr, opt);
}

// Affine partial cubes of dimension n. Contractions of affine graphs are
// affine, so expanding only the affine classes of dimension n-1 suffices.
inline std::vector<ToGraph> generate_affine(int n, const GenerateOptions& opt = {}) {
  if (n < 1) throw PreconditionError("dimension must be positive");
  if (n > kMaxAntipodalDimension - 1) throw GuardError("generate_affine: n > 6 refused");
  return detail::generate_chain("affine", n, [](const ToGraph& g) { return is_affine(g); }, opt);
}

// Doubles each class of `affine` across its antipodes, one result per class.
inline std::vector<ToGraph> double_classes(const std::vector<ToGraph>& affine) {
  std::set<CanonicalKey> keys;
  for (const auto& g : affine) keys.insert(canonical_key(double_affine(g), Level::Isomorphism));
  std::vector<ToGraph> out;
  for (const auto& k : keys) out.push_back(k.graph());
  return out;
}

enum class AntipodalRoute { AffineChain, AllPartialCubes };

// Antipodal partial cubes of dimension n: the affine classes of dimension
// n-1 doubled and deduplicated.
inline std::vector<ToGraph> generate_antipodal(int n, const GenerateOptions& opt = {},
                                               AntipodalRoute route = AntipodalRoute::AffineChain) {
  if (n < 1) throw PreconditionError("dimension must be positive");
  if (n > kMaxAntipodalDimension) throw GuardError("generate_antipodal: n > 7 refused");
  if (n == 1) return {ToGraph(1, {0, 1})};
  if (opt.resume && !opt.catalog.empty())
    if (auto cached = catalog::load(opt.catalog, "antipodal", n)) return *cached;
  std::vector<ToGraph> affine;
  if (route == AntipodalRoute::AffineChain) {
    affine = n == 2 ? std::vector<ToGraph>{ToGraph(1, {0, 1})} : generate_affine(n - 1, opt);
  } else {
    for (auto& g : n == 2 ? std::vector<ToGraph>{ToGraph(1, {0, 1})}
                          : generate_partial_cubes(n - 1, opt))
      if (is_affine(g)) affine.push_back(g);
  }
  auto out = double_classes(affine);
  if (!opt.catalog.empty()) catalog::store(opt.catalog, "antipodal", n, out);
  return out;
}

// ------------------------------------------------------------ filters

// Predicates: antipodal, affine, com, om, aom, lop, uom, partial-cube,
// rank=<r>; several may be joined with ','.
inline GraphFilter make_predicate(const std::string& spec) {
  std::vector<GraphFilter> parts;
  std::size_t b = 0;
  while (b <= spec.size()) {
    auto e = spec.find(',', b);
    std::string p = spec.substr(b, e == std::string::npos ? std::string::npos : e - b);
    b = e == std::string::npos ? spec.size() + 1 : e + 1;
    if (p.empty() || p == "all" || p == "partial-cube") {
      parts.push_back([](const ToGraph& g) { return is_partial_cube(g); });
    } else if (p == "antipodal") {
      parts.push_back([](const ToGraph& g) { return is_partial_cube(g) && is_antipodal(g); });
    } else if (p.rfind("rank=", 0) == 0) {
      int r = std::stoi(p.substr(5));
      parts.push_back([r](const ToGraph& g) { return rank(g) == r; });
    } else {
      static const std::map<std::string, Label> names = {
          {"com", Label::COM}, {"om", Label::OM},   {"aom", Label::AOM},
          {"lop", Label::LOP}, {"uom", Label::UOM}, {"affine", Label::Affine}};
      std::string lower;
      for (char c : p) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      auto it = names.find(lower);
      if (it == names.end()) throw std::invalid_argument("unknown predicate '" + p + "'");
      Label l = it->second;
      if (l == Label::OM)
        parts.push_back([](const ToGraph& g) { return is_om(g); });
      else if (l == Label::UOM)
        parts.push_back([](const ToGraph& g) { return is_uom(g); });
      else
        parts.push_back([l](const ToGraph& g) { return classify(g).has(l); });
    }
  }
  return [parts](const ToGraph& g) {
    for (const auto& p : parts)
      if (!p(g)) return false;
    return true;
  };
}

inline std::vector<ToGraph> filter_class(const std::vector<ToGraph>& stream,
                                         const GraphFilter& keep) {
  std::vector<ToGraph> out;
  for (const auto& g : stream)
    if (keep(g)) out.push_back(g);
  return out;
}

inline std::vector<ToGraph> filter_class(const std::vector<ToGraph>& stream,
                                         const std::string& predicate) {
  return filter_class(stream, make_predicate(predicate));
}

}  // namespace topecube
