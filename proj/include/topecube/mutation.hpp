#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "topecube/canonical.hpp"
#include "topecube/enumerate.hpp"
#include "topecube/euclid.hpp"
#include "topecube/parallel.hpp"

namespace topecube {

// ------------------------------------------------------------ UOM classes

inline constexpr int kMaxMutationDimension = 7;
inline constexpr int kMaxLabeledDimension = 5;

// Isomorphism classes of uniform OMs of rank r on n elements. A deletion of
// a uniform OM is uniform of the same rank and the deleted element is in
// general position, so every class arises as a general-position extension
// of a class on n-1 elements; the chain starts at Q_r.
inline std::vector<ToGraph> generate_uoms(int n, int r, const GenerateOptions& opt = {}) {
  if (r < 1 || n < r) throw PreconditionError("generate_uoms: need 1 <= r <= n");
  if (n > kMaxMutationDimension) throw GuardError("generate_uoms: n > 7 refused");
  const std::string stream = "uom-r" + std::to_string(r);
  std::vector<ToGraph> level{canonical_key(hypercube(r), Level::Isomorphism).graph()};
  for (int k = r + 1; k <= n; ++k) {
    if (opt.resume && !opt.catalog.empty())
      if (auto cached = catalog::load(opt.catalog, stream, k)) {
        level = std::move(*cached);
        continue;
      }
    std::set<CanonicalKey> keys;
    std::mutex mu;
    parallel_for(level.size(), opt.threads, [&](std::size_t i, std::size_t) {
      std::set<CanonicalKey> local;
      for_each_gp_extension(level[i], 0, [&](const GPExtension& x) {
        ToGraph y = expand_unchecked(level[i], x.h1, x.h2);
        if (is_uom(y) && rank(y) == r) local.insert(canonical_key(y, Level::Isomorphism));
        return true;
      });
      std::lock_guard lk(mu);
      keys.merge(local);
    });
    level.clear();
    for (const auto& key : keys) level.push_back(key.graph());
    if (opt.log) opt.log(stream + " n=" + std::to_string(k) + ": " + std::to_string(level.size()) + " classes");
    if (!opt.catalog.empty()) catalog::store(opt.catalog, stream, k, level);
  }
  return level;
}

// -------------------------------------------------------------- mutations

struct Mutation {
  Word v = 0;  // removed simplicial vertex (its antipode goes too)
  Word w = 0;  // filled-in vertex
  ToGraph result;
};

// For a simplicial vertex v of degree r with incident classes S, the
// vertices v ^ T (T a proper subset of S) must all be present and v ^ S
// missing; v, -v are replaced by v ^ S, -(v ^ S).
inline std::vector<Mutation> mutations_of(const ToGraph& g) {
  if (!is_uom(g)) throw PreconditionError("mutations_of: not a uniform OM");
  if (constant_coordinates(g)) throw PreconditionError("mutations_of: constant coordinate");
  const int r = rank(g), n = g.width();
  std::vector<Mutation> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (static_cast<int>(g.degree(i)) != r) continue;
    const Word v = g.vertex(i);
    Word S = 0;
    for (auto u : g.neighbors(i)) S |= g.vertex(u) ^ v;
    const Word w = v ^ S;
    if (g.contains(w)) continue;
    bool cube_minus = true;
    for (Word t = (S - 1) & S; cube_minus; t = (t - 1) & S) {
      if (!g.contains(v ^ t)) cube_minus = false;
      if (t == 0) break;
    }
    if (!cube_minus) continue;
    std::vector<Word> ws;
    for (Word x : g.vertices())
      if (x != v && x != antipode(v, n)) ws.push_back(x);
    ws.push_back(w);
    ws.push_back(antipode(w, n));
    ToGraph m(n, std::move(ws));
    if (!is_uom(m) || rank(m) != r) throw Error("mutation left the class of uniform OMs of rank " + std::to_string(r));
    out.push_back({v, w, std::move(m)});
  }
  return out;
}

// ---------------------------------------------------------- mutation graph

struct MutationGraph {
  Level level = Level::Isomorphism;
  int n = 0, r = 0;
  std::vector<CanonicalKey> nodes;  // sorted
  std::set<std::pair<std::size_t, std::size_t>> edges;  // a <= b, loops allowed

  std::size_t index_of(const CanonicalKey& k) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), k);
    if (it == nodes.end() || !(*it == k)) throw Error("mutation graph: unknown class");
    return static_cast<std::size_t>(it - nodes.begin());
  }
  bool has_edge(std::size_t a, std::size_t b) const {
    return edges.count({std::min(a, b), std::max(a, b)}) > 0;
  }
};

namespace detail {

// All labelled members of an isomorphism class, keyed at `level`.
inline std::set<CanonicalKey> members_at(const ToGraph& g, Level level) {
  std::set<CanonicalKey> out;
  std::vector<int> perm(static_cast<std::size_t>(g.width()));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (level == Level::Labeled) {
      for (Word flip = 0; flip <= g.full_mask(); ++flip) {
        out.insert(canonical_key(transform(g, perm, flip), Level::Labeled));
        if (flip == g.full_mask()) break;
      }
    } else {
      out.insert(canonical_key(transform(g, perm, 0), level));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace detail

inline MutationGraph build_mutation_graph(const std::vector<ToGraph>& classes, int n, int r,
                                          Level level, int threads = 1) {
  if (n > kMaxMutationDimension) throw GuardError("mutation graph: n > 7 refused");
  if (level == Level::Labeled && n > kMaxLabeledDimension)
    throw GuardError("mutation graph: labeled level refused for n > 5");
  MutationGraph mg;
  mg.level = level;
  mg.n = n;
  mg.r = r;
  std::set<CanonicalKey> all;
  if (level == Level::Isomorphism) {
    for (const auto& g : classes) all.insert(canonical_key(g, level));
  } else {
    for (const auto& g : classes) all.merge(detail::members_at(g, level));
  }
  mg.nodes.assign(all.begin(), all.end());
  std::mutex mu;
  parallel_for(mg.nodes.size(), threads, [&](std::size_t i, std::size_t) {
    std::vector<std::pair<std::size_t, std::size_t>> local;
    for (const auto& m : mutations_of(mg.nodes[i].graph())) {
      std::size_t j = mg.index_of(canonical_key(m.result, level));
      local.emplace_back(std::min(i, j), std::max(i, j));
    }
    std::lock_guard lk(mu);
    mg.edges.insert(local.begin(), local.end());
  });
  return mg;
}

inline MutationGraph build_mutation_graph(int n, int r, Level level, const GenerateOptions& opt = {}) {
  if (n > kMaxMutationDimension) throw GuardError("mutation graph: n > 7 refused");
  if (level == Level::Labeled && n > kMaxLabeledDimension)
    throw GuardError("mutation graph: labeled level refused for n > 5");
  return build_mutation_graph(generate_uoms(n, r, opt), n, r, level, opt.threads);
}

struct Components {
  bool connected = false;
  std::vector<std::vector<std::size_t>> parts;  // node indices
};

inline Components is_connected(const MutationGraph& mg) {
  Components c;
  const std::size_t n = mg.nodes.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : mg.edges)
    if (a != b) adj[a].push_back(b), adj[b].push_back(a);
  std::vector<bool> seen(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> part{s};
    seen[s] = true;
    for (std::size_t h = 0; h < part.size(); ++h)
      for (auto v : adj[part[h]])
        if (!seen[v]) seen[v] = true, part.push_back(v);
    std::sort(part.begin(), part.end());
    c.parts.push_back(std::move(part));
  }
  c.connected = c.parts.size() <= 1;
  return c;
}

// Coarsening classes maps every edge to an edge or a loop.
inline bool homomorphism_check(const MutationGraph& fine, const MutationGraph& coarse) {
  if (fine.n != coarse.n || fine.r != coarse.r)
    throw PreconditionError("homomorphism_check: different (n, r)");
  if (static_cast<int>(fine.level) > static_cast<int>(coarse.level))
    throw PreconditionError("homomorphism_check: levels out of order");
  std::vector<std::size_t> image(fine.nodes.size());
  for (std::size_t i = 0; i < fine.nodes.size(); ++i)
    image[i] = coarse.index_of(canonical_key(fine.nodes[i].graph(), coarse.level));
  for (auto [a, b] : fine.edges)
    if (!coarse.has_edge(image[a], image[b])) return false;
  return true;
}

inline std::string to_dot(const MutationGraph& mg) {
  std::ostringstream out;
  out << "graph \"G_" << to_string(mg.level) << "_" << mg.n << "_" << mg.r << "\" {\n";
  for (const auto& k : mg.nodes) out << "  \"" << k.hex() << "\";\n";
  for (auto [a, b] : mg.edges)
    out << "  \"" << mg.nodes[a].hex() << "\" -- \"" << mg.nodes[b].hex() << "\";\n";
  out << "}\n";
  return out.str();
}

}  // namespace topecube
