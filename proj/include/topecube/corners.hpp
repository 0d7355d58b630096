#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "topecube/cells.hpp"
#include "topecube/faces.hpp"

namespace topecube {

// ------------------------------------------------------------ simplicial

// Antipodal graphs: vertices of degree rank(g). Otherwise: vertices lying in
// a unique maximal face A with deg(v) = rank(A).
inline std::vector<Word> simplicial_vertices(const ToGraph& g, const FaceSet& fs) {
  std::vector<Word> out;
  if (is_antipodal(g)) {
    const int r = rank(g);
    for (std::size_t i = 0; i < g.size(); ++i)
      if (static_cast<int>(g.degree(i)) == r) out.push_back(g.vertex(i));
    return out;
  }
  auto maxs = fs.maximal();
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::optional<std::size_t> only;
    int hits = 0;
    for (auto m : maxs)
      if (fs[m].topes.contains(i)) {
        ++hits;
        only = m;
      }
    if (hits == 1 && static_cast<int>(g.degree(i)) == fs[*only].rank) out.push_back(g.vertex(i));
  }
  return out;
}

inline std::vector<Word> simplicial_vertices(const ToGraph& g) {
  return simplicial_vertices(g, FaceSet(g));
}

// OM version via cocircuits: v has exactly r incident classes and, for each
// of them e, some cocircuit through v is zero on the others but not on e.
inline bool is_simplicial_by_cocircuits(const ToGraph& g, const FaceSet& fs, Word v) {
  const std::size_t iv = g.require_index(v);
  const int r = rank(g);
  Word incident = 0;
  for (auto u : g.neighbors(iv)) incident |= g.vertex(u) ^ v;
  if (popcount(incident) != r) return false;
  auto cocircuits = fs.of_rank(r - 1);
  for (Word m = incident; m; m &= m - 1) {
    const Word e = m & -m, rest = incident & ~e;
    bool found = false;
    for (auto c : cocircuits) {
      const Word z = fs[c].zero();
      if (fs[c].topes.contains(iv) && (z & rest) == rest && !(z & e)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

struct LasVergnasResult {
  bool holds = false;
  std::vector<std::optional<Word>> witness;  // per class: simplicial endpoint
  int violating = -1;
};

// Every class has an edge with a simplicial endpoint.
inline LasVergnasResult theta_las_vergnas(const ToGraph& g) {
  LasVergnasResult r;
  auto simp = simplicial_vertices(g);
  r.witness.resize(static_cast<std::size_t>(g.width()));
  for (int e = 0; e < g.width(); ++e) {
    for (Word v : simp)
      if (g.contains(v ^ bit(e))) {
        r.witness[static_cast<std::size_t>(e)] = v;
        break;
      }
    if (!r.witness[static_cast<std::size_t>(e)] && r.violating < 0) r.violating = e;
  }
  r.holds = r.violating < 0;
  return r;
}

// --------------------------------------------------------------- corners

struct Corner {
  std::vector<Word> vertices;  // sorted
  CoVector host;               // the unique maximal face containing it
  bool operator==(const Corner&) const = default;
};

// Ties between candidate corners go to the lexicographically smallest
// sorted vertex list.
inline bool corner_less(const Corner& a, const Corner& b) { return a.vertices < b.vertices; }

struct CornerCheck {
  bool ok = false;
  std::string reason;
  std::optional<std::size_t> host;  // face index when C lies in a unique maximal face
  explicit operator bool() const { return ok; }
};

namespace detail {

// Data about one maximal face reused across many candidate sets.
struct HostFace {
  std::size_t index = 0;
  Word zero = 0;
  std::vector<std::size_t> flip;      // host vertex -> antipode inside the face
  std::vector<VertexSet> facets;      // maximal proper faces

  HostFace(const ToGraph& g, const FaceSet& fs, std::size_t h) : index(h), zero(fs[h].zero()) {
    const VertexSet& H = fs[h].topes;
    flip.assign(g.size(), g.size());
    H.for_each([&](std::size_t i) { flip[i] = g.require_index(g.vertex(i) ^ zero); });
    std::vector<std::size_t> proper;
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (fs[i].size() < H.count() && fs[i].topes.subset_of(H)) proper.push_back(i);
    for (auto i : proper) {
      bool top = true;
      for (auto j : proper)
        if (fs[j].size() > fs[i].size() && fs[i].topes.subset_of(fs[j].topes)) {
          top = false;
          break;
        }
      if (top) facets.push_back(fs[i].topes);
    }
  }

  VertexSet negate(const VertexSet& c) const {
    VertexSet out(c.universe());
    c.for_each([&](std::size_t i) { out.insert(flip[i]); });
    return out;
  }

  // Every maximal proper face meets exactly one of C and -C.
  bool facets_split(const VertexSet& c, const VertexSet& neg) const {
    for (const auto& f : facets)
      if (f.intersects(c) == f.intersects(neg)) return false;
    return true;
  }
};

}  // namespace detail

// C is a corner if it lies in a unique maximal face H and meets no other
// maximal face, T = H \ C is isometric, T and -T cover H (negation inside H),
// and the expansion of H along (T, -T) is an OM.
inline CornerCheck verify_corner(const ToGraph& g, const FaceSet& fs, const VertexSet& c) {
  CornerCheck r;
  if (c.empty()) {
    r.reason = "empty set";
    return r;
  }
  std::size_t hits = 0;
  for (auto m : fs.maximal())
    if (c.subset_of(fs[m].topes)) {
      ++hits;
      r.host = m;
    }
  if (hits != 1) {
    r.host.reset();
    r.reason = "contained in " + std::to_string(hits) + " maximal faces";
    return r;
  }
  // a vertex shared with another maximal face would break that face on removal
  for (auto m : fs.maximal())
    if (m != *r.host && c.intersects(fs[m].topes)) {
      r.host.reset();
      r.reason = "C meets another maximal face";
      return r;
    }
  const Face& H = fs[*r.host];
  if (H.rank == 0) {
    r.reason = "host face is a single vertex";
    return r;
  }
  detail::HostFace hf(g, fs, *r.host);
  const VertexSet neg = hf.negate(c);
  if (c.intersects(neg)) {
    r.reason = "C meets -C";
    return r;
  }
  const VertexSet T = H.topes - c;
  const VertexSet negT = hf.negate(T);
  if ((T | negT) != H.topes) {
    r.reason = "T and -T do not cover the host face";
    return r;
  }
  if (!is_isometric_subset(g, T)) {
    r.reason = "host face minus C is not isometric";
    return r;
  }
  if (!hf.facets_split(c, neg)) {
    r.reason = "a maximal proper face meets both or neither of C and -C";
    return r;
  }
  // an edge has no expansion in general position; its corners are its vertices
  if (H.rank == 1) {
    r.ok = true;
    return r;
  }
  ToGraph hg = face_graph(g, H);
  VertexSet t1(hg.size()), t2(hg.size());
  T.for_each([&](std::size_t i) { t1.insert(hg.require_index(project(g.vertex(i), H.zero()))); });
  negT.for_each([&](std::size_t i) { t2.insert(hg.require_index(project(g.vertex(i), H.zero()))); });
  if (!is_isometric_subset(hg, t2) || !is_om(expand_unchecked(hg, t1, t2))) {
    r.reason = "expansion of the host face is not an OM";
    return r;
  }
  r.ok = true;
  return r;
}

inline CornerCheck verify_corner(const ToGraph& g, std::span<const Word> c) {
  for (Word w : c)
    if (!g.contains(w)) return CornerCheck{false, "vertex not in graph", std::nullopt};
  return verify_corner(g, FaceSet(g), g.set_of(c));
}

struct CornerSearch {
  int budget = 8;         // largest candidate size for faces without a special rule
  std::size_t limit = 0;  // stop after this many corners; 0 = all
};

struct CornerList {
  std::vector<Corner> corners;  // sorted by corner_less
  bool incomplete = false;      // some face was too large for the budget
};

namespace detail {

// Vertices of a face inducing an even cycle, in cyclic order.
inline std::vector<std::size_t> cycle_order(const ToGraph& g, const VertexSet& s) {
  auto idx = s.indices();
  std::vector<std::size_t> out{idx.front()};
  std::size_t prev = g.size();
  while (out.size() < idx.size()) {
    std::size_t cur = out.back(), next = g.size();
    for (auto u : g.neighbors(cur))
      if (s.contains(u) && u != prev && (out.size() < 2 || u != out.front())) {
        next = u;
        break;
      }
    if (next == g.size()) throw Error("cycle_order: face is not a cycle");
    prev = cur;
    out.push_back(next);
  }
  return out;
}

// All runs of `len` consecutive positions of a cyclic sequence.
inline std::vector<std::vector<std::size_t>> cyclic_runs(const std::vector<std::size_t>& cyc,
                                                         std::size_t len) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < cyc.size(); ++s) {
    std::vector<std::size_t> run;
    for (std::size_t k = 0; k < len; ++k) run.push_back(cyc[(s + k) % cyc.size()]);
    out.push_back(std::move(run));
  }
  return out;
}

// Products of corners of the factors of a cell H.
inline std::vector<VertexSet> cell_corner_candidates(const ToGraph& g, const Face& H) {
  std::vector<VertexSet> out;
  ToGraph hg = face_graph(g, H);
  auto factors = cell_factors(hg);
  if (!factors) return out;
  // Per factor: allowed projection patterns, one list per choice.
  std::vector<std::vector<std::vector<Word>>> choices;
  for (const auto& f : *factors) {
    std::vector<Word> pats;
    for (Word w : hg.vertices()) pats.push_back(project(w, f.classes));
    ToGraph p(popcount(f.classes), pats);
    std::vector<std::vector<Word>> opts;
    if (!f.cycle()) {
      opts = {{p.vertex(0)}, {p.vertex(1)}};
    } else {
      auto cyc = cycle_order(p, p.all());
      for (const auto& run : cyclic_runs(cyc, p.size() / 2 - 1)) {
        std::vector<Word> ws;
        for (auto i : run) ws.push_back(p.vertex(i));
        opts.push_back(ws);
      }
    }
    choices.push_back(std::move(opts));
  }
  std::vector<std::size_t> pick(choices.size(), 0);
  while (true) {
    VertexSet c(g.size());
    H.topes.for_each([&](std::size_t i) {
      Word w = project(g.vertex(i), H.zero());
      for (std::size_t k = 0; k < factors->size(); ++k) {
        const auto& allowed = choices[k][pick[k]];
        if (std::find(allowed.begin(), allowed.end(), project(w, (*factors)[k].classes)) ==
            allowed.end())
          return;
      }
      c.insert(i);
    });
    if (!c.empty()) out.push_back(std::move(c));
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return out;
}

// Connected subsets of s with at most `budget` vertices, each once, that
// never contain a vertex together with its antipode (ESU enumeration).
template <class F>
void connected_subsets(const ToGraph& g, const VertexSet& s, const HostFace& hf,
                       std::size_t budget, F&& report) {
  std::vector<std::size_t> sub;
  VertexSet in(g.size()), near(g.size());
  bool stop = false;
  std::function<void(std::vector<std::size_t>, std::size_t)> extend =
      [&](std::vector<std::size_t> ext, std::size_t root) {
        if (stop) return;
        if (!report(in)) {
          stop = true;
          return;
        }
        if (sub.size() == budget) return;
        while (!ext.empty() && !stop) {
          std::size_t w = ext.back();
          ext.pop_back();
          if (in.contains(hf.flip[w])) continue;
          auto next = ext;
          for (auto u : g.neighbors(w))
            if (u > root && s.contains(u) && !in.contains(u) && !near.contains(u) &&
                std::find(next.begin(), next.end(), u) == next.end())
              next.push_back(u);
          VertexSet saved = near;
          sub.push_back(w);
          in.insert(w);
          for (auto u : g.neighbors(w)) near.insert(u);
          extend(std::move(next), root);
          in.erase(w);
          sub.pop_back();
          near = saved;
        }
      };
  s.for_each([&](std::size_t v) {
    if (stop) return;
    std::vector<std::size_t> ext;
    for (auto u : g.neighbors(v))
      if (u > v && s.contains(u)) ext.push_back(u);
    sub = {v};
    in = VertexSet(g.size());
    in.insert(v);
    near = VertexSet(g.size());
    for (auto u : g.neighbors(v)) near.insert(u);
    extend(std::move(ext), v);
  });
}

}  // namespace detail

// Corners of a COM. Per maximal face H: rank <= 2 faces use the cycle rule
// (all runs of |H|/2 - 1 consecutive vertices), cubes use single vertices,
// cells add products of factor corners, and everything else falls back to
// connected candidates of at most `budget` vertices.
inline CornerList find_corners(const ToGraph& g, const FaceSet& fs, const CornerSearch& opt = {}) {
  CornerList out;
  std::set<std::vector<Word>> seen;
  auto consider = [&](const detail::HostFace& hf, const VertexSet& c) {
    if (opt.limit && out.corners.size() >= opt.limit) return false;
    const VertexSet neg = hf.negate(c);
    if (c.intersects(neg) || !hf.facets_split(c, neg)) return true;
    auto ws = g.words_of(c);
    if (seen.count(ws)) return true;
    auto chk = verify_corner(g, fs, c);
    if (!chk.ok) return true;
    seen.insert(ws);
    out.corners.push_back({ws, fs[*chk.host].covector});
    return !(opt.limit && out.corners.size() >= opt.limit);
  };
  for (auto h : fs.maximal()) {
    const Face& H = fs[h];
    if (H.rank == 0) continue;
    detail::HostFace hf(g, fs, h);
    bool go = true;
    if (H.rank == 1 || H.is_cube()) {
      H.topes.for_each([&](std::size_t i) {
        VertexSet c(g.size());
        c.insert(i);
        if (go) go = consider(hf, c);
      });
    } else if (H.rank == 2) {
      auto cyc = detail::cycle_order(g, H.topes);
      for (const auto& run : detail::cyclic_runs(cyc, cyc.size() / 2 - 1)) {
        VertexSet c(g.size());
        for (auto i : run) c.insert(i);
        if (!(go = consider(hf, c))) break;
      }
    } else {
      for (const auto& c : detail::cell_corner_candidates(g, H))
        if (!(go = consider(hf, c))) break;
      const std::size_t half = H.size() / 2;
      if (half > static_cast<std::size_t>(opt.budget)) out.incomplete = true;
      if (go)
        detail::connected_subsets(g, H.topes, hf,
                                  std::min(half, static_cast<std::size_t>(std::max(opt.budget, 0))),
                                  [&](const VertexSet& c) { return consider(hf, c); });
    }
    if (opt.limit && out.corners.size() >= opt.limit) break;
  }
  std::sort(out.corners.begin(), out.corners.end(), corner_less);
  return out;
}

inline CornerList find_corners(const ToGraph& g, const CornerSearch& opt = {}) {
  return find_corners(g, FaceSet(g), opt);
}

inline CornerList find_corners(const ToGraph& g, int budget) {
  return find_corners(g, CornerSearch{budget, 0});
}

// ---------------------------------------------------------------- peeling

enum class PeelStrategy { Lop, Rank2, Hypercellular, Generic };

inline const char* to_string(PeelStrategy s) {
  switch (s) {
    case PeelStrategy::Lop: return "lop";
    case PeelStrategy::Rank2: return "rank2";
    case PeelStrategy::Hypercellular: return "hypercellular";
    case PeelStrategy::Generic: return "generic";
  }
  return "?";
}

inline PeelStrategy peel_strategy_from_string(const std::string& s) {
  if (s == "lop") return PeelStrategy::Lop;
  if (s == "rank2") return PeelStrategy::Rank2;
  if (s == "hypercellular") return PeelStrategy::Hypercellular;
  if (s == "generic") return PeelStrategy::Generic;
  throw std::invalid_argument("unknown strategy '" + s + "'");
}

struct Peeling {
  bool complete = false;
  std::vector<Corner> steps;    // the last step is the final single vertex
  std::optional<ToGraph> stuck; // residual graph without a corner
  std::string failure;
};

inline ToGraph remove_words(const ToGraph& g, const std::vector<Word>& c) {
  std::vector<Word> keep;
  for (Word w : g.vertices())
    if (!std::binary_search(c.begin(), c.end(), w)) keep.push_back(w);
  return ToGraph(g.width(), std::move(keep));
}

namespace detail {

// Blocks (2-connected components and bridges) and cut vertices.
struct BlockTree {
  std::vector<VertexSet> blocks;
  VertexSet cut;
};

inline BlockTree blocks_of(const ToGraph& g) {
  const std::size_t n = g.size();
  BlockTree bt;
  bt.cut = VertexSet(n);
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  int t = 0;
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t u, std::size_t parent) {
    disc[u] = low[u] = t++;
    int children = 0;
    for (auto v : g.neighbors(u)) {
      if (disc[v] < 0) {
        ++children;
        stack.emplace_back(u, v);
        dfs(v, u);
        low[u] = std::min(low[u], low[v]);
        if (low[v] >= disc[u]) {
          if (parent != n || children > 1) bt.cut.insert(u);
          VertexSet b(n);
          while (true) {
            auto [a, c] = stack.back();
            stack.pop_back();
            b.insert(a);
            b.insert(c);
            if (a == u && c == v) break;
          }
          bt.blocks.push_back(std::move(b));
        }
      } else if (v != parent && disc[v] < disc[u]) {
        stack.emplace_back(u, v);
        low[u] = std::min(low[u], disc[v]);
      }
    }
  };
  if (n) dfs(0, n);
  return bt;
}

inline std::optional<Corner> lop_corner(const ToGraph& g, const FaceSet& fs) {
  auto maxs = fs.maximal();
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::optional<std::size_t> only;
    int hits = 0;
    for (auto m : maxs)
      if (fs[m].topes.contains(i)) {
        ++hits;
        only = m;
      }
    if (hits != 1 || !fs[*only].is_cube()) continue;
    VertexSet c(g.size());
    c.insert(i);
    if (auto chk = verify_corner(g, fs, c)) return Corner{{g.vertex(i)}, fs[*chk.host].covector};
  }
  return std::nullopt;
}

// A corner avoiding the cut vertex of some leaf block.
inline std::optional<Corner> rank2_corner(const ToGraph& g, const FaceSet& fs) {
  auto all = find_corners(g, fs, {}).corners;
  auto bt = blocks_of(g);
  std::optional<Corner> best;
  for (const auto& b : bt.blocks) {
    if ((b & bt.cut).count() > 1) continue;
    VertexSet inner = b - bt.cut;
    for (const auto& c : all)
      if (g.set_of(c.vertices).subset_of(inner)) {
        if (!best || corner_less(c, *best)) best = c;
        break;
      }
  }
  if (!best && !all.empty()) best = all.front();
  return best;
}

// Zone-graph recursion: pick a class f whose zone carrier covers one
// halfspace, find a corner of the zone graph, take the maximal face A_f
// of the zone graph containing it, and lift through the cell factor of f
// in the corresponding cell of g.
inline std::optional<VertexSet> hypercellular_corner(const ToGraph& g, std::string* why) {
  if (g.size() == 1) {
    VertexSet c(1);
    c.insert(0);
    return c;
  }
  FaceSet fs(g);
  int f = -1;
  bool side = true;
  for (int e = 0; e < g.width() && f < 0; ++e) {
    VertexSet carrier(g.size());
    for (const auto& face : fs.faces())
      if (face.zero() & bit(e)) carrier |= face.topes;
    if (carrier.empty()) continue;  // constant coordinate of a residual graph
    for (bool s : {true, false})
      if (halfspace(g, e, s).subset_of(carrier)) {
        f = e;
        side = s;
        break;
      }
  }
  if (f < 0) {
    if (why) *why = "no class whose carrier covers a halfspace";
    return std::nullopt;
  }
  ZoneGraph z = zone_graph(fs, bit(f));
  auto inner = hypercellular_corner(z.embedding, why);
  if (!inner) return std::nullopt;
  // Zone vertices of the inner corner and of the maximal face A_f around it.
  FaceSet zfs(z.embedding);
  std::optional<std::size_t> af;
  for (auto m : zfs.maximal())
    if (inner->subset_of(zfs[m].topes)) {
      if (af) {
        if (why) *why = "zone corner lies in several maximal faces";
        return std::nullopt;
      }
      af = m;
    }
  if (!af) return std::nullopt;
  VertexSet ends(g.size()), dends(g.size());
  for (std::size_t k = 0; k < z.vertices.size(); ++k) {
    const auto& edge = fs[z.vertices[k]].topes;
    if (zfs[*af].topes.contains(z.embedded[k])) ends |= edge;
    if (inner->contains(z.embedded[k])) dends |= edge;
  }
  auto ai = face_of_set(fs, convex_hull(g, ends));
  if (!ai) {
    if (why) *why = "hull of the lifted zone face is not a face";
    return std::nullopt;
  }
  const Face& A = fs[*ai];
  ToGraph ag = face_graph(g, A);
  auto factors = cell_factors(ag);
  if (!factors) {
    if (why) *why = "lifted face is not a cell";
    return std::nullopt;
  }
  const Word fl = project(bit(f), A.zero());  // f in the face's coordinates
  Word sf = 0;
  for (const auto& fc : *factors)
    if (fc.classes & fl) sf = fc.classes;
  const Word others = width_mask(ag.width()) & ~sf;
  std::set<Word> dproj;
  dends.for_each([&](std::size_t i) { dproj.insert(project(project(g.vertex(i), A.zero()), others)); });
  const Word want = side ? fl : 0;
  std::set<Word> allowed;  // allowed patterns of the f-factor
  if (popcount(sf) == 1) {
    allowed.insert(project(want, sf));
  } else {
    std::set<Word> e1;  // f-factor patterns of the inner corner's f-edges
    dends.for_each([&](std::size_t i) { e1.insert(project(project(g.vertex(i), A.zero()), sf)); });
    if (e1.size() != 2) {
      if (why) *why = "inner corner spans several f-edges of the cycle factor";
      return std::nullopt;
    }
    std::vector<Word> pats;
    for (Word w : ag.vertices()) pats.push_back(project(w, sf));
    ToGraph p(popcount(sf), pats);
    const Word pf = project(fl, sf);
    Word keep_end = 0;
    for (Word w : e1)
      if ((w & pf) == project(want, sf)) keep_end = w;
    for (Word w : p.vertices()) {
      if ((w & pf) != project(want, sf)) continue;
      // Drop the endpoint of the other f-edge on this side.
      if (p.contains(w ^ pf) && w != keep_end) continue;
      allowed.insert(w);
    }
  }
  VertexSet c(g.size());
  A.topes.for_each([&](std::size_t i) {
    Word w = project(g.vertex(i), A.zero());
    if (allowed.count(project(w, sf)) && dproj.count(project(w, others))) c.insert(i);
  });
  auto chk = verify_corner(g, fs, c);
  if (!chk) {
    if (why) *why = "lifted set is not a corner: " + chk.reason;
    return std::nullopt;
  }
  return c;
}

}  // namespace detail

// Repeatedly removes a corner until one vertex is left.
inline Peeling corner_peeling(const ToGraph& g, PeelStrategy strategy, int budget = 8) {
  if (!is_partial_cube(g)) throw PreconditionError("corner_peeling: not a partial cube");
  const Labels labels = classify(g);
  switch (strategy) {
    case PeelStrategy::Lop:
      if (!labels.has(Label::LOP)) throw PreconditionError("corner_peeling: graph is not an LOP");
      break;
    case PeelStrategy::Rank2:
      if (!labels.has(Label::COM) || rank(g) > 2)
        throw PreconditionError("corner_peeling: needs a COM of rank at most 2");
      break;
    case PeelStrategy::Hypercellular:
      if (!is_hypercellular(g)) throw PreconditionError("corner_peeling: graph is not hypercellular");
      break;
    case PeelStrategy::Generic:
      if (!labels.has(Label::COM)) throw PreconditionError("corner_peeling: graph is not a COM");
      break;
  }
  Peeling out;
  ToGraph r = g;
  while (r.size() > 1) {
    FaceSet fs(r);
    std::optional<Corner> c;
    switch (strategy) {
      case PeelStrategy::Lop:
        c = detail::lop_corner(r, fs);
        if (!c) out.failure = "no vertex in a unique maximal cube is a corner";
        break;
      case PeelStrategy::Rank2:
        c = detail::rank2_corner(r, fs);
        if (!c) out.failure = "no corner in the rank-2 residual";
        break;
      case PeelStrategy::Hypercellular: {
        std::string why;
        if (auto s = detail::hypercellular_corner(r, &why)) {
          auto chk = verify_corner(r, fs, *s);
          c = Corner{r.words_of(*s), fs[*chk.host].covector};
        } else {
          out.failure = why;
        }
        break;
      }
      case PeelStrategy::Generic: {
        auto list = find_corners(r, fs, {budget, 0});
        if (!list.corners.empty())
          c = list.corners.front();
        else
          out.failure = list.incomplete ? "no corner within the search budget" : "no corner";
        break;
      }
    }
    if (!c) {
      out.stuck = r;
      return out;
    }
    out.steps.push_back(*c);
    r = remove_words(r, c->vertices);
  }
  out.steps.push_back({{r.vertex(0)}, CoVector::of_tope(r.vertex(0), r.width())});
  out.complete = true;
  return out;
}

// Replays a peeling: every step but the last is a corner of what is left,
// and the steps partition the vertex set.
inline bool verify_peeling(const ToGraph& g, const std::vector<Corner>& steps,
                           std::string* why = nullptr) {
  auto fail = [&](std::string m) {
    if (why) *why = std::move(m);
    return false;
  };
  ToGraph r = g;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const auto& c = steps[k].vertices;
    for (Word w : c)
      if (!r.contains(w)) return fail("step " + std::to_string(k) + " uses a removed vertex");
    if (k + 1 == steps.size()) {
      if (c.size() != 1 || r.size() != 1) return fail("last step is not the final vertex");
      return true;
    }
    auto chk = verify_corner(r, c);
    if (!chk) return fail("step " + std::to_string(k) + ": " + chk.reason);
    r = remove_words(r, c);
  }
  return fail("no steps");
}

// (min degree, rank) of a graph, for the bound min degree <= rank.
inline std::pair<int, int> min_degree_vs_rank(const ToGraph& g) {
  return {g.min_degree(), rank(g)};
}

}  // namespace topecube
