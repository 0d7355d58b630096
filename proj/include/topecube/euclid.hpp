#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "topecube/faces.hpp"

namespace topecube {

// ------------------------------------------------------- cocircuit graph

enum class CocircuitMode {
  Auto,    // Oriented for antipodal graphs, Affine otherwise
  Oriented,  // nodes: faces of rank r-1
  Affine,  // nodes: maximal faces of a pure COM
};

// Edges of G* sharing the zero set F of their intersection face.
struct Line {
  Word F = 0;
  std::vector<std::size_t> nodes;  // cyclic order when `cycle`
  std::vector<std::size_t> edges;  // indices into CocircuitGraph::edges
  bool cycle = false;
  bool tree_like = false;  // line graph of a tree
};

struct CocircuitGraph {
  ToGraph host;
  FaceSet faces;
  CocircuitMode mode = CocircuitMode::Oriented;
  int node_rank = 0;
  std::vector<std::size_t> nodes;  // face indices
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // node positions, first < second
  std::vector<Word> edge_zero;     // zero set of the intersection face
  std::vector<Line> lines;

  const Face& node(std::size_t k) const { return faces[nodes[k]]; }
  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(nodes.size());
    for (const auto& [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    return adj;
  }
};

namespace detail {

// Connected, every block a clique, every vertex in at most two blocks.
inline bool is_line_graph_of_tree(std::size_t n,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& es) {
  if (n == 0) return false;
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : es) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  // Maximal cliques of a claw-free block graph are its blocks; grow each
  // edge into the clique of common neighbours and check consistency.
  std::vector<std::vector<bool>> nb(n, std::vector<bool>(n, false));
  for (auto [a, b] : es) nb[a][b] = nb[b][a] = true;
  std::vector<int> blocks_at(n, 0);
  std::set<std::vector<std::size_t>> blocks;
  for (auto [a, b] : es) {
    std::vector<std::size_t> c{a, b};
    for (std::size_t x = 0; x < n; ++x)
      if (x != a && x != b && nb[a][x] && nb[b][x]) c.push_back(x);
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j)
        if (!nb[c[i]][c[j]]) return false;
    std::sort(c.begin(), c.end());
    blocks.insert(c);
  }
  std::size_t block_edges = 0;
  for (const auto& c : blocks) {
    for (auto x : c) ++blocks_at[x];
    block_edges += c.size() * (c.size() - 1) / 2;
  }
  if (block_edges != es.size()) return false;  // some edge in two cliques
  for (auto k : blocks_at)
    if (k > 2) return false;
  // Connected and the block/cut structure is a tree.
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> q{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!q.empty()) {
    auto u = q.front();
    q.pop_front();
    for (auto v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        q.push_back(v);
      }
  }
  if (reached != n) return false;
  std::size_t incidences = 0;
  for (auto k : blocks_at) incidences += static_cast<std::size_t>(k);
  // vertices + blocks - 1 == incidences for a tree of blocks and vertices
  return n + blocks.size() - 1 == incidences || (n == 1 && blocks.empty());
}

}  // namespace detail

inline CocircuitGraph cocircuit_graph(const ToGraph& g, CocircuitMode mode = CocircuitMode::Auto) {
  if (!is_partial_cube(g)) throw PreconditionError("cocircuit_graph: not a partial cube");
  CocircuitGraph cg;
  cg.host = g;
  cg.faces = FaceSet(g);
  const FaceSet& fs = cg.faces;
  if (mode == CocircuitMode::Auto)
    mode = is_antipodal(g) ? CocircuitMode::Oriented : CocircuitMode::Affine;
  cg.mode = mode;
  if (mode == CocircuitMode::Oriented) {
    if (!is_antipodal(g)) throw PreconditionError("cocircuit_graph: oriented mode needs an antipodal graph");
    cg.node_rank = rank(g) - 1;
    cg.nodes = fs.of_rank(cg.node_rank);
  } else {
    cg.nodes = fs.maximal();
    cg.node_rank = fs[cg.nodes.front()].rank;
    for (auto i : cg.nodes)
      if (fs[i].rank != cg.node_rank) throw PreconditionError("cocircuit_graph: COM is not pure");
  }
  for (std::size_t a = 0; a < cg.nodes.size(); ++a)
    for (std::size_t b = a + 1; b < cg.nodes.size(); ++b) {
      VertexSet x = fs[cg.nodes[a]].topes & fs[cg.nodes[b]].topes;
      auto f = face_of_set(fs, x);
      if (f && fs[*f].rank == cg.node_rank - 1) {
        cg.edges.emplace_back(a, b);
        cg.edge_zero.push_back(fs[*f].zero());
      }
    }
  if (mode == CocircuitMode::Affine && cg.nodes.size() > 1) {
    std::vector<bool> seen(cg.nodes.size(), false);
    auto adj = cg.adjacency();
    std::deque<std::size_t> q{0};
    seen[0] = true;
    while (!q.empty()) {
      auto u = q.front();
      q.pop_front();
      for (auto v : adj[u])
        if (!seen[v]) seen[v] = true, q.push_back(v);
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
      throw PreconditionError("cocircuit_graph: COM is not pure (G* disconnected)");
  }
  std::map<Word, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < cg.edges.size(); ++i) groups[cg.edge_zero[i]].push_back(i);
  for (auto& [F, es] : groups) {
    Line L;
    L.F = F;
    L.edges = es;
    std::map<std::size_t, std::size_t> local;
    std::vector<std::pair<std::size_t, std::size_t>> les;
    for (auto i : es)
      for (auto v : {cg.edges[i].first, cg.edges[i].second})
        if (!local.count(v)) {
          local[v] = L.nodes.size();
          L.nodes.push_back(v);
        }
    for (auto i : es) les.emplace_back(local[cg.edges[i].first], local[cg.edges[i].second]);
    std::vector<int> deg(L.nodes.size(), 0);
    for (auto [a, b] : les) ++deg[a], ++deg[b];
    L.cycle = L.nodes.size() >= 3 && les.size() == L.nodes.size() &&
              std::all_of(deg.begin(), deg.end(), [](int d) { return d == 2; });
    L.tree_like = detail::is_line_graph_of_tree(L.nodes.size(), les);
    if (L.cycle) {
      std::vector<std::vector<std::size_t>> adj(L.nodes.size());
      for (auto [a, b] : les) adj[a].push_back(b), adj[b].push_back(a);
      std::vector<std::size_t> order{0};
      std::size_t prev = L.nodes.size(), cur = 0;
      while (true) {
        std::size_t nxt = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
        if (nxt == 0) break;
        order.push_back(nxt);
        prev = cur;
        cur = nxt;
      }
      std::vector<std::size_t> cyc;
      for (auto k : order) cyc.push_back(L.nodes[k]);
      if (cyc.size() == L.nodes.size())
        L.nodes = cyc;
      else
        L.cycle = false;  // several disjoint cycles share F
    }
    cg.lines.push_back(std::move(L));
  }
  return cg;
}

// ---------------------------------------------------------- orientation

struct MixedOrientation {
  int e = 0;
  std::vector<std::int8_t> state;  // per edge: 0 undirected, 1 first->second, -1 second->first
};

// Each line crossed by e is oriented from the E_e^- side towards its
// crossed nodes and away from them on the E_e^+ side; edges whose ends are
// equally far from the crossed nodes stay undirected.
inline MixedOrientation orient(const CocircuitGraph& cg, int e) {
  if (e < 0 || e >= cg.host.width()) throw PreconditionError("orient: invalid class");
  MixedOrientation mo;
  mo.e = e;
  mo.state.assign(cg.edges.size(), 0);
  for (const auto& L : cg.lines) {
    if (L.F & bit(e)) continue;
    std::map<std::size_t, std::vector<std::size_t>> adj;
    for (auto i : L.edges) {
      adj[cg.edges[i].first].push_back(cg.edges[i].second);
      adj[cg.edges[i].second].push_back(cg.edges[i].first);
    }
    std::map<std::size_t, int> dist;
    std::deque<std::size_t> q;
    for (auto v : L.nodes)
      if (cg.node(v).zero() & bit(e)) {
        dist[v] = 0;
        q.push_back(v);
      }
    if (q.empty()) continue;
    while (!q.empty()) {
      auto u = q.front();
      q.pop_front();
      for (auto v : adj[u])
        if (!dist.count(v)) {
          dist[v] = dist[u] + 1;
          q.push_back(v);
        }
    }
    for (auto i : L.edges) {
      auto [a, b] = cg.edges[i];
      if (!dist.count(a) || !dist.count(b) || dist[a] == dist[b]) continue;
      const bool a_far = dist[a] > dist[b];
      const std::size_t far = a_far ? a : b;
      const bool plus_side = cg.node(far).covector.sign(e) > 0;
      // minus side: far -> near; plus side: near -> far
      const bool from_a = plus_side ? !a_far : a_far;
      mo.state[i] = from_a ? 1 : -1;
    }
  }
  return mo;
}

struct AcyclicityResult {
  bool strict = true;
  std::vector<std::size_t> witness;  // closed walk of nodes using a directed edge
  explicit operator bool() const { return strict; }
};

// Undirected edges count both ways; strict iff no directed edge lies on a
// cycle, i.e. no directed edge joins two nodes of one strong component.
inline AcyclicityResult is_strictly_acyclic(const CocircuitGraph& cg, const MixedOrientation& mo) {
  const std::size_t n = cg.nodes.size();
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t i = 0; i < cg.edges.size(); ++i) {
    auto [a, b] = cg.edges[i];
    if (mo.state[i] >= 0) out[a].push_back(b);
    if (mo.state[i] <= 0) out[b].push_back(a);
  }
  // Tarjan
  std::vector<int> idx(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on(n, false);
  std::vector<std::size_t> st;
  int t = 0, nc = 0;
  std::function<void(std::size_t)> dfs = [&](std::size_t u) {
    idx[u] = low[u] = t++;
    st.push_back(u);
    on[u] = true;
    for (auto v : out[u]) {
      if (idx[v] < 0) {
        dfs(v);
        low[u] = std::min(low[u], low[v]);
      } else if (on[v]) {
        low[u] = std::min(low[u], idx[v]);
      }
    }
    if (low[u] == idx[u]) {
      while (true) {
        auto v = st.back();
        st.pop_back();
        on[v] = false;
        comp[v] = nc;
        if (v == u) break;
      }
      ++nc;
    }
  };
  for (std::size_t u = 0; u < n; ++u)
    if (idx[u] < 0) dfs(u);
  AcyclicityResult r;
  for (std::size_t i = 0; i < cg.edges.size(); ++i) {
    if (mo.state[i] == 0) continue;
    auto [a, b] = cg.edges[i];
    const std::size_t from = mo.state[i] > 0 ? a : b, to = mo.state[i] > 0 ? b : a;
    if (comp[from] != comp[to]) continue;
    r.strict = false;
    // Path to -> from inside the component closes the cycle.
    std::vector<std::size_t> prev(n, n);
    std::deque<std::size_t> q{to};
    prev[to] = to;
    while (!q.empty() && prev[from] == n) {
      auto u = q.front();
      q.pop_front();
      for (auto v : out[u])
        if (prev[v] == n && comp[v] == comp[to]) {
          prev[v] = u;
          q.push_back(v);
        }
    }
    std::vector<std::size_t> path;
    for (auto v = from; v != to; v = prev[v]) path.push_back(v);
    path.push_back(to);
    std::reverse(path.begin(), path.end());
    r.witness = {from};
    r.witness.insert(r.witness.end(), path.begin(), path.end());
    return r;
  }
  return r;
}

// ------------------------------------------------------------ Euclidean

inline bool is_euclidean_aom(const ToGraph& g) {
  if (!classify(g).has(Label::AOM)) throw PreconditionError("is_euclidean_aom: not an AOM");
  ToGraph h = drop_constant_coordinates(g);
  auto cg = cocircuit_graph(h, CocircuitMode::Affine);
  for (int e = 0; e < h.width(); ++e)
    if (!is_strictly_acyclic(cg, orient(cg, e))) return false;
  return true;
}

// The AOM E_e^{+/-} of g with the constant coordinate e dropped.
inline ToGraph halfspace_graph(const ToGraph& g, int e, bool positive) {
  return restrict_to(induced(g, halfspace(g, e, positive)), g.full_mask() & ~bit(e));
}

inline bool is_euclidean_om(const ToGraph& g) {
  if (!is_om(g)) throw PreconditionError("is_euclidean_om: not an OM");
  ToGraph h = drop_constant_coordinates(g);
  for (int e = 0; e < h.width(); ++e)
    for (bool s : {true, false})
      if (!is_euclidean_aom(halfspace_graph(h, e, s))) return false;
  return true;
}

// --------------------------------------------- general-position extensions

struct GPExtension {
  VertexSet h1, h2;
  std::vector<std::int8_t> sigma;  // per cocircuit pair, sign of the representative
};

struct GPSearch {
  std::size_t examined = 0;  // complete sign maps tested
  std::size_t found = 0;
  bool incomplete = false;   // stopped at the limit
};

// Sign maps on the cocircuit pairs of an OM, sigma(-X) = -sigma(X). Each
// line of G* must change sign exactly twice around its cycle (checked as
// soon as the line is fully assigned); the cover h1 = topes of +cocircuits,
// h2 = -h1 is then validated by building the expansion and classifying it.
// fn returns false to stop.
template <class F>
GPSearch for_each_gp_extension(const ToGraph& g, std::size_t limit, F&& fn) {
  if (!is_om(g)) throw PreconditionError("general_position_extensions: not an OM");
  if (constant_coordinates(g)) throw PreconditionError("general_position_extensions: constant coordinate");
  GPSearch res;
  auto cg = cocircuit_graph(g, CocircuitMode::Oriented);
  const std::size_t m = cg.nodes.size();
  // pair index and orientation of each node
  std::vector<std::size_t> pair_of(m);
  std::vector<int> orient_of(m);
  std::vector<std::size_t> reps;
  {
    std::unordered_map<std::size_t, std::size_t> pos;
    for (std::size_t k = 0; k < m; ++k) pos[cg.nodes[k]] = k;
    std::vector<bool> done(m, false);
    for (std::size_t k = 0; k < m; ++k) {
      if (done[k]) continue;
      auto neg = cg.faces.find(-cg.node(k).covector);
      if (!neg) throw Error("cocircuit without antipode");
      std::size_t kk = pos.at(*neg);
      pair_of[k] = pair_of[kk] = reps.size();
      orient_of[k] = 1;
      orient_of[kk] = -1;
      done[k] = done[kk] = true;
      reps.push_back(k);
    }
  }
  const std::size_t np = reps.size();
  // lines checked once their last pair is assigned
  std::vector<std::vector<std::size_t>> check_at(np);
  for (std::size_t l = 0; l < cg.lines.size(); ++l) {
    if (!cg.lines[l].cycle) throw Error("line of an OM is not a cycle");
    std::size_t last = 0;
    for (auto k : cg.lines[l].nodes) last = std::max(last, pair_of[k]);
    check_at[last].push_back(l);
  }
  std::vector<std::int8_t> sigma(np, 0);
  auto sign_of = [&](std::size_t k) { return sigma[pair_of[k]] * orient_of[k]; };
  auto line_ok = [&](const Line& L) {
    int changes = 0;
    for (std::size_t i = 0; i < L.nodes.size(); ++i)
      if (sign_of(L.nodes[i]) != sign_of(L.nodes[(i + 1) % L.nodes.size()])) ++changes;
    return changes == 2;
  };
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t p) {
    if (stop) return;
    if (p == np) {
      if (limit && res.examined >= limit) {
        res.incomplete = true;
        stop = true;
        return;
      }
      ++res.examined;
      VertexSet h1(g.size()), h2(g.size());
      for (std::size_t k = 0; k < m; ++k) (sign_of(k) > 0 ? h1 : h2) |= cg.node(k).topes;
      if (!is_isometric_subset(g, h1) || !is_isometric_subset(g, h2)) return;
      ToGraph x = expand_unchecked(g, h1, h2);
      if (!is_om(x)) return;
      ++res.found;
      if (!fn(GPExtension{h1, h2, sigma})) stop = true;
      return;
    }
    for (std::int8_t s : {std::int8_t{1}, std::int8_t{-1}}) {
      sigma[p] = s;
      bool ok = true;
      for (auto l : check_at[p])
        if (!line_ok(cg.lines[l])) {
          ok = false;
          break;
        }
      if (ok) rec(p + 1);
      if (stop) break;
    }
    sigma[p] = 0;
  };
  rec(0);
  return res;
}

struct GPExtensions {
  std::vector<GPExtension> list;
  bool incomplete = false;
};

inline GPExtensions general_position_extensions(const ToGraph& g, std::size_t limit = 0) {
  GPExtensions out;
  auto s = for_each_gp_extension(g, limit, [&](GPExtension x) {
    out.list.push_back(std::move(x));
    return true;
  });
  out.incomplete = s.incomplete;
  return out;
}

enum class MandelResult { True, FalseAtLimit, FalseExhausted };

inline const char* to_string(MandelResult m) {
  switch (m) {
    case MandelResult::True: return "true";
    case MandelResult::FalseAtLimit: return "false-at-limit";
    case MandelResult::FalseExhausted: return "false-exhausted";
  }
  return "?";
}

inline constexpr std::size_t kDefaultMandelLimit = std::size_t{1} << 20;

// Some general-position expansion has both sides Euclidean AOMs.
inline MandelResult is_mandel(const ToGraph& g, std::size_t limit = kDefaultMandelLimit) {
  ToGraph h = drop_constant_coordinates(g);
  std::map<std::vector<Word>, bool> memo;
  auto euclidean_side = [&](const VertexSet& s) {
    auto ws = h.words_of(s);
    auto it = memo.find(ws);
    if (it != memo.end()) return it->second;
    bool v = is_euclidean_aom(ToGraph(h.width(), ws));
    memo[ws] = v;
    return v;
  };
  bool hit = false;
  auto s = for_each_gp_extension(h, limit, [&](const GPExtension& x) {
    hit = euclidean_side(x.h1) && euclidean_side(x.h2);
    return !hit;
  });
  if (hit) return MandelResult::True;
  return s.incomplete ? MandelResult::FalseAtLimit : MandelResult::FalseExhausted;
}

}  // namespace topecube
