#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "topecube/sign_word.hpp"
#include "topecube/vertex_set.hpp"

namespace topecube {

namespace detail {

inline constexpr std::uint16_t kUnreachable = 0xFFFF;

struct GraphData {
  int width = 0;
  std::vector<Word> words;
  std::vector<std::int32_t> dense;  // word -> index, only for small widths
  std::vector<std::uint32_t> adj_off;
  std::vector<std::uint32_t> adj;
  mutable std::once_flag dist_once;
  mutable std::vector<std::uint16_t> dist;
};

}  // namespace detail

// Vertex set of a subgraph of Q_n; adjacency is Hamming distance one.
// Immutable after construction, so copies share storage.
class ToGraph {
 public:
  ToGraph() : ToGraph(0, {}) {}

  ToGraph(int width, std::vector<Word> words) {
    check_width(width);
    auto d = std::make_shared<detail::GraphData>();
    d->width = width;
    Word mask = width_mask(width);
    for (Word w : words)
      if (w & ~mask)
        throw std::invalid_argument("word has bits beyond width " +
                                    std::to_string(width));
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    d->words = std::move(words);
    const std::size_t nv = d->words.size();
    if (width <= 16 && (std::size_t{1} << width) <= 64 * nv + 1024) {
      d->dense.assign(std::size_t{1} << width, -1);
      for (std::size_t i = 0; i < nv; ++i)
        d->dense[d->words[i]] = static_cast<std::int32_t>(i);
    }
    data_ = std::move(d);
    build_adjacency();
  }

  static ToGraph from_strings(std::initializer_list<std::string_view> topes) {
    std::vector<Word> ws;
    int n = -1;
    for (auto s : topes) {
      if (n >= 0 && static_cast<int>(s.size()) != n)
        throw std::invalid_argument("mixed tope lengths");
      n = static_cast<int>(s.size());
      ws.push_back(word_from_string(s));
    }
    return ToGraph(std::max(n, 0), std::move(ws));
  }

  int width() const { return data_->width; }
  std::size_t size() const { return data_->words.size(); }
  bool empty() const { return data_->words.empty(); }
  const std::vector<Word>& vertices() const { return data_->words; }
  Word vertex(std::size_t i) const { return data_->words[i]; }
  Word full_mask() const { return width_mask(width()); }

  std::optional<std::size_t> index_of(Word w) const {
    const auto& d = *data_;
    if (!d.dense.empty()) {
      if (w >= d.dense.size() || d.dense[w] < 0) return std::nullopt;
      return static_cast<std::size_t>(d.dense[w]);
    }
    auto it = std::lower_bound(d.words.begin(), d.words.end(), w);
    if (it == d.words.end() || *it != w) return std::nullopt;
    return static_cast<std::size_t>(it - d.words.begin());
  }
  bool contains(Word w) const { return index_of(w).has_value(); }

  std::size_t require_index(Word w) const {
    auto i = index_of(w);
    if (!i) throw PreconditionError("vertex " + word_to_string(w, width()) +
                                    " not in graph");
    return *i;
  }

  std::span<const std::uint32_t> neighbors(std::size_t i) const {
    const auto& d = *data_;
    return {d.adj.data() + d.adj_off[i], d.adj.data() + d.adj_off[i + 1]};
  }
  std::size_t degree(std::size_t i) const { return neighbors(i).size(); }
  std::size_t edge_count() const { return data_->adj.size() / 2; }

  int min_degree() const {
    std::size_t best = static_cast<std::size_t>(width());
    for (std::size_t i = 0; i < size(); ++i) best = std::min(best, degree(i));
    return static_cast<int>(best);
  }

  // All-pairs BFS distances, computed on first use.
  std::uint16_t dist(std::size_t i, std::size_t j) const {
    ensure_distances();
    return data_->dist[i * size() + j];
  }

  VertexSet all() const { return VertexSet::full(size()); }

  VertexSet set_of(std::span<const Word> words) const {
    VertexSet s(size());
    for (Word w : words) s.insert(require_index(w));
    return s;
  }
  std::vector<Word> words_of(const VertexSet& s) const {
    std::vector<Word> out;
    s.for_each([&](std::size_t i) { out.push_back(vertex(i)); });
    return out;
  }

  bool operator==(const ToGraph& o) const {
    return width() == o.width() && vertices() == o.vertices();
  }
  bool same_storage(const ToGraph& o) const { return data_ == o.data_; }

 private:
  void build_adjacency() {
    auto& d = *data_;
    const std::size_t nv = d.words.size();
    d.adj_off.assign(nv + 1, 0);
    for (std::size_t i = 0; i < nv; ++i) {
      for (int e = 0; e < d.width; ++e)
        if (auto j = index_of(d.words[i] ^ bit(e)))
          d.adj.push_back(static_cast<std::uint32_t>(*j));
      d.adj_off[i + 1] = static_cast<std::uint32_t>(d.adj.size());
    }
  }

  void ensure_distances() const {
    const auto& d = *data_;
    std::call_once(d.dist_once, [&] {
      const std::size_t nv = size();
      d.dist.assign(nv * nv, detail::kUnreachable);
      std::vector<std::uint32_t> queue(nv);
      for (std::size_t s = 0; s < nv; ++s) {
        auto* row = d.dist.data() + s * nv;
        std::size_t head = 0, tail = 0;
        row[s] = 0;
        queue[tail++] = static_cast<std::uint32_t>(s);
        while (head < tail) {
          auto u = queue[head++];
          for (auto v : neighbors(u))
            if (row[v] == detail::kUnreachable) {
              row[v] = static_cast<std::uint16_t>(row[u] + 1);
              queue[tail++] = v;
            }
        }
      }
    });
  }

  std::shared_ptr<detail::GraphData> data_;
};

inline ToGraph induced(const ToGraph& g, const VertexSet& s) {
  return ToGraph(g.width(), g.words_of(s));
}

// ---------------------------------------------------------------- metric

struct PartialCubeCheck {
  bool ok = false;
  bool disconnected = false;
  Word u = 0, v = 0;   // violating pair when !ok and connected
  int graph_distance = 0;
  explicit operator bool() const { return ok; }
};

inline PartialCubeCheck check_partial_cube(const ToGraph& g) {
  PartialCubeCheck r;
  if (g.empty()) throw PreconditionError("empty graph");
  const std::size_t nv = g.size();
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t j = i + 1; j < nv; ++j) {
      auto d = g.dist(i, j);
      if (d == detail::kUnreachable) {
        r.disconnected = true;
        r.u = g.vertex(i);
        r.v = g.vertex(j);
        return r;
      }
      if (d != hamming(g.vertex(i), g.vertex(j))) {
        r.u = g.vertex(i);
        r.v = g.vertex(j);
        r.graph_distance = d;
        return r;
      }
    }
  r.ok = true;
  return r;
}

inline bool is_partial_cube(const ToGraph& g) {
  return !g.empty() && check_partial_cube(g).ok;
}

inline int distance(const ToGraph& g, Word u, Word v) {
  auto d = g.dist(g.require_index(u), g.require_index(v));
  return d == detail::kUnreachable ? -1 : d;
}

// S is isometric in a partial cube iff every u in S has, for each other
// v in S, a neighbour inside S one step closer to v.
inline bool is_isometric_subset(const ToGraph& g, const VertexSet& s) {
  auto idx = s.indices();
  for (std::size_t a : idx) {
    Word u = g.vertex(a);
    for (std::size_t b : idx) {
      if (a == b) continue;
      Word v = g.vertex(b);
      int d = hamming(u, v);
      bool step = false;
      for (auto w : g.neighbors(a))
        if (s.contains(w) && hamming(g.vertex(w), v) == d - 1) {
          step = true;
          break;
        }
      if (!step) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- classes

struct ThetaClass {
  int e = 0;  // zero-based coordinate
  VertexSet plus, minus;
  std::size_t edges = 0;
};

inline VertexSet halfspace(const ToGraph& g, int e, bool positive) {
  VertexSet s(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    if (((g.vertex(i) >> e) & 1) == static_cast<Word>(positive)) s.insert(i);
  return s;
}

inline std::vector<ThetaClass> theta_classes(const ToGraph& g) {
  std::vector<ThetaClass> out;
  for (int e = 0; e < g.width(); ++e) {
    ThetaClass c;
    c.e = e;
    c.plus = halfspace(g, e, true);
    c.minus = halfspace(g, e, false);
    c.plus.for_each([&](std::size_t i) {
      if (g.contains(g.vertex(i) ^ bit(e))) ++c.edges;
    });
    out.push_back(std::move(c));
  }
  return out;
}

inline Word constant_coordinates(const ToGraph& g) {
  Word all_and = g.full_mask(), all_or = 0;
  for (Word w : g.vertices()) {
    all_and &= w;
    all_or |= w;
  }
  return all_and | (~all_or & g.full_mask());
}

// ---------------------------------------------------- contraction/expansion

inline Word delete_coordinate(Word w, int e) {
  Word low = w & (bit(e) - 1);
  return low | ((w >> (e + 1)) << e);
}

inline Word insert_coordinate(Word w, int e, bool value) {
  Word low = w & (bit(e) - 1);
  return low | (static_cast<Word>(value) << e) | ((w >> e) << (e + 1));
}

inline ToGraph contract(const ToGraph& g, int e) {
  if (e < 0 || e >= g.width()) throw PreconditionError("invalid coordinate");
  std::vector<Word> out;
  out.reserve(g.size());
  for (Word w : g.vertices()) out.push_back(delete_coordinate(w, e));
  return ToGraph(g.width() - 1, std::move(out));
}

// Keeps only the coordinates in `keep`, renumbered in order.
inline ToGraph restrict_to(const ToGraph& g, Word keep) {
  std::vector<Word> out;
  out.reserve(g.size());
  for (Word w : g.vertices()) out.push_back(project(w, keep));
  return ToGraph(popcount(keep & g.full_mask()), std::move(out));
}

inline ToGraph expand_unchecked(const ToGraph& h, const VertexSet& h1,
                                const VertexSet& h2) {
  check_width(h.width() + 1);
  std::vector<Word> out;
  Word top = bit(h.width());
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h1.contains(i)) out.push_back(h.vertex(i) | top);
    if (h2.contains(i)) out.push_back(h.vertex(i));
  }
  return ToGraph(h.width() + 1, std::move(out));
}

// New coordinate is appended as coordinate n+1; h1 gets "+".
inline ToGraph expand(const ToGraph& h, const VertexSet& h1,
                      const VertexSet& h2) {
  if ((h1 | h2) != h.all()) throw PreconditionError("expand: sides do not cover V");
  if (!is_isometric_subset(h, h1) || !is_isometric_subset(h, h2))
    throw PreconditionError("expand: side is not isometric");
  return expand_unchecked(h, h1, h2);
}

// --------------------------------------------------------------- antipodes

inline std::vector<std::optional<std::size_t>> antipode_set(const ToGraph& g) {
  std::vector<std::optional<std::size_t>> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    out[i] = g.index_of(antipode(g.vertex(i), g.width()));
  return out;
}

inline bool is_antipodal(const ToGraph& g) {
  for (Word w : g.vertices())
    if (!g.contains(antipode(w, g.width()))) return false;
  return true;
}

inline ToGraph negate(const ToGraph& g) {
  std::vector<Word> out;
  for (Word w : g.vertices()) out.push_back(antipode(w, g.width()));
  return ToGraph(g.width(), std::move(out));
}

// -------------------------------------------------------------------- rank

inline bool shatters(std::span<const Word> words, Word s) {
  const int k = popcount(s);
  const std::size_t need = std::size_t{1} << k;
  if (need > words.size()) return false;
  std::vector<std::uint64_t> seen((need + 63) / 64, 0);
  std::size_t count = 0;
  for (Word w : words) {
    Word p = project(w, s);
    auto& slot = seen[p >> 6];
    std::uint64_t m = std::uint64_t{1} << (p & 63);
    if (!(slot & m)) {
      slot |= m;
      if (++count == need) return true;
    }
  }
  return false;
}

// VC dimension; a set is tested only when all its maximal subsets passed.
inline int rank(const ToGraph& g) {
  if (g.empty()) return 0;
  std::vector<Word> level{0};
  int r = 0;
  const auto& ws = g.vertices();
  while (!level.empty()) {
    std::unordered_set<Word> prev(level.begin(), level.end());
    std::vector<Word> next;
    for (Word t : level) {
      int top = t ? 32 - std::countl_zero(t) : 0;
      for (int c = top; c < g.width(); ++c) {
        Word s = t | bit(c);
        bool ok = true;
        for (Word m = t; m && ok; m &= m - 1)
          ok = prev.count(s & ~(m & -m)) > 0;
        if (ok && shatters(ws, s)) next.push_back(s);
      }
    }
    if (next.empty()) break;
    ++r;
    level = std::move(next);
  }
  return r;
}

// ------------------------------------------------------------ convexity

inline CoVector agreement(const ToGraph& g, const VertexSet& s) {
  Word all_and = g.full_mask(), all_or = 0;
  s.for_each([&](std::size_t i) {
    all_and &= g.vertex(i);
    all_or |= g.vertex(i);
  });
  return {g.width(), all_and, ~all_or & g.full_mask()};
}

inline VertexSet vertices_matching(const ToGraph& g, const CoVector& x) {
  VertexSet out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    if (x.matches(g.vertex(i))) out.insert(i);
  return out;
}

inline VertexSet convex_hull(const ToGraph& g, const VertexSet& s) {
  if (s.empty()) return VertexSet(g.size());
  return vertices_matching(g, agreement(g, s));
}

// --------------------------------------------------------------- products

inline ToGraph cartesian_product(const ToGraph& a, const ToGraph& b) {
  check_width(a.width() + b.width());
  std::vector<Word> out;
  out.reserve(a.size() * b.size());
  for (Word x : a.vertices())
    for (Word y : b.vertices()) out.push_back(x | (y << a.width()));
  return ToGraph(a.width() + b.width(), std::move(out));
}

// ------------------------------------------------------------ simplicity

inline ToGraph drop_constant_coordinates(const ToGraph& g) {
  Word c = constant_coordinates(g);
  if (!c) return g;
  return restrict_to(g, g.full_mask() & ~c);
}

// Drops constant coordinates and keeps one representative of each group
// of equal or complementary coordinate columns.
inline ToGraph simplify(const ToGraph& g) {
  ToGraph h = drop_constant_coordinates(g);
  const int n = h.width();
  std::vector<std::vector<bool>> cols(static_cast<std::size_t>(n));
  for (int e = 0; e < n; ++e)
    for (Word w : h.vertices()) cols[static_cast<std::size_t>(e)].push_back((w >> e) & 1);
  Word keep = 0;
  std::vector<std::vector<bool>> seen;
  for (int e = 0; e < n; ++e) {
    auto col = cols[static_cast<std::size_t>(e)];
    auto neg = col;
    neg.flip();
    if (std::find(seen.begin(), seen.end(), col) != seen.end() ||
        std::find(seen.begin(), seen.end(), neg) != seen.end())
      continue;
    seen.push_back(col);
    keep |= bit(e);
  }
  return keep == h.full_mask() ? h : restrict_to(h, keep);
}

// ---------------------------------------------------------- constructions

inline ToGraph hypercube(int n) {
  check_width(n);
  if (n > 24) throw CapacityError("hypercube too large");
  std::vector<Word> ws(std::size_t{1} << n);
  for (std::size_t i = 0; i < ws.size(); ++i) ws[i] = static_cast<Word>(i);
  return ToGraph(n, std::move(ws));
}

// Path with k edges inside Q_k: 0, 1, 11, ..., 1^k.
inline ToGraph path_graph(int k) {
  std::vector<Word> ws;
  for (int i = 0; i <= k; ++i) ws.push_back(width_mask(i));
  return ToGraph(k, std::move(ws));
}

// C_{2m} inside Q_m.
inline ToGraph even_cycle(int m) {
  std::vector<Word> ws;
  for (int i = 0; i < m; ++i) {
    ws.push_back(width_mask(i));
    ws.push_back(antipode(width_mask(i), m));
  }
  return ToGraph(m, std::move(ws));
}

// Q_{n+3} with the copy Q_n x {000} replaced by g and the antipodal copy
// Q_n x {111} replaced by -g.
inline ToGraph construct_A_G(const ToGraph& g) {
  const int n = g.width();
  check_width(n + 3);
  std::vector<Word> ws;
  for (std::uint64_t q = 0; q <= width_mask(n); ++q)
    for (Word t = 1; t < 7; ++t) ws.push_back(static_cast<Word>(q) | (t << n));
  for (Word w : g.vertices()) {
    ws.push_back(w);
    ws.push_back(antipode(w, n) | (Word{7} << n));
  }
  return ToGraph(n + 3, std::move(ws));
}

// g x {+} together with (-g) x {-}; the two copies meet across g ∩ -g.
inline ToGraph double_affine(const ToGraph& g) {
  const int n = g.width();
  check_width(n + 1);
  std::vector<Word> ws;
  for (Word w : g.vertices()) {
    ws.push_back(w | bit(n));
    ws.push_back(antipode(w, n));
  }
  return ToGraph(n + 1, std::move(ws));
}

// Q_n minus v = 0, -v and i neighbours of -v; with `doubled` the antipodal
// graph built from two copies.
inline ToGraph construct_Q_minusminus(int n, int i, bool doubled = false) {
  if (n < 4 || i < 1 || i >= n)
    throw PreconditionError("construct_Q_minusminus needs n >= 4, 1 <= i < n");
  std::vector<Word> ws;
  const Word top = width_mask(n);
  for (Word w = 1; w < top; ++w) {
    bool removed = false;
    for (int j = 0; j < i; ++j)
      if (w == (top ^ bit(j))) removed = true;
    if (!removed) ws.push_back(w);
  }
  ToGraph g(n, std::move(ws));
  return doubled ? double_affine(g) : g;
}

// One-point union: v1 of a and v2 of b are identified.
inline ToGraph glue_at_vertex(const ToGraph& a, Word v1, const ToGraph& b,
                              Word v2) {
  check_width(a.width() + b.width());
  a.require_index(v1);
  b.require_index(v2);
  std::vector<Word> ws;
  for (Word w : a.vertices()) ws.push_back(w | (v2 << a.width()));
  for (Word w : b.vertices()) ws.push_back(v1 | (w << a.width()));
  return ToGraph(a.width() + b.width(), std::move(ws));
}

// Amalgam along an edge: the class of (a1,b1) in a is identified with the
// class of (a2,b2) in b, a1 with a2 and b1 with b2.
inline ToGraph glue_along_edge(const ToGraph& a, Word a1, Word b1,
                               const ToGraph& b, Word a2, Word b2) {
  if (hamming(a1, b1) != 1 || hamming(a2, b2) != 1)
    throw PreconditionError("glue_along_edge: not an edge");
  a.require_index(a1), a.require_index(b1);
  b.require_index(a2), b.require_index(b2);
  const int c1 = std::countr_zero(a1 ^ b1);
  const int c2 = std::countr_zero(a2 ^ b2);
  const int n = a.width() + b.width() - 1;
  check_width(n);
  auto tail = [&](Word y) { return delete_coordinate(y, c2) << a.width(); };
  std::vector<Word> ws;
  for (Word x : a.vertices())
    ws.push_back(x | tail(((x ^ a1) & bit(c1)) ? b2 : a2));
  for (Word y : b.vertices())
    ws.push_back((((y ^ a2) & bit(c2)) ? b1 : a1) | tail(y));
  return ToGraph(n, std::move(ws));
}

}  // namespace topecube
