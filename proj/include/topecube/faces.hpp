#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "topecube/tope_graph.hpp"

namespace topecube {

// An antipodal subgraph, named by its covector.
struct Face {
  ToGraph host;
  CoVector covector;
  VertexSet topes;
  int rank = 0;

  Word zero() const { return covector.zero(); }
  std::size_t size() const { return topes.count(); }
  bool is_cube() const { return size() == (std::size_t{1} << popcount(zero())); }
};

inline std::uint64_t covector_key(const CoVector& x) {
  return (std::uint64_t{x.plus} << 32) | x.minus;
}

inline ToGraph face_graph(const ToGraph& g, const VertexSet& topes, Word zero);

inline int face_rank(const ToGraph& g, const VertexSet& topes, Word zero) {
  return rank(face_graph(g, topes, zero));
}

// All antipodal subgraphs of a partial cube: for each zero set Z the
// vertices are grouped by their values off Z, and a group is a face when
// it is closed under flipping Z. Ordered by |Z| then covector.
inline std::vector<Face> enumerate_faces(const ToGraph& g) {
  std::vector<Face> out;
  const int n = g.width();
  if (n > 20) throw CapacityError("enumerate_faces: width above 20");
  const std::size_t nv = g.size();
  std::vector<std::pair<Word, std::uint32_t>> keyed(nv);
  std::vector<Word> zero_sets;
  for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z)
    zero_sets.push_back(static_cast<Word>(z));
  std::stable_sort(zero_sets.begin(), zero_sets.end(),
                   [](Word a, Word b) { return popcount(a) < popcount(b); });
  for (Word z : zero_sets) {
    for (std::size_t i = 0; i < nv; ++i)
      keyed[i] = {g.vertex(i) & ~z, static_cast<std::uint32_t>(i)};
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t a = 0; a < nv;) {
      std::size_t b = a;
      bool closed = true;
      while (b < nv && keyed[b].first == keyed[a].first) {
        if (closed && !g.contains(g.vertex(keyed[b].second) ^ z)) closed = false;
        ++b;
      }
      if (closed) {
        Face f;
        f.host = g;
        f.covector = CoVector::with_zero(keyed[a].first, z, n);
        f.topes = VertexSet(nv);
        for (std::size_t k = a; k < b; ++k) f.topes.insert(keyed[k].second);
        f.rank = face_rank(g, f.topes, z);
        out.push_back(std::move(f));
      }
      a = b;
    }
  }
  return out;
}

// The face as a partial cube of its own, over its crossing classes.
inline ToGraph face_graph(const ToGraph& g, const VertexSet& topes, Word zero) {
  std::vector<Word> ws;
  topes.for_each([&](std::size_t i) { ws.push_back(project(g.vertex(i), zero)); });
  return ToGraph(popcount(zero), std::move(ws));
}
inline ToGraph face_graph(const ToGraph& g, const Face& f) {
  return face_graph(g, f.topes, f.zero());
}

class FaceSet {
 public:
  FaceSet() = default;
  explicit FaceSet(const ToGraph& g) : host_(g), faces_(enumerate_faces(g)) {
    for (std::size_t i = 0; i < faces_.size(); ++i)
      index_[covector_key(faces_[i].covector)] = i;
  }

  const ToGraph& host() const { return host_; }
  const std::vector<Face>& faces() const { return faces_; }
  std::size_t size() const { return faces_.size(); }
  const Face& operator[](std::size_t i) const { return faces_[i]; }

  std::optional<std::size_t> find(const CoVector& x) const {
    auto it = index_.find(covector_key(x));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const CoVector& x) const { return find(x).has_value(); }

  // Faces not properly contained in another face.
  std::vector<std::size_t> maximal() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < faces_.size(); ++i) {
      bool inside = false;
      for (std::size_t j = 0; j < faces_.size() && !inside; ++j)
        inside = j != i && faces_[j].size() > faces_[i].size() &&
                 faces_[i].topes.subset_of(faces_[j].topes);
      if (!inside) out.push_back(i);
    }
    return out;
  }

  std::vector<std::size_t> containing(const VertexSet& s) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < faces_.size(); ++i)
      if (s.subset_of(faces_[i].topes)) out.push_back(i);
    return out;
  }

  std::vector<std::size_t> of_rank(int r) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < faces_.size(); ++i)
      if (faces_[i].rank == r) out.push_back(i);
    return out;
  }

 private:
  ToGraph host_;
  std::vector<Face> faces_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

// Face whose topes are exactly s, if s is a face.
inline std::optional<std::size_t> face_of_set(const FaceSet& fs,
                                              const VertexSet& s) {
  if (s.empty()) return std::nullopt;
  auto x = agreement(fs.host(), s);
  auto i = fs.find(x);
  if (i && fs[*i].topes == s) return i;
  return std::nullopt;
}

// --------------------------------------------------------------- gates

struct GateResult {
  bool gated = false;
  std::vector<std::size_t> gate;  // per host vertex, valid when gated
  std::optional<Word> failing;    // a vertex without gate
};

inline GateResult is_gated(const ToGraph& g, const Face& f) {
  GateResult r;
  r.gate.resize(g.size());
  const CoVector& x = f.covector;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Word w = x.plus | (g.vertex(i) & x.zero());
    auto j = g.index_of(w);
    if (!j) {
      r.failing = g.vertex(i);
      r.gate.clear();
      return r;
    }
    r.gate[i] = *j;
  }
  r.gated = true;
  return r;
}

// ----------------------------------------------------------- classify

enum class Label : unsigned {
  NotPartialCube = 1u << 0,
  PartialCube = 1u << 1,
  COM = 1u << 2,
  OM = 1u << 3,
  AOM = 1u << 4,
  LOP = 1u << 5,
  UOM = 1u << 6,
  Affine = 1u << 7,
};

inline const char* to_string(Label l) {
  switch (l) {
    case Label::NotPartialCube: return "not-partial-cube";
    case Label::PartialCube: return "partial-cube";
    case Label::COM: return "COM";
    case Label::OM: return "OM";
    case Label::AOM: return "AOM";
    case Label::LOP: return "LOP";
    case Label::UOM: return "UOM";
    case Label::Affine: return "affine";
  }
  return "?";
}

struct Labels {
  unsigned bits = 0;
  bool has(Label l) const { return bits & static_cast<unsigned>(l); }
  void add(Label l) { bits |= static_cast<unsigned>(l); }
  bool operator==(const Labels&) const = default;

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (unsigned b = 1; b <= static_cast<unsigned>(Label::Affine); b <<= 1)
      if (bits & b) out.emplace_back(to_string(static_cast<Label>(b)));
    return out;
  }
};

inline bool all_faces_gated(const ToGraph& g, const FaceSet& fs) {
  for (const auto& f : fs.faces())
    if (!is_gated(g, f).gated) return false;
  return true;
}

inline bool is_affine(const ToGraph& g) {
  return is_partial_cube(double_affine(drop_constant_coordinates(g)));
}

namespace detail {

inline void classify_partial_cube(const ToGraph& h, Labels& out,
                                  bool with_affine) {
  FaceSet fs(h);
  const bool com = all_faces_gated(h, fs);
  const bool antipodal = is_antipodal(h);
  bool lop = true, proper_cubes = true;
  for (const auto& f : fs.faces()) {
    if (f.is_cube()) continue;
    lop = false;
    if (f.zero() != h.full_mask()) proper_cubes = false;
  }
  out.add(Label::PartialCube);
  if (com) out.add(Label::COM);
  if (com && antipodal) out.add(Label::OM);
  if (lop) out.add(Label::LOP);
  if (antipodal && proper_cubes) out.add(Label::UOM);
  if (!with_affine) return;
  ToGraph d = double_affine(h);
  if (is_partial_cube(d)) {
    out.add(Label::Affine);
    Labels dl;
    classify_partial_cube(d, dl, false);
    if (dl.has(Label::OM)) out.add(Label::AOM);
  }
}

}  // namespace detail

// Multi-label classification; constant coordinates are dropped first.
inline Labels classify(const ToGraph& g) {
  Labels out;
  if (!is_partial_cube(g)) {
    out.add(Label::NotPartialCube);
    return out;
  }
  detail::classify_partial_cube(drop_constant_coordinates(g), out, true);
  return out;
}

inline bool is_com(const ToGraph& g) { return classify(g).has(Label::COM); }
inline bool is_om(const ToGraph& g) {
  if (!is_partial_cube(g)) return false;
  ToGraph h = drop_constant_coordinates(g);
  return is_antipodal(h) && all_faces_gated(h, FaceSet(h));
}
inline bool is_uom(const ToGraph& g) {
  if (!is_partial_cube(g)) return false;
  ToGraph h = drop_constant_coordinates(g);
  if (!is_antipodal(h)) return false;
  for (const auto& f : enumerate_faces(h))
    if (!f.is_cube() && f.zero() != h.full_mask()) return false;
  return true;
}

inline VertexSet antipodes_of_affine(const ToGraph& g) {
  VertexSet out(g.size());
  const VertexSet all = g.all();
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto j = g.index_of(antipode(g.vertex(i), g.width()));
    if (!j) continue;
    VertexSet pair(g.size());
    pair.insert(i);
    pair.insert(*j);
    if (convex_hull(g, pair) == all) out.insert(i);
  }
  return out;
}

// ------------------------------------------------------------- axioms

inline std::optional<std::size_t> check_SE(const FaceSet& fs, const Face& x,
                                           const Face& y, int e) {
  const CoVector& X = x.covector;
  const CoVector& Y = y.covector;
  if (!(separator(X, Y) & bit(e)))
    throw PreconditionError("check_SE: e is not in S(X,Y)");
  const CoVector xy = compose(X, Y);
  const Word fixed = ~separator(X, Y) & width_mask(X.width);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const CoVector& Z = fs[i].covector;
    if (Z.sign(e) != 0) continue;
    if ((Z.plus & fixed) == (xy.plus & fixed) &&
        (Z.minus & fixed) == (xy.minus & fixed))
      return i;
  }
  return std::nullopt;
}

struct AxiomFailure {
  std::size_t x = 0, y = 0;
  int e = -1;
};

// Exhaustive (SE) audit over all face pairs.
inline std::optional<AxiomFailure> audit_SE(const FaceSet& fs) {
  for (std::size_t a = 0; a < fs.size(); ++a)
    for (std::size_t b = 0; b < fs.size(); ++b) {
      Word s = separator(fs[a].covector, fs[b].covector);
      for (; s; s &= s - 1) {
        int e = std::countr_zero(s);
        if (!check_SE(fs, fs[a], fs[b], e)) return AxiomFailure{a, b, e};
      }
    }
  return std::nullopt;
}

// (FS): X o -Y names a face for all faces X, Y.
inline std::optional<AxiomFailure> audit_FS(const FaceSet& fs) {
  for (std::size_t a = 0; a < fs.size(); ++a)
    for (std::size_t b = 0; b < fs.size(); ++b)
      if (!fs.contains(compose(fs[a].covector, -fs[b].covector)))
        return AxiomFailure{a, b, -1};
  return std::nullopt;
}

// ---------------------------------------------------------- zone graphs

struct ZoneGraph {
  std::vector<std::size_t> vertices;  // indices into the host FaceSet
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  Word common_zero = 0;               // zero set shared by all vertices
  ToGraph embedding;                  // sign words over kept classes
  std::vector<int> coordinate;        // embedding coordinate -> host class
  std::vector<std::size_t> embedded;  // zone vertex -> embedding index
};

inline ZoneGraph zone_graph(const FaceSet& fs, Word F) {
  const ToGraph& g = fs.host();
  ZoneGraph z;
  std::vector<std::size_t> cand;
  for (std::size_t i = 0; i < fs.size(); ++i)
    if ((fs[i].zero() & F) == F) cand.push_back(i);
  if (cand.empty())
    throw PreconditionError("zone_graph: no face is crossed by all of F");
  for (std::size_t i : cand) {
    bool minimal = true;
    for (std::size_t j : cand)
      if (j != i && fs[j].size() < fs[i].size() &&
          fs[j].topes.subset_of(fs[i].topes)) {
        minimal = false;
        break;
      }
    if (minimal) z.vertices.push_back(i);
  }
  const int r = fs[z.vertices.front()].rank;
  z.common_zero = fs[z.vertices.front()].zero();
  for (std::size_t i : z.vertices)
    if (fs[i].zero() != z.common_zero || fs[i].rank != r)
      throw Error("zone_graph: minimal faces differ in zero set");
  std::vector<std::size_t> upper = fs.of_rank(r + 1);
  for (std::size_t a = 0; a < z.vertices.size(); ++a)
    for (std::size_t b = a + 1; b < z.vertices.size(); ++b) {
      VertexSet u = fs[z.vertices[a]].topes | fs[z.vertices[b]].topes;
      for (std::size_t w : upper)
        if (u.subset_of(fs[w].topes)) {
          z.edges.emplace_back(a, b);
          break;
        }
    }
  // Embedding: drop the common zero set, then merge parallel classes.
  const Word keep = g.full_mask() & ~z.common_zero;
  // Columns can be long, so compare them as vectors.
  std::vector<std::vector<bool>> seen;
  for (int e = 0; e < g.width(); ++e) {
    if (!(keep & bit(e))) continue;
    std::vector<bool> col;
    for (std::size_t k : z.vertices) col.push_back(fs[k].covector.plus & bit(e));
    auto neg = col;
    neg.flip();
    bool constant = std::all_of(col.begin(), col.end(), [&](bool b) { return b == col[0]; });
    if (constant && col.size() > 1) continue;
    if (std::find(seen.begin(), seen.end(), col) != seen.end() ||
        std::find(seen.begin(), seen.end(), neg) != seen.end())
      continue;
    seen.push_back(col);
    z.coordinate.push_back(e);
  }
  std::vector<Word> words;
  for (std::size_t k : z.vertices) {
    Word w = 0;
    for (std::size_t j = 0; j < z.coordinate.size(); ++j)
      if (fs[k].covector.plus & bit(z.coordinate[j])) w |= bit(static_cast<int>(j));
    words.push_back(w);
  }
  if (z.vertices.size() == 1) z.coordinate.clear(), words = {0};
  z.embedding = ToGraph(static_cast<int>(z.coordinate.size()), words);
  for (Word w : words) z.embedded.push_back(*z.embedding.index_of(w));
  return z;
}

inline ZoneGraph zone_graph(const ToGraph& g, Word F) {
  return zone_graph(FaceSet(g), F);
}

// Reverse-inclusion order: f1 <= f2 iff topes(f2) is inside topes(f1).
inline bool face_poset_leq(const Face& f1, const Face& f2) {
  if (!(f1.host.same_storage(f2.host) || f1.host == f2.host))
    throw PreconditionError("face_poset_leq: faces of different graphs");
  return f2.topes.subset_of(f1.topes);
}

inline std::vector<std::string> face_strings(const FaceSet& fs) {
  std::vector<std::string> out;
  for (const auto& f : fs.faces()) out.push_back(to_string(f.covector));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace topecube
