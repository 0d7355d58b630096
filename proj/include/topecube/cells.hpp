#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "topecube/faces.hpp"

namespace topecube {

// One factor of a cell: a single class (an edge) or the classes of an
// even cycle C_2k, k >= 3.
struct CellFactor {
  Word classes = 0;
  bool cycle() const { return popcount(classes) > 1; }
};

// Factorization of an antipodal partial cube h (all coordinates crossed)
// into edges and even cycles, if h is such a product. Classes meeting in
// a rank-2 face longer than a square belong to the same cycle factor.
inline std::optional<std::vector<CellFactor>> cell_factors(const ToGraph& h) {
  const int n = h.width();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x)
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const auto& f : enumerate_faces(h)) {
    if (f.rank != 2 || popcount(f.zero()) < 3) continue;
    int first = std::countr_zero(f.zero());
    for (Word z = f.zero(); z; z &= z - 1)
      parent[static_cast<std::size_t>(find(std::countr_zero(z)))] = find(first);
  }
  std::vector<CellFactor> out;
  for (int e = 0; e < n; ++e) {
    if (find(e) != e) continue;
    Word s = 0;
    for (int c = 0; c < n; ++c)
      if (find(c) == e) s |= bit(c);
    out.push_back({s});
  }
  std::size_t product = 1;
  for (const auto& f : out) {
    std::vector<Word> pats;
    for (Word w : h.vertices()) pats.push_back(project(w, f.classes));
    ToGraph p(popcount(f.classes), pats);
    const std::size_t k = static_cast<std::size_t>(popcount(f.classes));
    if (k == 1) {
      if (p.size() != 2) return std::nullopt;
    } else {
      if (k == 2 || p.size() != 2 * k || !is_antipodal(p)) return std::nullopt;
      for (std::size_t i = 0; i < p.size(); ++i)
        if (p.degree(i) != 2) return std::nullopt;
      if (!is_partial_cube(p)) return std::nullopt;
    }
    product *= p.size();
  }
  if (product != h.size()) return std::nullopt;
  return out;
}

inline bool is_cell(const ToGraph& h) { return cell_factors(h).has_value(); }

// Every face is a product of edges and even cycles, and three rank-k
// cells meeting pairwise in rank-(k-1) cells and jointly in a rank-(k-2)
// cell lie in a common cell.
inline bool is_hypercellular(const ToGraph& g) {
  if (!is_partial_cube(g)) return false;
  FaceSet fs(g);
  int top = 0;
  for (const auto& f : fs.faces()) {
    if (f.rank >= 2 && !is_cell(face_graph(g, f))) return false;
    top = std::max(top, f.rank);
  }
  auto is_face_of_rank = [&](const VertexSet& s, int r) {
    auto i = face_of_set(fs, s);
    return i && fs[*i].rank == r;
  };
  for (int k = 2; k <= top; ++k) {
    auto rk = fs.of_rank(k);
    for (std::size_t a = 0; a < rk.size(); ++a)
      for (std::size_t b = a + 1; b < rk.size(); ++b) {
        VertexSet ab = fs[rk[a]].topes & fs[rk[b]].topes;
        if (!is_face_of_rank(ab, k - 1)) continue;
        for (std::size_t c = b + 1; c < rk.size(); ++c) {
          const auto& C = fs[rk[c]].topes;
          if (!is_face_of_rank(fs[rk[a]].topes & C, k - 1) ||
              !is_face_of_rank(fs[rk[b]].topes & C, k - 1) ||
              !is_face_of_rank(ab & C, k - 2))
            continue;
          VertexSet u = fs[rk[a]].topes | fs[rk[b]].topes | C;
          bool common = false;
          for (const auto& f : fs.faces())
            if (u.subset_of(f.topes)) {
              common = true;
              break;
            }
          if (!common) return false;
        }
      }
  }
  return true;
}

}  // namespace topecube
