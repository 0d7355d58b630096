#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "topecube/tope_graph.hpp"

namespace topecube {

// Enumerates the isometric expansions of a partial cube g: pairs (h1, h2)
// of isometric subgraphs with h1 ∪ h2 = V, h1 ∩ h2 nonempty and no edge
// between h1\h2 and h2\h1. Mirror images (h2, h1) are skipped. Vertices are
// labelled in BFS order with {both, h1 only, h2 only}; partial labellings
// are cut as soon as some pair of decided vertices can no longer be joined
// by a geodesic inside its side.
class IsometricCovers {
 public:
  explicit IsometricCovers(const ToGraph& g) : g_(g) {
    nv_ = g.size();
    if (nv_ > 64) throw CapacityError("isometric cover search needs <= 64 vertices");
    order_.reserve(nv_);
    std::vector<bool> seen(nv_, false);
    if (nv_) {
      order_.push_back(0);
      seen[0] = true;
    }
    for (std::size_t h = 0; h < order_.size(); ++h)
      for (auto v : g.neighbors(order_[h]))
        if (!seen[v]) {
          seen[v] = true;
          order_.push_back(v);
        }
    if (order_.size() != nv_) throw PreconditionError("graph is disconnected");
    nbr_.assign(nv_, 0);
    closer_.assign(nv_ * nv_, 0);
    for (std::size_t u = 0; u < nv_; ++u) {
      for (auto w : g.neighbors(u)) nbr_[u] |= std::uint64_t{1} << w;
      for (std::size_t v = 0; v < nv_; ++v) {
        int d = hamming(g.vertex(u), g.vertex(v));
        std::uint64_t m = 0;
        for (auto w : g.neighbors(u))
          if (hamming(g.vertex(w), g.vertex(v)) == d - 1) m |= std::uint64_t{1} << w;
        closer_[u * nv_ + v] = m;
      }
    }
  }

  template <class F>
  void for_each(F&& fn) {
    in1_ = in2_ = out1_ = out2_ = 0;
    undecided_ = nv_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << nv_) - 1;
    recurse(0, fn);
  }

 private:
  template <class F>
  void recurse(std::size_t t, F& fn) {
    if (t == nv_) {
      if (!(in1_ & in2_)) return;
      VertexSet h1(nv_), h2(nv_);
      for (std::size_t i = 0; i < nv_; ++i) {
        if (in1_ >> i & 1) h1.insert(i);
        if (in2_ >> i & 1) h2.insert(i);
      }
      fn(h1, h2);
      return;
    }
    const std::size_t x = order_[t];
    const std::uint64_t xm = std::uint64_t{1} << x;
    undecided_ &= ~xm;
    // 0: both sides, 1: h1 only, 2: h2 only
    for (int label = 0; label < 3; ++label) {
      if (t == 0 && label == 2) continue;
      const bool a = label != 2, b = label != 1;
      (a ? in1_ : out1_) |= xm;
      (b ? in2_ : out2_) |= xm;
      if (consistent(x, a, b)) recurse(t + 1, fn);
      (a ? in1_ : out1_) &= ~xm;
      (b ? in2_ : out2_) &= ~xm;
    }
    undecided_ |= xm;
  }

  bool consistent(std::size_t x, bool a, bool b) const {
    const std::uint64_t only1 = in1_ & out2_, only2 = in2_ & out1_;
    if (a && !b && (nbr_[x] & only2)) return false;
    if (b && !a && (nbr_[x] & only1)) return false;
    return side_ok(x, a, in1_) && side_ok(x, b, in2_);
  }

  bool side_ok(std::size_t x, bool inside, std::uint64_t in) const {
    const std::uint64_t avail = in | undecided_;
    if (inside) {
      for (std::uint64_t m = in & ~(std::uint64_t{1} << x); m; m &= m - 1) {
        std::size_t v = static_cast<std::size_t>(std::countr_zero(m));
        if (!(closer_[x * nv_ + v] & avail) || !(closer_[v * nv_ + x] & avail))
          return false;
      }
      return true;
    }
    for (std::uint64_t m = in; m; m &= m - 1) {
      std::size_t u = static_cast<std::size_t>(std::countr_zero(m));
      for (std::uint64_t k = in & (m - 1); k; k &= k - 1) {
        std::size_t v = static_cast<std::size_t>(std::countr_zero(k));
        if (!(closer_[u * nv_ + v] & avail) || !(closer_[v * nv_ + u] & avail))
          return false;
      }
    }
    return true;
  }

  const ToGraph& g_;
  std::size_t nv_ = 0;
  std::vector<std::size_t> order_;
  std::vector<std::uint64_t> nbr_, closer_;
  std::uint64_t in1_ = 0, in2_ = 0, out1_ = 0, out2_ = 0, undecided_ = 0;
};

template <class F>
void for_each_isometric_cover(const ToGraph& g, F&& fn) {
  IsometricCovers(g).for_each(fn);
}

}  // namespace topecube
