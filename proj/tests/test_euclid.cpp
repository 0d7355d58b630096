#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "topecube/topecube.hpp"

using namespace topecube;

namespace {

ToGraph c6() { return ToGraph::from_strings({"---", "+--", "++-", "+++", "-++", "--+"}); }

// A cocircuit graph with hand-made nodes and edges, for the acyclicity check.
CocircuitGraph bare_graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& es) {
  CocircuitGraph cg;
  cg.nodes.resize(n);
  for (auto [a, b] : es) cg.edges.emplace_back(std::min(a, b), std::max(a, b));
  return cg;
}

}  // namespace

TEST(CocircuitGraph, Examples) {
  auto cg = cocircuit_graph(c6());
  EXPECT_EQ(cg.mode, CocircuitMode::Oriented);
  EXPECT_EQ(cg.node_rank, 1);
  EXPECT_EQ(cg.nodes.size(), 6u);
  EXPECT_EQ(cg.edges.size(), 6u);
  for (const auto& l : cg.lines) {
    EXPECT_TRUE(l.cycle);
    EXPECT_EQ(l.nodes.size(), 6u);
  }
  auto q = cocircuit_graph(hypercube(3));
  EXPECT_EQ(q.nodes.size(), 6u);   // octahedron
  EXPECT_EQ(q.edges.size(), 12u);
  for (const auto& adj : q.adjacency()) EXPECT_EQ(adj.size(), 4u);
  auto sq = cocircuit_graph(hypercube(2), CocircuitMode::Affine);
  EXPECT_EQ(sq.nodes.size(), 1u);  // the square is its own maximal face
  auto p3 = ToGraph::from_strings({"--", "+-", "++"});
  auto pa = cocircuit_graph(p3, CocircuitMode::Affine);
  EXPECT_EQ(pa.nodes.size(), 2u);
  EXPECT_EQ(pa.edges.size(), 1u);
}

TEST(CocircuitGraph, LinesOfOmsAreEvenCycles) {
  for (int n = 3; n <= 5; ++n)
    for (const auto& g : generate_antipodal(n)) {
      if (!is_om(g) || rank(g) < 2) continue;
      auto cg = cocircuit_graph(g);
      for (const auto& l : cg.lines) {
        ASSERT_TRUE(l.cycle) << topes_string(g);
        const std::size_t k = l.nodes.size();
        EXPECT_EQ(k % 2, 0u);
        // opposite nodes along the cycle are antipodal cocircuits
        for (std::size_t i = 0; i < k / 2; ++i)
          EXPECT_EQ(cg.node(l.nodes[i]).covector, -cg.node(l.nodes[i + k / 2]).covector);
      }
    }
}

TEST(Orientation, Examples) {
  auto cg = cocircuit_graph(hypercube(3));
  auto mo = orient(cg, 0);
  // edges of the equator through the two nodes crossed by e stay undirected
  // only where both ends are equally far
  std::size_t directed = 0;
  for (auto s : mo.state) directed += s != 0;
  EXPECT_EQ(directed, 8u);
  EXPECT_TRUE(is_strictly_acyclic(cg, mo));
  EXPECT_THROW(orient(cg, 3), PreconditionError);
}

TEST(Acyclicity, DirectedTriangle) {
  auto cg = bare_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  MixedOrientation mo;
  mo.state = {1, 1, -1};  // 0->1->2->0
  auto r = is_strictly_acyclic(cg, mo);
  EXPECT_FALSE(r.strict);
  ASSERT_GE(r.witness.size(), 3u);
  EXPECT_EQ(r.witness.front(), r.witness.back());
  EXPECT_EQ(r.witness.size(), 4u);
  mo.state = {1, 1, 1};
  EXPECT_TRUE(is_strictly_acyclic(cg, mo));
  mo.state = {1, 0, 0};  // undirected edges close a cycle through a directed one
  EXPECT_FALSE(is_strictly_acyclic(cg, mo));
  mo.state = {0, 0, 0};
  EXPECT_TRUE(is_strictly_acyclic(cg, mo));
}

TEST(Acyclicity, AgreesWithCycleSearch) {
  std::mt19937 rng(0);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 3 + rng() % 10;
    std::vector<std::pair<std::size_t, std::size_t>> es;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (rng() % 4 == 0) es.emplace_back(a, b);
    auto cg = bare_graph(n, es);
    MixedOrientation mo;
    for (std::size_t i = 0; i < es.size(); ++i) mo.state.push_back(static_cast<std::int8_t>(static_cast<int>(rng() % 3) - 1));
    auto r = is_strictly_acyclic(cg, mo);
    EXPECT_EQ(r.strict, !oracle::has_directed_cycle(n, es, mo.state)) << trial;
    if (!r.strict) {
      // the witness is a closed walk along usable edges
      ASSERT_GE(r.witness.size(), 3u);
      EXPECT_EQ(r.witness.front(), r.witness.back());
      for (std::size_t k = 0; k + 1 < r.witness.size(); ++k) {
        std::size_t a = r.witness[k], b = r.witness[k + 1];
        bool usable = false;
        for (std::size_t i = 0; i < es.size(); ++i) {
          if (es[i] == std::pair{a, b} && mo.state[i] >= 0) usable = true;
          if (es[i] == std::pair{b, a} && mo.state[i] <= 0) usable = true;
        }
        EXPECT_TRUE(usable);
      }
    }
  }
}

TEST(Euclidean, Examples) {
  for (int n = 1; n <= 4; ++n) EXPECT_TRUE(is_euclidean_om(hypercube(n)));
  EXPECT_TRUE(is_euclidean_om(c6()));
  EXPECT_THROW(is_euclidean_om(ToGraph::from_strings({"--", "+-", "++"})), PreconditionError);
  for (const auto& g : generate_antipodal(5))
    if (is_om(g) && rank(g) <= 3) EXPECT_TRUE(is_euclidean_om(g));
  auto h = halfspace_graph(hypercube(3), 0, true);
  EXPECT_EQ(h, hypercube(2));
  EXPECT_TRUE(is_euclidean_aom(h));
}

TEST(GPExtensions, Counts) {
  // each of the 6 sign maps and its negative; sigma and -sigma give the same cover swapped
  auto c = general_position_extensions(c6());
  EXPECT_FALSE(c.incomplete);
  EXPECT_EQ(c.list.size(), 6u);
  auto q = general_position_extensions(hypercube(3));
  EXPECT_EQ(q.list.size(), 8u);
  for (const auto& x : q.list) {
    auto y = expand_unchecked(hypercube(3), x.h1, x.h2);
    EXPECT_TRUE(is_uom(y));
    EXPECT_EQ(rank(y), 3);
    EXPECT_EQ(y.size(), 14u);
  }
  EXPECT_EQ(general_position_extensions(hypercube(3), 3).list.size(), 3u);
  EXPECT_THROW(general_position_extensions(ToGraph::from_strings({"--", "+-", "++"})), PreconditionError);
}

TEST(GPExtensions, CoversAreValid) {
  for (const auto& g : generate_antipodal(5)) {
    if (!is_om(g)) continue;
    auto gp = general_position_extensions(g);
    EXPECT_FALSE(gp.list.empty());
    for (const auto& x : gp.list) {
      EXPECT_EQ(x.h1 | x.h2, g.all());
      EXPECT_TRUE(is_isometric_subset(g, x.h1));
      auto y = expand_unchecked(g, x.h1, x.h2);
      EXPECT_TRUE(is_om(y));
      EXPECT_EQ(rank(y), rank(g));
    }
  }
}

TEST(Mandel, Examples) {
  EXPECT_EQ(is_mandel(c6()), MandelResult::True);
  EXPECT_EQ(is_mandel(hypercube(3)), MandelResult::True);
  for (const auto& g : generate_antipodal(5))
    if (is_om(g) && rank(g) <= 3) EXPECT_EQ(is_mandel(g), MandelResult::True);
  EXPECT_STREQ(to_string(MandelResult::FalseAtLimit), "false-at-limit");
}
