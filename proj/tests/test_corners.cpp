#include <gtest/gtest.h>

#include "oracles.hpp"
#include "topecube/topecube.hpp"

using namespace topecube;

namespace {

ToGraph c6() { return ToGraph::from_strings({"---", "+--", "++-", "+++", "-++", "--+"}); }
ToGraph p3() { return ToGraph::from_strings({"--", "+-", "++"}); }
Word w(const char* s) { return word_from_string(s); }

// Every nonempty subset of every maximal face, checked with verify_corner.
std::set<std::vector<Word>> corners_by_subsets(const ToGraph& g) {
  FaceSet fs(g);
  std::set<std::vector<Word>> out;
  for (auto m : fs.maximal()) {
    auto ws = g.words_of(fs[m].topes);
    if (ws.size() > 16) continue;
    for (std::uint32_t s = 1; s < (1u << ws.size()); ++s) {
      std::vector<Word> c;
      for (std::size_t k = 0; k < ws.size(); ++k)
        if (s >> k & 1) c.push_back(ws[k]);
      if (verify_corner(g, fs, g.set_of(c))) out.insert(c);
    }
  }
  return out;
}

std::set<std::vector<Word>> as_set(const CornerList& cl) {
  std::set<std::vector<Word>> out;
  for (const auto& c : cl.corners) out.insert(c.vertices);
  return out;
}

}  // namespace

TEST(Simplicial, Examples) {
  EXPECT_EQ(simplicial_vertices(p3()), (std::vector<Word>{w("--"), w("++")}));
  EXPECT_EQ(simplicial_vertices(hypercube(3)).size(), 8u);
  EXPECT_EQ(simplicial_vertices(c6()).size(), 6u);
  EXPECT_EQ(simplicial_vertices(cartesian_product(c6(), hypercube(1))).size(), 12u);
  // P3 glued to a square: the shared vertex lies in two maximal faces
  auto g = glue_at_vertex(p3(), w("++"), hypercube(2), w("--"));
  EXPECT_EQ(simplicial_vertices(g).size(), 4u);
}

TEST(Simplicial, LasVergnas) {
  for (int n = 2; n <= 5; ++n)
    for (const auto& g : generate_antipodal(n))
      if (is_om(g)) EXPECT_TRUE(theta_las_vergnas(g).holds) << topes_string(g);
  EXPECT_TRUE(theta_las_vergnas(cartesian_product(c6(), hypercube(1))).holds);
}

TEST(VerifyCorner, Examples) {
  auto g = c6();
  // a single vertex leaves a path that is not isometric
  auto one = verify_corner(g, std::vector<Word>{w("---")});
  EXPECT_FALSE(one);
  EXPECT_EQ(one.reason, "host face minus C is not isometric");
  EXPECT_TRUE(verify_corner(g, std::vector<Word>{w("---"), w("+--")}));
  EXPECT_FALSE(verify_corner(g, std::vector<Word>{w("---"), w("+++")}));
  EXPECT_FALSE(verify_corner(g, std::vector<Word>{w("+-+")}));
  auto q = hypercube(3);
  EXPECT_TRUE(verify_corner(q, std::vector<Word>{w("+++")}));
  EXPECT_FALSE(verify_corner(q, std::vector<Word>{w("+++"), w("++-")}));
  auto p = p3();
  EXPECT_TRUE(verify_corner(p, std::vector<Word>{w("--")}));
  EXPECT_FALSE(verify_corner(p, std::vector<Word>{w("+-")}));
}

TEST(VerifyCorner, SharedVertexIsNotACorner) {
  // two hexagons sharing the edge {---, +--}
  auto g = glue_along_edge(c6(), w("---"), w("+--"), c6(), w("---"), w("+--"));
  FaceSet fs(g);
  std::size_t shared = 0;
  for (auto m : fs.maximal()) shared += fs[m].topes.contains(g.require_index(w("---")));
  ASSERT_EQ(shared, 2u);
  std::size_t hits = 0;
  for (const auto& c : find_corners(g, CornerSearch{16, 0}).corners) {
    for (Word v : c.vertices) EXPECT_NE(v, w("---"));
    ++hits;
  }
  EXPECT_GT(hits, 0u);
}

TEST(FindCorners, CycleHasSixCorners) {
  auto cl = find_corners(c6());
  EXPECT_FALSE(cl.incomplete);
  EXPECT_EQ(cl.corners.size(), 6u);
  EXPECT_EQ(as_set(cl), corners_by_subsets(c6()));
  for (const auto& c : cl.corners) EXPECT_EQ(c.vertices.size(), 2u);
  for (int m = 2; m <= 6; ++m) EXPECT_EQ(find_corners(even_cycle(m)).corners.size(), static_cast<std::size_t>(2 * m));
}

TEST(FindCorners, AgreesWithSubsetScan) {
  for (int n = 2; n <= 4; ++n)
    for (const auto& g : generate_partial_cubes(n)) {
      if (!is_com(g)) continue;
      auto cl = find_corners(g, CornerSearch{16, 0});
      ASSERT_FALSE(cl.incomplete);
      EXPECT_EQ(as_set(cl), corners_by_subsets(g)) << topes_string(g);
    }
  // the subset scan covers OMs with at most 16 topes
  for (const auto& g : generate_antipodal(5))
    if (is_om(g) && g.size() <= 16) EXPECT_EQ(as_set(find_corners(g, CornerSearch{16, 0})), corners_by_subsets(g));
}

TEST(FindCorners, LopCornersAreSingleVertices) {
  for (int n = 2; n <= 4; ++n)
    for (const auto& g : generate_partial_cubes(n)) {
      if (!classify(g).has(Label::LOP)) continue;
      auto brute = corners_by_subsets(g);
      bool single = false;
      for (const auto& c : brute) single = single || c.size() == 1;
      EXPECT_TRUE(single) << topes_string(g);
      EXPECT_TRUE(corner_peeling(g, PeelStrategy::Lop).complete);
    }
}

TEST(FindCorners, Prism) {
  auto prism = cartesian_product(c6(), hypercube(1));
  auto cl = find_corners(prism);
  ASSERT_FALSE(cl.corners.empty());
  EXPECT_EQ(as_set(cl), corners_by_subsets(prism));
  for (const auto& c : cl.corners) {
    // an edge of the hexagon times one end of K2
    EXPECT_EQ(c.vertices.size(), 2u);
    EXPECT_EQ((c.vertices[0] ^ c.vertices[1]) & bit(3), 0u);
  }
}

TEST(FindCorners, RemovalLeavesIsometricCom) {
  std::vector<ToGraph> gs = {c6(), hypercube(3), cartesian_product(c6(), hypercube(1))};
  for (const auto& g : generate_antipodal(5))
    if (is_om(g)) gs.push_back(g);
  for (int n = 2; n <= 4; ++n)
    for (const auto& g : generate_partial_cubes(n))
      if (!is_antipodal(g) && is_com(g)) gs.push_back(g);
  for (const auto& g : gs)
    for (const auto& c : find_corners(g).corners) {
      auto r = remove_words(g, c.vertices);
      VertexSet keep = g.all() - g.set_of(c.vertices);
      EXPECT_TRUE(is_isometric_subset(g, keep));
      EXPECT_TRUE(is_com(r)) << topes_string(g);
    }
}

TEST(Peeling, CubesAndCycles) {
  for (int n = 1; n <= 5; ++n) {
    auto p = corner_peeling(hypercube(n), PeelStrategy::Lop);
    ASSERT_TRUE(p.complete);
    EXPECT_EQ(p.steps.size(), std::size_t{1} << n);
    EXPECT_TRUE(verify_peeling(hypercube(n), p.steps));
  }
  for (int m = 2; m <= 6; ++m) {
    auto g = even_cycle(m);
    auto p = corner_peeling(g, PeelStrategy::Rank2);
    ASSERT_TRUE(p.complete) << p.failure;
    std::string why;
    EXPECT_TRUE(verify_peeling(g, p.steps, &why)) << why;
  }
  EXPECT_FALSE(verify_peeling(c6(), {}));
}

TEST(Peeling, Hypercellular) {
  auto prism = cartesian_product(c6(), hypercube(1));
  EXPECT_TRUE(is_hypercellular(prism));
  EXPECT_TRUE(is_hypercellular(c6()));
  EXPECT_TRUE(is_hypercellular(glue_along_edge(c6(), w("---"), w("+--"), c6(), w("---"), w("+--"))));
  EXPECT_FALSE(is_hypercellular(generate_uoms(4, 3).front()));
  for (const auto& g : {prism, c6(), hypercube(3)}) {
    auto p = corner_peeling(g, PeelStrategy::Hypercellular);
    ASSERT_TRUE(p.complete) << p.failure;
    EXPECT_TRUE(verify_peeling(g, p.steps));
  }
}

TEST(Peeling, GenericOnSmallOms) {
  for (int n = 2; n <= 5; ++n)
    for (const auto& g : generate_antipodal(n)) {
      if (!is_om(g)) continue;
      auto p = corner_peeling(g, PeelStrategy::Generic);
      ASSERT_TRUE(p.complete) << topes_string(g) << p.failure;
      std::string why;
      EXPECT_TRUE(verify_peeling(g, p.steps, &why)) << why;
    }
}

TEST(MinDegree, AtMostRankForOms) {
  for (int n = 2; n <= 5; ++n)
    for (const auto& g : generate_antipodal(n)) {
      if (!is_om(g)) continue;
      auto [deg, r] = min_degree_vs_rank(g);
      EXPECT_LE(deg, r);
    }
  auto [deg, r] = min_degree_vs_rank(construct_A_G(path_graph(2)));
  EXPECT_EQ(deg, 4);
  EXPECT_EQ(r, 4);
}
