#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "topecube/topecube.hpp"

using namespace topecube;

namespace {

Hyperplane hp(std::vector<long long> normal, Rational offset = 0) {
  Hyperplane h;
  for (auto c : normal) h.normal.emplace_back(c);
  h.offset = offset;
  return h;
}

Inequality above(std::vector<long long> a, Rational b) {
  Inequality q;
  for (auto c : a) q.a.emplace_back(c);
  q.b = b;
  return q;
}

Arrangement central_lines(int m) {
  Arrangement a;
  a.dim = 2;
  for (int k = 0; k < m; ++k) a.hyperplanes.push_back(hp({1, k}));
  return a;
}

long long binom(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool has_parallel(const Arrangement& a) {
  for (std::size_t i = 0; i < a.hyperplanes.size(); ++i)
    for (std::size_t j = i + 1; j < a.hyperplanes.size(); ++j) {
      const auto& h = a.hyperplanes[i].normal;
      const auto& k = a.hyperplanes[j].normal;
      if (h[0] * k[1] == h[1] * k[0]) return true;
    }
  return false;
}

}  // namespace

TEST(Rationals, Parse) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(rational_string(Rational(-3, 9)), "-1/3");
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
  EXPECT_THROW(parse_rational("."), std::invalid_argument);
  EXPECT_EQ(parse_rational("010"), Rational(10));
  EXPECT_EQ(parse_rational("-07/014"), Rational(-1, 2));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1.-5"), std::invalid_argument);
}

TEST(Arrangements, ThreeCentralLinesGiveHexagon) {
  auto g = tope_graph_of(central_lines(3));
  EXPECT_EQ(g.size(), 6u);
  EXPECT_EQ(canonical_key(g, Level::Isomorphism), canonical_key(even_cycle(3), Level::Isomorphism));
  EXPECT_TRUE(is_om(g));
}

TEST(Arrangements, CoordinateHyperplanesGiveCube) {
  for (int d = 1; d <= 4; ++d) {
    Arrangement a;
    a.dim = d;
    for (int k = 0; k < d; ++k) {
      std::vector<long long> e(static_cast<std::size_t>(d), 0);
      e[static_cast<std::size_t>(k)] = 1;
      a.hyperplanes.push_back(hp(e));
    }
    EXPECT_EQ(tope_graph_of(a), hypercube(d));
    auto l = classify_realizable(a);
    EXPECT_TRUE(l.has(Label::LOP));
    EXPECT_TRUE(l.has(Label::OM));
  }
}

TEST(Arrangements, RegionExample) {
  // x > -1, y > -1, x + y < 1 cut by the axes
  Arrangement a;
  a.dim = 2;
  a.hyperplanes = {hp({1, 0}), hp({0, 1})};
  a.region = {above({1, 0}, -1), above({0, 1}, -1), above({-1, -1}, -1)};
  auto g = tope_graph_of(a);
  EXPECT_EQ(g.size(), 4u);
  EXPECT_EQ(g, hypercube(2));
  a.hyperplanes.push_back(hp({1, 1}, Rational(1, 2)));
  auto g3 = tope_graph_of(a);
  EXPECT_EQ(g3.size(), 7u);
  EXPECT_TRUE(is_com(g3));
  EXPECT_FALSE(classify_realizable(a).has(Label::OM));
  a.region.push_back(above({1, 1}, 5));
  EXPECT_THROW(tope_graph_of(a), PreconditionError);
}

TEST(Arrangements, ChamberCountsMatchFormulaAndSampling) {
  std::mt19937 rng(0);
  for (int trial = 0; trial < 20; ++trial) {
    Arrangement a;
    a.dim = 2;
    const int m = 2 + static_cast<int>(rng() % 5);
    while (static_cast<int>(a.hyperplanes.size()) < m) {
      auto h = hp({static_cast<long long>(rng() % 19) - 9, static_cast<long long>(rng() % 19) - 9},
                  Rational(static_cast<long long>(rng() % 21) - 10));
      if (h.normal[0] == 0 && h.normal[1] == 0) continue;
      a.hyperplanes.push_back(h);
      if (has_parallel(a)) a.hyperplanes.pop_back();
    }
    auto g = tope_graph_of(a);
    EXPECT_EQ(std::set<Word>(g.vertices().begin(), g.vertices().end()), oracle::sampled_chambers(a)) << trial;
    if (is_simple(a)) EXPECT_EQ(static_cast<long long>(g.size()), binom(m, 0) + binom(m, 1) + binom(m, 2));
    EXPECT_TRUE(classify(g).has(Label::AOM));
  }
}

TEST(Arrangements, CentralPencilCounts) {
  for (int m = 2; m <= 8; ++m) EXPECT_EQ(tope_graph_of(central_lines(m)).size(), static_cast<std::size_t>(2 * m));
}

TEST(Arrangements, ReorientationInvariance) {
  auto a = central_lines(4);
  auto g = tope_graph_of(a);
  auto b = a;
  for (auto& c : b.hyperplanes[1].normal) c = -c;
  auto h = tope_graph_of(b);
  EXPECT_EQ(transform(g, {0, 1, 2, 3}, bit(1)), h);
  EXPECT_EQ(canonical_key(g, Level::Reorientation), canonical_key(h, Level::Reorientation));
}

TEST(Arrangements, JsonRoundTrip) {
  Arrangement a;
  a.dim = 2;
  a.hyperplanes = {hp({1, 0}, Rational(1, 3)), hp({2, -1})};
  a.region = {above({0, 1}, -4)};
  auto j = arrangement_to_json(a);
  auto b = arrangement_from_json(j);
  EXPECT_EQ(tope_graph_of(a), tope_graph_of(b));
  EXPECT_EQ(arrangement_to_json(b), j);
  auto flipped = arrangement_from_json(nlohmann::json::parse(
      R"({"dim": 1, "hyperplanes": [{"normal": [1], "offset": "0.5", "positive": "-"}]})"));
  EXPECT_EQ(flipped.hyperplanes[0].normal[0], -1);
  EXPECT_EQ(flipped.hyperplanes[0].offset, Rational(-1, 2));
  EXPECT_THROW(arrangement_from_json(nlohmann::json::parse(R"({"dim": 2, "hyperplanes": [{"normal": [0, 0]}]})")),
               PreconditionError);
  EXPECT_THROW(arrangement_from_json(nlohmann::json::parse(
                   R"({"dim": 1, "hyperplanes": [{"normal": [1]}, {"normal": [2]}]})")),
               PreconditionError);
}

TEST(Peeling, Triangle) {
  Arrangement a;
  a.dim = 2;
  a.hyperplanes = {hp({1, 0}), hp({0, 1}), hp({1, 1}, 1)};
  a.region = {above({1, 0}, -2), above({0, 1}, -2), above({-1, -1}, -3)};
  auto p = realizable_corner_peeling(a);
  ASSERT_TRUE(p.complete) << p.failure;
  std::string why;
  EXPECT_TRUE(verify_peeling(tope_graph_of(a), p.steps, &why)) << why;
}

TEST(Peeling, Box) {
  for (int d = 1; d <= 3; ++d) {
    Arrangement a;
    a.dim = d;
    for (int k = 0; k < d; ++k) {
      std::vector<long long> e(static_cast<std::size_t>(d), 0);
      e[static_cast<std::size_t>(k)] = 1;
      a.hyperplanes.push_back(hp(e));
      a.region.push_back(above(e, -4));
      for (auto& c : e) c = -c;
      a.region.push_back(above(e, -4));
    }
    auto p = realizable_corner_peeling(a);
    ASSERT_TRUE(p.complete) << p.failure;
    EXPECT_EQ(p.steps.size(), std::size_t{1} << d);
    EXPECT_TRUE(verify_peeling(tope_graph_of(a), p.steps));
  }
}

TEST(Peeling, Preconditions) {
  EXPECT_THROW(realizable_corner_peeling(central_lines(3)), PreconditionError);
  Arrangement a = central_lines(3);
  a.region = {above({1, 0}, -1), above({-1, 0}, -1), above({0, 1}, -1), above({0, -1}, -1)};
  EXPECT_THROW(realizable_corner_peeling(a), PreconditionError);  // three lines through 0
  Arrangement half;
  half.dim = 2;
  half.hyperplanes = {hp({1, 0})};
  half.region = {above({0, 1}, 0)};
  EXPECT_THROW(realizable_corner_peeling(half), PreconditionError);
}
