// One PASS/FAIL line per acceptance criterion. Exit status is 0 when every
// FAIL is in kKnownUnattainable.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include <CLI11.hpp>

#include "../oracles.hpp"
#include "topecube/topecube.hpp"

using namespace topecube;

namespace {

// Pinned parameters.
constexpr int kMaxCatalogN = 6;
constexpr int kMaxMutationN = 7;
constexpr int kCornerBudget = 8;
constexpr std::size_t kMandelLimit = kDefaultMandelLimit;
constexpr int kRandomArrangements = 40;
constexpr int kMaxPencil = 8;
constexpr int kAuditN = 5;
const std::set<int> kKnownUnattainable = {8};

const std::size_t kAntipodalCounts[] = {0, 0, 1, 2, 4, 13, 115};
const std::size_t kOmCounts[] = {0, 0, 1, 2, 4, 9, 35};

struct Context {
  GenerateOptions opt;
  std::map<int, std::vector<ToGraph>> antipodal;
  const std::vector<ToGraph>& catalog(int n) {
    auto it = antipodal.find(n);
    if (it == antipodal.end()) it = antipodal.emplace(n, generate_antipodal(n, opt)).first;
    return it->second;
  }
  std::vector<ToGraph> oms(int lo, int hi) {
    std::vector<ToGraph> out;
    for (int n = lo; n <= hi; ++n)
      for (const auto& g : catalog(n))
        if (is_om(g)) out.push_back(g);
    return out;
  }
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

ToGraph c6() { return even_cycle(3); }

std::string join_counts(const std::vector<std::size_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

Outcome c1(Context& cx) {
  std::vector<std::size_t> got;
  bool ok = true;
  for (int n = 2; n <= kMaxCatalogN; ++n) {
    got.push_back(cx.catalog(n).size());
    ok = ok && got.back() == kAntipodalCounts[n];
  }
  // second route at the top level
  GenerateOptions plain = cx.opt;
  plain.catalog.clear();
  auto other = generate_antipodal(kMaxCatalogN, plain, AntipodalRoute::AllPartialCubes);
  bool same = other == cx.catalog(kMaxCatalogN);
  return {ok && same, "counts " + join_counts(got) + (same ? ", routes agree at n=6" : ", routes DISAGREE at n=6")};
}

Outcome c2(Context& cx) {
  std::vector<std::size_t> got;
  bool ok = true;
  for (int n = 2; n <= kMaxCatalogN; ++n) {
    got.push_back(filter_class(cx.catalog(n), "om").size());
    ok = ok && got.back() == kOmCounts[n];
  }
  return {ok, "counts " + join_counts(got)};
}

Outcome c3(Context& cx) {
  bool ok = true;
  std::vector<std::size_t> r2;
  for (int n = 2; n <= kMaxMutationN; ++n) {
    r2.push_back(generate_uoms(n, 2, cx.opt).size());
    ok = ok && r2.back() == 1;
  }
  auto a = generate_uoms(6, 3, cx.opt).size();
  auto b = generate_uoms(7, 3, cx.opt).size();
  ok = ok && a == 4 && b == 11;
  return {ok, "rank 2: " + join_counts(r2) + "; (6,3)=" + std::to_string(a) + " (7,3)=" + std::to_string(b)};
}

Outcome c4(Context& cx) {
  std::size_t graphs = 0;
  std::string bad;
  for (int n = 2; n <= kMaxMutationN; ++n)
    for (int r = 2; r <= n; ++r) {
      auto mg = build_mutation_graph(n, r, Level::Isomorphism, cx.opt);
      ++graphs;
      if (!is_connected(mg).connected) bad += " (" + std::to_string(n) + "," + std::to_string(r) + ")";
    }
  return {bad.empty(), std::to_string(graphs) + " graphs, 2 <= r <= n <= 7" + (bad.empty() ? "" : ", disconnected:" + bad)};
}

Outcome c5(Context& cx) {
  std::size_t checked = 0, bad = 0;
  for (int n = 3; n <= kMaxCatalogN; ++n)
    for (const auto& g : cx.catalog(n))
      if (rank(g) == 3) {
        ++checked;
        if (!theta_las_vergnas(g).holds) ++bad;
      }
  return {bad == 0 && checked > 0, std::to_string(checked) + " rank-3 graphs, " + std::to_string(bad) + " violations"};
}

Outcome c6_(Context& cx) {
  std::size_t checked = 0, bad = 0;
  for (int n = 2; n <= kMaxCatalogN; ++n)
    for (const auto& g : cx.catalog(n)) {
      ++checked;
      auto [d, r] = min_degree_vs_rank(g);
      if (d > r || (d <= 2 && d != r)) ++bad;
    }
  return {bad == 0, std::to_string(checked) + " graphs, " + std::to_string(bad) + " violations"};
}

Outcome c7(Context&) {
  bool ok = true;
  std::string s;
  for (int k = 2; k <= 5; ++k) {
    auto g = construct_A_G(path_graph(k));
    auto [d, r] = min_degree_vs_rank(g);
    ok = ok && is_partial_cube(g) && d == 4 && r == k + 2;
    s += "A(P" + std::to_string(k) + "): d=" + std::to_string(d) + " r=" + std::to_string(r) + "; ";
  }
  auto q = construct_Q_minusminus(4, 1, true);
  auto [d, r] = min_degree_vs_rank(q);
  ok = ok && is_antipodal(q) && is_partial_cube(q) && d == 3 && r == 4;
  s += "doubled Q4--(1): d=" + std::to_string(d) + " r=" + std::to_string(r);
  return {ok, s};
}

Outcome c8(Context& cx) {
  auto oms = cx.oms(2, kMaxCatalogN);
  std::size_t without = 0;
  for (const auto& g : oms)
    if (find_corners(g, CornerSearch{kCornerBudget, 1}).corners.empty()) ++without;
  return {without == 0, std::to_string(oms.size()) + " OMs, " + std::to_string(without) + " without a corner at budget " +
                            std::to_string(kCornerBudget)};
}

// Informative companion to 8: corners read off general-position extensions.
std::string c8_extensions(Context& cx) {
  auto oms = cx.oms(2, kMaxCatalogN);
  std::size_t with = 0;
  for (const auto& g : oms) {
    FaceSet fs(g);
    bool found = false;
    for_each_gp_extension(g, 0, [&](const GPExtension& x) {
      for (const auto* side : {&x.h1, &x.h2}) {
        VertexSet c = g.all() - *side;
        if (!c.empty() && verify_corner(g, fs, c)) found = true;
      }
      return !found;
    });
    with += found;
  }
  return std::to_string(with) + "/" + std::to_string(oms.size()) + " OMs have a corner read off a general-position extension";
}

bool peels(const ToGraph& g, PeelStrategy s, std::string* why) {
  auto p = corner_peeling(g, s);
  if (!p.complete) {
    *why = p.failure;
    return false;
  }
  return verify_peeling(g, p.steps, why);
}

std::vector<ToGraph> glued_cycle_fixtures() {
  auto c8 = even_cycle(4);
  auto c4 = even_cycle(2);
  auto e = [](const ToGraph& g) { return std::pair{g.vertex(0), g.vertex(0) ^ bit(0)}; };
  auto two = glue_along_edge(c6(), e(c6()).first, e(c6()).second, c6(), e(c6()).first, e(c6()).second);
  auto three = glue_along_edge(two, e(two).first, e(two).second, c8, e(c8).first, e(c8).second);
  return {two, three, glue_at_vertex(c8, c8.vertex(0), c4, c4.vertex(0)),
          glue_at_vertex(c6(), c6().vertex(0), c6(), c6().vertex(3))};
}

Outcome c9(Context& cx) {
  std::string fails;
  // (a)
  for (int n = 1; n <= 5; ++n) {
    auto p = corner_peeling(hypercube(n), PeelStrategy::Lop);
    bool ok = p.complete && p.steps.size() == (std::size_t{1} << n) && verify_peeling(hypercube(n), p.steps);
    for (const auto& s : p.steps) ok = ok && s.vertices.size() == 1;
    if (!ok) fails += " Q" + std::to_string(n);
  }
  // (b)
  std::set<CanonicalKey> seen;
  std::vector<ToGraph> rank2;
  for (const auto& g : cx.oms(3, kMaxCatalogN)) {
    if (rank(g) != 3) continue;
    for (int e = 0; e < g.width(); ++e)
      for (bool s : {true, false}) {
        auto h = halfspace_graph(g, e, s);
        if (seen.insert(canonical_key(h, Level::Isomorphism)).second) rank2.push_back(h);
      }
  }
  for (const auto& g : glued_cycle_fixtures()) rank2.push_back(g);
  std::size_t ok_b = 0;
  for (const auto& g : rank2) {
    std::string why;
    if (is_com(g) && rank(g) <= 2 && peels(g, PeelStrategy::Rank2, &why))
      ++ok_b;
    else
      fails += " rank2[" + why + "]";
  }
  // (c)
  auto star = glue_at_vertex(glue_at_vertex(path_graph(1), 0, path_graph(1), 0), 0, path_graph(1), 0);
  auto prism = cartesian_product(c6(), hypercube(1));
  std::vector<ToGraph> cells = {path_graph(4), star, c6(), even_cycle(5), prism,
                                glue_along_edge(prism, prism.vertex(0), prism.vertex(0) ^ bit(3), c6(), 0, 1)};
  for (const auto& g : glued_cycle_fixtures()) cells.push_back(g);
  std::size_t ok_c = 0;
  for (const auto& g : cells) {
    std::string why;
    if (is_hypercellular(g) && peels(g, PeelStrategy::Hypercellular, &why))
      ++ok_c;
    else
      fails += " cellular[" + why + "]";
  }
  return {fails.empty(), "(a) Q1..Q5; (b) " + std::to_string(ok_b) + "/" + std::to_string(rank2.size()) +
                             " rank<=2 COMs; (c) " + std::to_string(ok_c) + "/" + std::to_string(cells.size()) +
                             " hypercellular" + (fails.empty() ? "" : ";" + fails)};
}

Outcome c10(Context& cx) {
  std::set<CanonicalKey> seen;
  std::size_t aoms = 0, bad_aom = 0, r3 = 0, bad_r3 = 0;
  for (const auto& g : cx.oms(2, kMaxCatalogN)) {
    for (int e = 0; e < g.width(); ++e)
      for (bool s : {true, false}) {
        auto h = halfspace_graph(g, e, s);
        if (rank(h) != 2 || !seen.insert(canonical_key(h, Level::Isomorphism)).second) continue;
        ++aoms;
        if (!is_euclidean_aom(h)) ++bad_aom;
      }
    if (rank(g) == 3) {
      ++r3;
      if (!is_euclidean_om(g) || is_mandel(g, kMandelLimit) != MandelResult::True) ++bad_r3;
    }
  }
  return {bad_aom == 0 && bad_r3 == 0 && aoms > 0 && r3 > 0,
          std::to_string(aoms) + " rank-2 AOMs (" + std::to_string(bad_aom) + " not Euclidean); " + std::to_string(r3) +
              " rank-3 OMs (" + std::to_string(bad_r3) + " not Euclidean+Mandel)"};
}

Hyperplane line(long long a, long long b, Rational c) {
  Hyperplane h;
  h.normal = {Rational(a), Rational(b)};
  h.offset = c;
  return h;
}

Inequality above(std::vector<long long> a, Rational b) {
  Inequality q;
  for (auto c : a) q.a.emplace_back(c);
  q.b = b;
  return q;
}

Outcome c11(Context&) {
  std::string fails;
  for (int m = 2; m <= kMaxPencil; ++m) {
    Arrangement a;
    a.dim = 2;
    for (int k = 0; k < m; ++k) a.hyperplanes.push_back(line(1, k, 0));
    auto g = tope_graph_of(a);
    if (canonical_key(g, Level::Isomorphism) != canonical_key(even_cycle(m), Level::Isomorphism))
      fails += " pencil" + std::to_string(m);
  }
  std::mt19937 rng(0);
  int simple = 0, peeled = 0;
  while (simple < kRandomArrangements) {
    Arrangement a;
    a.dim = 2;
    const int m = 2 + static_cast<int>(rng() % 6);
    for (int k = 0; k < m; ++k)
      a.hyperplanes.push_back(line(static_cast<long long>(rng() % 19) - 9, static_cast<long long>(rng() % 19) - 9,
                                   Rational(static_cast<long long>(rng() % 21) - 10)));
    try {
      a.validate();
    } catch (const PreconditionError&) {
      continue;
    }
    if (!is_simple(a)) continue;
    ++simple;
    auto g = tope_graph_of(a);
    std::size_t formula = 1 + static_cast<std::size_t>(m) + static_cast<std::size_t>(m * (m - 1) / 2);
    std::set<Word> ws(g.vertices().begin(), g.vertices().end());
    if (g.size() != formula || ws != oracle::sampled_chambers(a)) fails += " random#" + std::to_string(simple);
    // the same lines inside a box around all vertices
    a.region = {above({1, 0}, -40), above({-1, 0}, -40), above({0, 1}, -40), above({0, -1}, -40)};
    auto p = realizable_corner_peeling(a);
    std::string why;
    if (p.complete && verify_peeling(tope_graph_of(a), p.steps, &why))
      ++peeled;
    else
      fails += " peel#" + std::to_string(simple) + "[" + p.failure + why + "]";
  }
  return {fails.empty(), "pencils m=2.." + std::to_string(kMaxPencil) + "; " + std::to_string(simple) +
                             " simple arrangements vs formula and sampling; " + std::to_string(peeled) +
                             " sweep peelings verified" + (fails.empty() ? "" : ";" + fails)};
}

Outcome c12(Context& cx) {
  std::size_t coms = 0, bad = 0;
  for (int n = 1; n <= kAuditN; ++n)
    for (const auto& g : generate_partial_cubes(n, cx.opt)) {
      FaceSet fs(g);
      // brute-force gates from the distance matrix
      bool brute_all = true;
      for (const auto& f : fs.faces()) {
        auto r = is_gated(g, f);
        bool brute = true;
        for (std::size_t v = 0; v < g.size() && brute; ++v) {
          std::optional<std::size_t> gate;
          f.topes.for_each([&](std::size_t x) {
            if (gate) return;
            bool ok = true;
            f.topes.for_each([&](std::size_t u) { ok = ok && g.dist(v, x) + g.dist(x, u) == g.dist(v, u); });
            if (ok) gate = x;
          });
          if (!gate) brute = false;
          else if (r.gated && r.gate[v] != *gate) ++bad;
        }
        if (brute != r.gated) ++bad;
        brute_all = brute_all && brute;
      }
      if (brute_all != is_com(g)) ++bad;
      if (!brute_all) continue;
      ++coms;
      if (audit_SE(fs) || audit_FS(fs)) ++bad;
    }
  return {bad == 0 && coms > 0, std::to_string(coms) + " COMs with n <= " + std::to_string(kAuditN) + ", " +
                                    std::to_string(bad) + " disagreements"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string catalog;
  std::vector<int> only;
  app.add_option("--catalog", catalog, "catalog directory reused between criteria");
  app.add_option("--only", only, "run only these criteria");
  CLI11_PARSE(app, argc, argv);

  Context cx;
  cx.opt.catalog = catalog;
  cx.opt.resume = !catalog.empty();
  std::vector<std::function<Outcome(Context&)>> crit = {c1, c2, c3, c4, c5, c6_, c7, c8, c9, c10, c11, c12};
  int unexpected = 0;
  for (int k = 1; k <= 12; ++k) {
    if (!only.empty() && std::find(only.begin(), only.end(), k) == only.end()) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = crit[static_cast<std::size_t>(k - 1)](cx);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d: %s (%.1fs)%s\n", o.pass ? "PASS" : "FAIL", k, o.detail.c_str(), secs,
                !o.pass && kKnownUnattainable.count(k) ? " [known unattainable]" : "");
    if (k == 8) std::printf("INFO  8: %s\n", c8_extensions(cx).c_str());
    std::fflush(stdout);
    if (!o.pass && !kKnownUnattainable.count(k)) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
