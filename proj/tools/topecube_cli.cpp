#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "topecube/topecube.hpp"

using namespace topecube;
using nlohmann::json;

namespace {

struct Globals {
  bool json_out = false;
  int threads = 1;
  unsigned seed = 0;
  std::string catalog;
  bool quiet = false;
};

json words_json(const std::vector<Word>& ws, int n) {
  json a = json::array();
  for (Word w : ws) a.push_back(word_to_string(w, n));
  return a;
}

json labels_json(const Labels& l) { return l.names(); }

json corner_json(const Corner& c, int n) {
  return {{"vertices", words_json(c.vertices, n)}, {"host", to_string(c.host)}};
}

json peeling_json(const Peeling& p, int n) {
  json steps = json::array();
  for (const auto& s : p.steps) steps.push_back(corner_json(s, n));
  json j = {{"complete", p.complete}, {"steps", steps}, {"step_count", p.steps.size()}};
  if (!p.failure.empty()) j["failure"] = p.failure;
  if (p.stuck) j["stuck"] = words_json(p.stuck->vertices(), p.stuck->width());
  return j;
}

// Runs a command body and wraps its results into the common report.
class Reporter {
 public:
  Reporter(const Globals& g, std::string command, json inputs)
      : g_(g), command_(std::move(command)), inputs_(std::move(inputs)),
        start_(std::chrono::steady_clock::now()) {}

  void text(const std::string& line) { lines_.push_back(line); }
  json& results() { return results_; }

  void finish(const std::string& out_path = {}) {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    json r = {{"schema", kReportSchema}, {"version", kVersion}, {"command", command_},
              {"inputs", inputs_},       {"results", results_}, {"timing_s", secs}};
    if (!out_path.empty()) {
      std::ofstream f(out_path);
      if (!f) throw Error("cannot write " + out_path);
      f << r.dump(2) << '\n';
    }
    if (g_.json_out) {
      std::cout << r.dump(2) << '\n';
    } else {
      for (const auto& l : lines_) std::cout << l << '\n';
    }
  }

 private:
  const Globals& g_;
  std::string command_;
  json inputs_;
  json results_ = json::object();
  std::vector<std::string> lines_;
  std::chrono::steady_clock::time_point start_;
};

std::string join(const std::vector<std::string>& xs, const char* sep = " ") {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : sep) + x;
  return s;
}

GenerateOptions gen_options(const Globals& g, bool resume) {
  GenerateOptions o;
  o.threads = g.threads;
  o.catalog = g.catalog;
  o.resume = resume;
  if (!g.quiet) o.log = [](const std::string& m) { std::cerr << m << '\n'; };
  return o;
}

// ------------------------------------------------------------- commands

void cmd_analyze(const Globals& G, const std::string& path, int budget, std::size_t mandel_limit) {
  ToGraph g = read_topes_file(path);
  Reporter rep(G, "analyze", {{"path", path}, {"budget", budget}, {"mandel_limit", mandel_limit}});
  auto& R = rep.results();
  Labels labels = classify(g);
  R["labels"] = labels_json(labels);
  R["width"] = g.width();
  R["vertices"] = g.size();
  rep.text("labels: " + join(labels.names()));
  rep.text("width: " + std::to_string(g.width()) + "  vertices: " + std::to_string(g.size()));
  if (!labels.has(Label::PartialCube)) {
    rep.finish();
    return;
  }
  const int r = rank(g);
  R["rank"] = r;
  R["min_degree"] = g.min_degree();
  rep.text("rank: " + std::to_string(r) + "  min degree: " + std::to_string(g.min_degree()));
  if (!labels.has(Label::COM)) {
    rep.finish();
    return;
  }
  FaceSet fs(g);
  auto simp = simplicial_vertices(g, fs);
  R["simplicial"] = words_json(simp, g.width());
  rep.text("simplicial vertices: " + std::to_string(simp.size()));
  if (is_antipodal(g)) {
    auto lv = theta_las_vergnas(g);
    R["theta_las_vergnas"] = {{"holds", lv.holds}};
    if (!lv.holds) R["theta_las_vergnas"]["violating_class"] = lv.violating;
    rep.text(std::string("theta-Las-Vergnas: ") + (lv.holds ? "holds" : "fails at class " + std::to_string(lv.violating)));
  }
  auto cl = find_corners(g, fs, {budget, 0});
  json cs = json::array();
  for (const auto& c : cl.corners) cs.push_back(corner_json(c, g.width()));
  R["corners"] = {{"count", cl.corners.size()}, {"incomplete", cl.incomplete}, {"list", cs}};
  rep.text("corners: " + std::to_string(cl.corners.size()) + (cl.incomplete ? " (budget reached)" : ""));
  try {
    if (labels.has(Label::OM)) {
      bool e = is_euclidean_om(g);
      auto m = is_mandel(g, mandel_limit);
      R["euclidean"] = e;
      R["mandel"] = to_string(m);
      rep.text(std::string("euclidean: ") + (e ? "yes" : "no") + "  mandel: " + to_string(m));
    } else if (labels.has(Label::AOM)) {
      bool e = is_euclidean_aom(g);
      R["euclidean"] = e;
      rep.text(std::string("euclidean: ") + (e ? "yes" : "no"));
    }
  } catch (const PreconditionError& e) {
    R["euclidean"] = nullptr;
    rep.text(std::string("euclidean: n/a (") + e.what() + ")");
  }
  rep.finish();
}

void cmd_generate(const Globals& G, int n, const std::string& predicate, bool resume,
                  const std::string& route, const std::string& out_dir) {
  Reporter rep(G, "generate", {{"n", n}, {"predicate", predicate}, {"resume", resume}, {"route", route}});
  auto opt = gen_options(G, resume);
  auto keep = make_predicate(predicate);
  bool antipodal_stream = false;
  {
    std::stringstream ss(predicate);
    for (std::string t; std::getline(ss, t, ',');)
      antipodal_stream |= t == "antipodal" || t == "om" || t == "uom";
  }
  std::vector<ToGraph> stream;
  std::string stream_name;
  if (antipodal_stream) {
    if (route != "affine" && route != "all") throw std::invalid_argument("route must be affine or all");
    stream = generate_antipodal(n, opt, route == "all" ? AntipodalRoute::AllPartialCubes : AntipodalRoute::AffineChain);
    stream_name = "antipodal";
  } else if (predicate == "affine" || predicate == "aom") {
    stream = generate_affine(n, opt);
    stream_name = "affine";
  } else {
    stream = generate_partial_cubes(n, opt);
    stream_name = "partial-cubes";
  }
  auto kept = filter_class(stream, keep);
  auto& R = rep.results();
  R["stream"] = stream_name;
  R["stream_count"] = stream.size();
  R["count"] = kept.size();
  json keys = json::array();
  for (const auto& g : kept) keys.push_back(canonical_key(g, Level::Isomorphism).hex());
  R["classes"] = keys;
  if (!G.catalog.empty() && predicate != stream_name)
    catalog::store(G.catalog, stream_name + "+" + predicate, n, kept, {{"predicate", predicate}});
  if (!out_dir.empty()) catalog::store(out_dir, predicate, n, kept, {{"predicate", predicate}});
  rep.text(stream_name + " n=" + std::to_string(n) + ": " + std::to_string(stream.size()) + " classes, " +
           std::to_string(kept.size()) + " pass '" + predicate + "'");
  rep.finish();
}

void cmd_mutation_graph(const Globals& G, int n, int r, const std::string& level_name, bool resume,
                        const std::string& dot_path) {
  Level level = level_from_string(level_name);
  Reporter rep(G, "mutation-graph", {{"n", n}, {"r", r}, {"level", to_string(level)}});
  auto mg = build_mutation_graph(n, r, level, gen_options(G, resume));
  auto comp = is_connected(mg);
  std::size_t loops = 0;
  for (auto [a, b] : mg.edges) loops += a == b;
  auto& R = rep.results();
  R["nodes"] = mg.nodes.size();
  R["edges"] = mg.edges.size() - loops;
  R["loops"] = loops;
  R["connected"] = comp.connected;
  R["components"] = comp.parts.size();
  if (!dot_path.empty()) {
    std::ofstream f(dot_path);
    if (!f) throw Error("cannot write " + dot_path);
    f << to_dot(mg);
  }
  rep.text("G(" + std::to_string(n) + "," + std::to_string(r) + ") at " + to_string(level) + " level: " +
           std::to_string(mg.nodes.size()) + " nodes, " + std::to_string(mg.edges.size() - loops) +
           " edges, " + (comp.connected ? "connected" : std::to_string(comp.parts.size()) + " components"));
  rep.finish();
}

void cmd_peel(const Globals& G, const std::string& path, const std::string& strategy, int budget,
              const std::string& report) {
  ToGraph g = read_topes_file(path);
  auto s = peel_strategy_from_string(strategy);
  Reporter rep(G, "peel", {{"path", path}, {"strategy", to_string(s)}, {"budget", budget}});
  auto p = corner_peeling(g, s, budget);
  std::string why;
  const bool ok = p.complete && verify_peeling(g, p.steps, &why);
  auto& R = rep.results();
  R = peeling_json(p, g.width());
  R["verified"] = ok;
  if (!ok && !why.empty()) R["verify_failure"] = why;
  for (std::size_t k = 0; k < p.steps.size(); ++k)
    rep.text(std::to_string(k + 1) + ": " + join([&] {
               std::vector<std::string> v;
               for (Word w : p.steps[k].vertices) v.push_back(word_to_string(w, g.width()));
               return v;
             }()) + "  in " + to_string(p.steps[k].host));
  rep.text(p.complete ? std::to_string(p.steps.size()) + " steps" + (ok ? ", verified" : ", NOT verified: " + why)
                      : "stuck: " + p.failure);
  rep.finish(report);
  if (!p.complete) throw Error("peeling incomplete: " + p.failure);
}

void cmd_realize(const Globals& G, const std::string& path, bool peel, const std::string& out) {
  Arrangement a = read_arrangement_file(path);
  Reporter rep(G, "realize", {{"path", path}, {"peel", peel}});
  ToGraph g = tope_graph_of(a);
  Labels l = classify_realizable(a);
  auto& R = rep.results();
  R["chambers"] = g.size();
  R["labels"] = labels_json(l);
  R["simple"] = is_simple(a);
  R["topes"] = words_json(g.vertices(), g.width());
  rep.text("chambers: " + std::to_string(g.size()) + "  labels: " + join(l.names()));
  if (!out.empty()) write_topes_file(out, g, "chambers of " + path);
  if (peel) {
    auto p = realizable_corner_peeling(a);
    std::string why;
    bool ok = p.complete && verify_peeling(g, p.steps, &why);
    R["peeling"] = peeling_json(p, g.width());
    R["peeling"]["verified"] = ok;
    rep.text("sweep peeling: " + std::to_string(p.steps.size()) + " steps, " +
             (ok ? "verified" : "NOT verified: " + (p.failure.empty() ? why : p.failure)));
  }
  rep.finish();
}

json cocircuit_graph_json(const CocircuitGraph& cg) {
  const int n = cg.host.width();
  json nodes = json::array(), edges = json::array(), lines = json::array(), orients = json::array();
  for (std::size_t k = 0; k < cg.nodes.size(); ++k) nodes.push_back(to_string(cg.node(k).covector));
  for (std::size_t i = 0; i < cg.edges.size(); ++i) edges.push_back({cg.edges[i].first, cg.edges[i].second});
  for (const auto& L : cg.lines)
    lines.push_back({{"zero", word_to_string(~L.F & width_mask(n), n)},
                     {"nodes", L.nodes}, {"edges", L.edges}, {"cycle", L.cycle}, {"tree_like", L.tree_like}});
  for (int e = 0; e < n; ++e) {
    auto mo = orient(cg, e);
    auto ac = is_strictly_acyclic(cg, mo);
    orients.push_back({{"class", e}, {"state", mo.state}, {"strict", ac.strict}, {"witness", ac.witness}});
  }
  return {{"mode", cg.mode == CocircuitMode::Oriented ? "oriented" : "affine"},
          {"node_rank", cg.node_rank},
          {"nodes", nodes},
          {"edges", edges},
          {"lines", lines},
          {"orientations", orients}};
}

void cmd_euclidean(const Globals& G, const std::string& path, const std::string& emit) {
  ToGraph g = read_topes_file(path);
  Reporter rep(G, "euclidean", {{"path", path}});
  Labels l = classify(g);
  auto& R = rep.results();
  bool e;
  if (l.has(Label::OM)) {
    e = is_euclidean_om(g);
    R["kind"] = "OM";
  } else if (l.has(Label::AOM)) {
    e = is_euclidean_aom(g);
    R["kind"] = "AOM";
  } else {
    throw PreconditionError("euclidean: input is neither an OM nor an AOM");
  }
  R["euclidean"] = e;
  rep.text(std::string(l.has(Label::OM) ? "OM" : "AOM") + " euclidean: " + (e ? "yes" : "no"));
  if (!emit.empty()) {
    ToGraph h = drop_constant_coordinates(g);
    auto cg = cocircuit_graph(h, l.has(Label::OM) ? CocircuitMode::Oriented : CocircuitMode::Affine);
    std::ofstream f(emit);
    if (!f) throw Error("cannot write " + emit);
    f << cocircuit_graph_json(cg).dump(2) << '\n';
  }
  rep.finish();
}

void cmd_mandel(const Globals& G, const std::string& path, std::size_t limit) {
  ToGraph g = read_topes_file(path);
  Reporter rep(G, "mandel", {{"path", path}, {"limit", limit}});
  auto m = is_mandel(g, limit);
  rep.results()["mandel"] = to_string(m);
  rep.text(std::string("mandel: ") + to_string(m));
  rep.finish();
}

void cmd_corners(const Globals& G, const std::string& path, int budget, std::size_t limit) {
  ToGraph g = read_topes_file(path);
  Reporter rep(G, "corners", {{"path", path}, {"budget", budget}, {"limit", limit}});
  auto cl = find_corners(g, {budget, limit});
  json cs = json::array();
  for (const auto& c : cl.corners) {
    cs.push_back(corner_json(c, g.width()));
    std::vector<std::string> v;
    for (Word w : c.vertices) v.push_back(word_to_string(w, g.width()));
    rep.text(join(v) + "  in " + to_string(c.host));
  }
  rep.results() = {{"count", cl.corners.size()}, {"incomplete", cl.incomplete}, {"corners", cs}};
  rep.text(std::to_string(cl.corners.size()) + " corners" + (cl.incomplete ? " (budget reached)" : ""));
  rep.finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"topecube: tope graphs of OMs, COMs and antipodal partial cubes"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals G;
  if (const char* c = std::getenv("TOPECUBE_CATALOG")) G.catalog = c;
  app.add_flag("--json", G.json_out, "machine-readable report on stdout");
  app.add_option("--threads", G.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", G.seed, "seed for any sampling (unused by deterministic commands)");
  app.add_option("--catalog", G.catalog, "catalog root (default: $TOPECUBE_CATALOG)");
  app.add_flag("-q,--quiet", G.quiet, "no progress on stderr");
  app.set_version_flag("--version", kVersion);

  std::string path, predicate = "antipodal", route = "affine", level = "isomorphism",
                    strategy = "generic", out, report, emit, dot;
  int n = 0, r = 0, budget = 8;
  bool resume = false, peel = false;
  std::size_t mandel_limit = kDefaultMandelLimit, limit = 0;

  auto* analyze = app.add_subcommand("analyze", "classify and summarize a .topes file");
  analyze->add_option("path", path, ".topes file")->required();
  analyze->add_option("--budget", budget, "largest generic corner candidate");
  analyze->add_option("--mandel-limit", mandel_limit, "sign maps tried by the Mandel search");

  auto* generate = app.add_subcommand("generate", "exhaustive generation up to isomorphism");
  generate->add_option("n", n, "isometric dimension")->required();
  generate->add_option("--predicate", predicate, "antipodal, om, uom, com, aom, lop, affine, rank=<r>, joined by ','");
  generate->add_option("--route", route, "antipodal route: affine or all");
  generate->add_flag("--resume", resume, "reuse completed catalog levels");
  generate->add_option("--out", out, "also write the kept classes here");

  auto* mutation = app.add_subcommand("mutation-graph", "mutation graph of uniform OMs");
  mutation->add_option("n", n)->required();
  mutation->add_option("r", r)->required();
  mutation->add_option("--level", level, "labeled, reorientation or isomorphism");
  mutation->add_flag("--resume", resume, "reuse completed catalog levels");
  mutation->add_option("--dot", dot, "write the graph in DOT format");

  auto* peeler = app.add_subcommand("peel", "corner peeling");
  peeler->add_option("path", path)->required();
  peeler->add_option("--strategy", strategy, "lop, rank2, hypercellular or generic");
  peeler->add_option("--budget", budget, "largest generic corner candidate");
  peeler->add_option("--report", report, "write the JSON report here");

  auto* realize = app.add_subcommand("realize", "tope graph of a rational arrangement");
  realize->add_option("path", path, "arrangement JSON")->required();
  realize->add_flag("--peel", peel, "sweep corner peeling (bounded simple arrangements)");
  realize->add_option("--out", out, "write the chambers as .topes");

  auto* euclid = app.add_subcommand("euclidean", "Euclidean check of an OM or AOM");
  euclid->add_option("path", path)->required();
  euclid->add_option("--emit-cocircuit-graph", emit, "write G*, lines and orientations as JSON");

  auto* mandel = app.add_subcommand("mandel", "search for a Mandel expansion");
  mandel->add_option("path", path)->required();
  mandel->add_option("--limit", mandel_limit, "sign maps tried");

  auto* corners = app.add_subcommand("corners", "list corners");
  corners->add_option("path", path)->required();
  corners->add_option("--budget", budget, "largest generic corner candidate");
  corners->add_option("--limit", limit, "stop after this many corners (0 = all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*analyze) cmd_analyze(G, path, budget, mandel_limit);
    else if (*generate) cmd_generate(G, n, predicate, resume, route, out);
    else if (*mutation) cmd_mutation_graph(G, n, r, level, resume, dot);
    else if (*peeler) cmd_peel(G, path, strategy, budget, report);
    else if (*realize) cmd_realize(G, path, peel, out);
    else if (*euclid) cmd_euclidean(G, path, emit);
    else if (*mandel) cmd_mandel(G, path, mandel_limit);
    else if (*corners) cmd_corners(G, path, budget, limit);
  } catch (const GuardError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
