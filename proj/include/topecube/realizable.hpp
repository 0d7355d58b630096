#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "topecube/corners.hpp"
#include "topecube/faces.hpp"

namespace topecube {

using Rational = boost::multiprecision::cpp_rational;

// "p/q", an integer, or a finite decimal such as "-0.25".
inline Rational parse_rational(const std::string& s) {
  const auto bad = [&] { return std::invalid_argument("bad rational '" + s + "'"); };
  // Decimal digits with an optional sign. Leading zeros are dropped since
  // boost would read them as an octal prefix.
  const auto integer = [&](std::string t, bool allow_sign) {
    bool neg = false;
    if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) {
      neg = t[0] == '-';
      t.erase(0, 1);
    }
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; })) throw bad();
    t.erase(0, std::min(t.find_first_not_of('0'), t.size() - 1));
    boost::multiprecision::cpp_int v(t);
    return neg ? boost::multiprecision::cpp_int(-v) : v;
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    auto den = integer(s.substr(slash + 1), false);
    if (den == 0) throw bad();
    return Rational(integer(s.substr(0, slash), true), den);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(integer(s, true));
  std::string frac = s.substr(dot + 1);
  if (frac.empty() || !std::all_of(frac.begin(), frac.end(), [](char c) { return c >= '0' && c <= '9'; })) throw bad();
  std::string whole = s.substr(0, dot);
  const bool neg = !whole.empty() && whole[0] == '-';
  if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.erase(0, 1);
  if (whole.empty()) whole = "0";
  boost::multiprecision::cpp_int scale = 1;
  for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
  Rational q(integer(whole + frac, false), scale);
  return neg ? Rational(-q) : q;
}

inline std::string rational_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

// ---------------------------------------------------------- linear systems

// a . x > b (strict) or a . x >= b.
struct Inequality {
  std::vector<Rational> a;
  Rational b;
  bool strict = true;
  bool operator==(const Inequality&) const = default;
  bool operator<(const Inequality& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return strict < o.strict;
  }
};

namespace detail {

// Scales so that the first nonzero coefficient is +1 or -1.
inline void normalize(Inequality& q) {
  for (const auto& c : q.a)
    if (c != 0) {
      Rational s = abs(c);
      for (auto& x : q.a) x /= s;
      q.b /= s;
      return;
    }
}

// Eliminates variable k; the projection of the solution set is described
// by the result (with a[k] = 0 everywhere).
inline std::vector<Inequality> eliminate(const std::vector<Inequality>& sys, std::size_t k) {
  std::vector<const Inequality*> pos, neg;
  std::set<Inequality> out;
  for (const auto& q : sys) {
    if (q.a[k] > 0)
      pos.push_back(&q);
    else if (q.a[k] < 0)
      neg.push_back(&q);
    else
      out.insert(q);
  }
  for (auto p : pos)
    for (auto n : neg) {
      const Rational sp = -n->a[k], sn = p->a[k];  // both positive
      Inequality r;
      r.a.resize(p->a.size());
      for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = sp * p->a[i] + sn * n->a[i];
      r.a[k] = 0;
      r.b = sp * p->b + sn * n->b;
      r.strict = p->strict || n->strict;
      normalize(r);
      out.insert(std::move(r));
    }
  return {out.begin(), out.end()};
}

// 0 > b or 0 >= b with no variables left.
inline bool trivially_true(const Inequality& q) { return q.strict ? q.b < 0 : q.b <= 0; }

}  // namespace detail

inline bool feasible(std::vector<Inequality> sys) {
  if (sys.empty()) return true;
  const std::size_t d = sys.front().a.size();
  for (auto& q : sys) detail::normalize(q);
  for (std::size_t k = 0; k < d; ++k) {
    sys = detail::eliminate(sys, k);
    for (const auto& q : sys) {
      bool zero = std::all_of(q.a.begin(), q.a.end(), [](const Rational& c) { return c == 0; });
      if (zero && !detail::trivially_true(q)) return false;
    }
  }
  return true;
}

// Supremum of f . x over the closure of the solution set, or nothing if
// unbounded. The system must be feasible.
inline std::optional<Rational> supremum(const std::vector<Inequality>& sys,
                                        const std::vector<Rational>& f) {
  const std::size_t d = f.size();
  std::vector<Inequality> aug;
  for (const auto& q : sys) {
    Inequality r{q.a, q.b, false};
    r.a.push_back(0);
    aug.push_back(std::move(r));
  }
  // y = f . x as two inequalities; y is the last variable
  Inequality up, down;
  up.a = f;
  up.a.push_back(-1);
  up.strict = false;
  down.a.resize(d + 1);
  for (std::size_t i = 0; i < d; ++i) down.a[i] = -f[i];
  down.a[d] = 1;
  down.strict = false;
  aug.push_back(up);
  aug.push_back(down);
  for (auto& q : aug) detail::normalize(q);
  for (std::size_t k = 0; k < d; ++k) aug = detail::eliminate(aug, k);
  std::optional<Rational> best;
  for (const auto& q : aug)
    if (q.a[d] < 0) {
      Rational bound = q.b / q.a[d];  // y <= bound
      if (!best || bound < *best) best = bound;
    }
  return best;
}

// ------------------------------------------------------------ arrangements

// Hyperplane normal . x = offset; the positive side is normal . x > offset.
struct Hyperplane {
  std::vector<Rational> normal;
  Rational offset;
};

struct Arrangement {
  int dim = 0;
  std::vector<Hyperplane> hyperplanes;
  std::vector<Inequality> region;  // strict; empty = whole space

  void validate() const {
    if (dim < 1) throw PreconditionError("arrangement: dimension must be positive");
    check_width(static_cast<int>(hyperplanes.size()));
    for (const auto& h : hyperplanes) {
      if (static_cast<int>(h.normal.size()) != dim) throw PreconditionError("arrangement: normal has wrong length");
      if (std::all_of(h.normal.begin(), h.normal.end(), [](const Rational& c) { return c == 0; }))
        throw PreconditionError("arrangement: zero normal");
    }
    for (std::size_t i = 0; i < hyperplanes.size(); ++i)
      for (std::size_t j = i + 1; j < hyperplanes.size(); ++j) {
        // same hyperplane iff (normal, offset) are proportional
        const auto& a = hyperplanes[i];
        const auto& b = hyperplanes[j];
        std::optional<Rational> ratio;
        bool prop = true;
        for (int k = 0; k <= dim && prop; ++k) {
          const Rational& x = k < dim ? a.normal[static_cast<std::size_t>(k)] : a.offset;
          const Rational& y = k < dim ? b.normal[static_cast<std::size_t>(k)] : b.offset;
          if (x == 0 || y == 0) {
            prop = x == y;
          } else if (!ratio) {
            ratio = x / y;
          } else {
            prop = *ratio == x / y;
          }
        }
        if (prop) throw PreconditionError("arrangement: duplicate hyperplane");
      }
    for (const auto& q : region)
      if (static_cast<int>(q.a.size()) != dim) throw PreconditionError("arrangement: region inequality has wrong length");
  }
};

inline Inequality side_of(const Hyperplane& h, bool positive) {
  Inequality q;
  q.strict = true;
  if (positive) {
    q.a = h.normal;
    q.b = h.offset;
  } else {
    for (const auto& c : h.normal) q.a.push_back(-c);
    q.b = -h.offset;
  }
  return q;
}

// JSON: {"dim": d, "hyperplanes": [{"normal": [...], "offset": "p/q",
// "positive": "+"}], "region": [{"normal": [...], "offset": ...}]};
// a region entry means normal . x > offset. "positive": "-" swaps sides.
inline Arrangement arrangement_from_json(const nlohmann::json& j) {
  auto rat = [](const nlohmann::json& v) {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw std::invalid_argument("rationals must be strings or integers");
  };
  Arrangement a;
  a.dim = j.at("dim").get<int>();
  for (const auto& h : j.at("hyperplanes")) {
    Hyperplane hp;
    for (const auto& c : h.at("normal")) hp.normal.push_back(rat(c));
    hp.offset = h.contains("offset") ? rat(h.at("offset")) : Rational(0);
    if (h.value("positive", std::string("+")) == "-") {
      for (auto& c : hp.normal) c = -c;
      hp.offset = -hp.offset;
    }
    a.hyperplanes.push_back(std::move(hp));
  }
  if (j.contains("region"))
    for (const auto& r : j.at("region")) {
      Inequality q;
      for (const auto& c : r.at("normal")) q.a.push_back(rat(c));
      q.b = r.contains("offset") ? rat(r.at("offset")) : Rational(0);
      a.region.push_back(std::move(q));
    }
  a.validate();
  return a;
}

inline Arrangement read_arrangement_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": " + e.what());
  }
  return arrangement_from_json(j);
}

inline nlohmann::json arrangement_to_json(const Arrangement& a) {
  nlohmann::json j;
  j["dim"] = a.dim;
  j["hyperplanes"] = nlohmann::json::array();
  for (const auto& h : a.hyperplanes) {
    nlohmann::json n = nlohmann::json::array();
    for (const auto& c : h.normal) n.push_back(rational_string(c));
    j["hyperplanes"].push_back({{"normal", n}, {"offset", rational_string(h.offset)}, {"positive", "+"}});
  }
  j["region"] = nlohmann::json::array();
  for (const auto& q : a.region) {
    nlohmann::json n = nlohmann::json::array();
    for (const auto& c : q.a) n.push_back(rational_string(c));
    j["region"].push_back({{"normal", n}, {"offset", rational_string(q.b)}});
  }
  return j;
}

// System describing the open chamber with sign word w inside the region.
inline std::vector<Inequality> chamber_system(const Arrangement& a, Word w, std::size_t upto) {
  std::vector<Inequality> sys = a.region;
  for (std::size_t i = 0; i < upto; ++i) sys.push_back(side_of(a.hyperplanes[i], (w >> i) & 1));
  return sys;
}

// Sign vectors of the open chambers inside the region. Hyperplanes are
// added one at a time and only feasible prefixes are extended, which tests
// the same candidates as the full 2^n scan minus those with an infeasible
// prefix.
inline ToGraph tope_graph_of(const Arrangement& a) {
  a.validate();
  if (!feasible(a.region)) throw PreconditionError("tope_graph_of: empty region");
  std::vector<Word> cur{0};
  for (std::size_t i = 0; i < a.hyperplanes.size(); ++i) {
    std::vector<Word> next;
    for (Word w : cur)
      for (bool s : {false, true}) {
        Word x = s ? w | bit(static_cast<int>(i)) : w;
        if (feasible(chamber_system(a, x, i + 1))) next.push_back(x);
      }
    cur = std::move(next);
  }
  if (cur.empty()) throw Error("tope_graph_of: no chamber");
  return ToGraph(static_cast<int>(a.hyperplanes.size()), std::move(cur));
}

// Labels implied by the shape of the arrangement, checked against the
// classification of its tope graph.
inline Labels classify_realizable(const Arrangement& a) {
  Labels syn;
  syn.add(Label::PartialCube);
  syn.add(Label::COM);
  const bool whole = a.region.empty();
  const bool central = std::all_of(a.hyperplanes.begin(), a.hyperplanes.end(),
                                   [](const Hyperplane& h) { return h.offset == 0; });
  std::set<int> axes;
  bool coordinate = central;
  for (const auto& h : a.hyperplanes) {
    int nz = 0, at = -1;
    for (int k = 0; k < a.dim; ++k)
      if (h.normal[static_cast<std::size_t>(k)] != 0) ++nz, at = k;
    if (nz != 1 || !axes.insert(at).second) coordinate = false;
  }
  if (whole) syn.add(Label::AOM), syn.add(Label::Affine);
  if (whole && central) syn.add(Label::OM);
  if (coordinate) syn.add(Label::LOP);
  Labels got = classify(tope_graph_of(a));
  for (Label l : {Label::PartialCube, Label::COM, Label::AOM, Label::Affine, Label::OM, Label::LOP})
    if (syn.has(l) && !got.has(l))
      throw Error(std::string("classify_realizable: arrangement implies ") + to_string(l) +
                  " but the tope graph is not");
  return syn;
}

// ----------------------------------------------------------------- peeling

namespace detail {

inline std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> m,
                                                  std::vector<Rational> rhs) {
  const std::size_t n = m.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(rhs[p], rhs[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  for (std::size_t c = 0; c < n; ++c) rhs[c] /= m[c][c];
  return rhs;
}

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

// Every d hyperplanes meet in exactly one point and no d+1 share a point.
inline bool is_simple(const Arrangement& a) {
  const std::size_t d = static_cast<std::size_t>(a.dim), n = a.hyperplanes.size();
  bool ok = true;
  detail::for_each_subset(n, d, [&](const std::vector<std::size_t>& s) {
    if (!ok) return;
    std::vector<std::vector<Rational>> m;
    std::vector<Rational> rhs;
    for (auto i : s) {
      m.push_back(a.hyperplanes[i].normal);
      rhs.push_back(a.hyperplanes[i].offset);
    }
    auto p = detail::solve(m, rhs);
    if (!p) {
      ok = false;
      return;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (std::find(s.begin(), s.end(), j) != s.end()) continue;
      Rational v = 0;
      for (std::size_t k = 0; k < d; ++k) v += a.hyperplanes[j].normal[k] * (*p)[k];
      if (v == a.hyperplanes[j].offset) ok = false;
    }
  });
  return ok;
}

// Sweeps the first region halfspace O into the region. A chamber K leaves
// when the sweep passes the lexicographic maximum of (c.x, x_1, ..., x_d)
// over the closure of K within the region, c the inward normal of O;
// chambers leaving together form one peeling step.
inline Peeling realizable_corner_peeling(const Arrangement& a) {
  a.validate();
  if (a.region.empty()) throw PreconditionError("realizable_corner_peeling: unsupported without a bounding region");
  if (!is_simple(a)) throw PreconditionError("realizable_corner_peeling: unsupported for non-simple arrangements");
  const std::size_t d = static_cast<std::size_t>(a.dim);
  for (std::size_t k = 0; k < d; ++k)
    for (int s : {1, -1}) {
      std::vector<Rational> f(d, 0);
      f[k] = s;
      if (!supremum(a.region, f)) throw PreconditionError("realizable_corner_peeling: region is unbounded");
    }
  ToGraph g = tope_graph_of(a);
  std::vector<std::vector<Rational>> objectives{a.region.front().a};
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Rational> e(d, 0);
    e[k] = 1;
    objectives.push_back(std::move(e));
  }
  std::map<std::vector<Rational>, std::vector<Word>> leave;
  for (Word w : g.vertices()) {
    auto sys = chamber_system(a, w, a.hyperplanes.size());
    std::vector<Rational> key;
    for (const auto& f : objectives) {
      auto v = supremum(sys, f);
      if (!v) throw Error("realizable_corner_peeling: unbounded chamber");
      key.push_back(*v);
      Inequality lo{f, *v, false}, hi;
      hi.strict = false;
      for (const auto& c : f) hi.a.push_back(-c);
      hi.b = -*v;
      for (auto& q : sys) q.strict = false;
      sys.push_back(lo);
      sys.push_back(hi);
    }
    leave[key].push_back(w);
  }
  Peeling out;
  ToGraph r = g;
  for (auto& [key, ws] : leave) {
    std::sort(ws.begin(), ws.end());
    if (r.size() == ws.size()) {
      if (ws.size() != 1) {
        out.failure = "last sweep step removes several chambers";
        out.stuck = r;
        return out;
      }
      out.steps.push_back({ws, CoVector::of_tope(ws[0], r.width())});
      out.complete = true;
      return out;
    }
    auto chk = verify_corner(r, ws);
    if (!chk) {
      out.failure = "sweep step is not a corner: " + chk.reason;
      out.stuck = r;
      return out;
    }
    FaceSet fs(r);
    out.steps.push_back({ws, fs[*chk.host].covector});
    r = remove_words(r, ws);
  }
  out.failure = "sweep ended early";
  return out;
}

}  // namespace topecube
