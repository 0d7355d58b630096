#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "topecube/tope_graph.hpp"

namespace topecube {

// .topes: first significant line "n=<int>", then one +/- string per tope.
// '#' starts a comment; blank lines are skipped.
inline ToGraph read_topes(std::istream& in) {
  std::string line;
  int lineno = 0;
  int n = -1;
  std::vector<Word> words;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    std::string tok = line.substr(b, e - b + 1);
    if (n < 0) {
      if (tok.rfind("n=", 0) != 0) throw ParseError(lineno, "expected header n=<int>");
      try {
        std::size_t used = 0;
        n = std::stoi(tok.substr(2), &used);
        if (used != tok.size() - 2) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError(lineno, "bad width in header");
      }
      if (n < 0 || n > kMaxWidth) throw ParseError(lineno, "width out of range 0..32");
      continue;
    }
    if (static_cast<int>(tok.size()) != n)
      throw ParseError(lineno, "tope has length " + std::to_string(tok.size()) +
                                   ", expected " + std::to_string(n));
    Word w = 0;
    for (std::size_t i = 0; i < tok.size(); ++i) {
      if (tok[i] == '+')
        w |= bit(static_cast<int>(i));
      else if (tok[i] != '-')
        throw ParseError(lineno, std::string("bad character '") + tok[i] + "'");
    }
    words.push_back(w);
  }
  if (n < 0) throw ParseError(lineno, "missing header n=<int>");
  return ToGraph(n, std::move(words));
}

inline ToGraph read_topes_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_topes(in);
}

inline ToGraph parse_topes(const std::string& text) {
  std::istringstream in(text);
  return read_topes(in);
}

inline void write_topes(std::ostream& out, const ToGraph& g,
                        const std::string& comment = {}) {
  if (!comment.empty()) out << "# " << comment << '\n';
  out << "n=" << g.width() << '\n';
  for (Word w : g.vertices()) out << word_to_string(w, g.width()) << '\n';
}

inline std::string topes_string(const ToGraph& g) {
  std::ostringstream out;
  write_topes(out, g);
  return out.str();
}

inline void write_topes_file(const std::string& path, const ToGraph& g,
                             const std::string& comment = {}) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_topes(out, g, comment);
}

}  // namespace topecube
