#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "topecube/tope_graph.hpp"

namespace topecube {

enum class Level { Labeled = 0, Reorientation = 1, Isomorphism = 2 };

inline const char* to_string(Level l) {
  switch (l) {
    case Level::Labeled: return "labeled";
    case Level::Reorientation: return "reorientation";
    case Level::Isomorphism: return "isomorphism";
  }
  return "?";
}

inline Level level_from_string(const std::string& s) {
  if (s == "labeled") return Level::Labeled;
  if (s == "reorientation") return Level::Reorientation;
  if (s == "isomorphism") return Level::Isomorphism;
  throw std::invalid_argument("unknown level '" + s + "'");
}

struct CanonicalKey {
  Level level = Level::Labeled;
  int width = 0;
  std::vector<Word> words;  // sorted

  bool operator==(const CanonicalKey&) const = default;
  auto operator<=>(const CanonicalKey&) const = default;

  ToGraph graph() const { return ToGraph(width, words); }

  // Filename-safe text form. Up to width 10 it is the vertex indicator
  // over Q_n in hex, otherwise the word list.
  std::string hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s = "n" + std::to_string(width) + "-";
    if (width <= 10) {
      std::vector<std::uint8_t> nib((std::size_t{1} << width) / 4 + 1, 0);
      for (Word w : words) nib[w / 4] |= static_cast<std::uint8_t>(1u << (w % 4));
      std::size_t len = std::max<std::size_t>(1, (std::size_t{1} << width) / 4);
      for (std::size_t i = 0; i < len; ++i) s += digits[nib[i]];
    } else {
      for (Word w : words) {
        for (int sh = 28; sh >= 0; sh -= 4) s += digits[(w >> sh) & 15];
        s += '.';
      }
    }
    return s;
  }
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.width) * 31 + static_cast<std::size_t>(k.level);
    for (Word w : k.words) h = h * 0x100000001B3ull ^ w;
    return h;
  }
};

// Position k of the result takes original coordinate perm[k]; the flip
// mask is applied before permuting.
inline Word permute_word(Word w, const std::vector<int>& perm) {
  Word out = 0;
  for (std::size_t k = 0; k < perm.size(); ++k)
    if (w & bit(perm[k])) out |= bit(static_cast<int>(k));
  return out;
}

inline ToGraph transform(const ToGraph& g, const std::vector<int>& perm, Word flip) {
  std::vector<Word> out;
  out.reserve(g.size());
  for (Word w : g.vertices()) out.push_back(permute_word(w ^ flip, perm));
  return ToGraph(g.width(), std::move(out));
}

namespace detail {

// Lexicographically smallest sorted word list over Aut(Q_n). The smallest
// list starts with 0, so only flips by a vertex are tried; coordinates are
// placed from the lowest bit upward and each placement fixes one more
// block of the sorted list, which is compared against the best so far.
class IsoCanon {
 public:
  IsoCanon(const std::vector<Word>& words, int n) : n_(n), words_(words) {}

  std::vector<Word> run() {
    for (Word b : words_) {
      xs_.clear();
      for (Word w : words_) xs_.push_back(w ^ b);
      perm_.clear();
      search(0, 0);
    }
    std::vector<Word> out{0};
    for (auto& blk : best_) out.insert(out.end(), blk.begin(), blk.end());
    return out;
  }

 private:
  void search(int k, Word used) {
    if (k == n_) return;
    for (int c = 0; c < n_; ++c) {
      if (used & bit(c)) continue;
      Word allowed = used | bit(c);
      block_.clear();
      for (Word x : xs_) {
        if ((x & bit(c)) == 0 || (x & ~allowed)) continue;
        Word idx = bit(k);
        for (int j = 0; j < k; ++j)
          if (x & bit(perm_[static_cast<std::size_t>(j)])) idx |= bit(j);
        block_.push_back(idx);
      }
      std::sort(block_.begin(), block_.end());
      if (static_cast<int>(best_.size()) > k) {
        int cmp = compare(block_, best_[static_cast<std::size_t>(k)]);
        if (cmp < 0) continue;
        if (cmp > 0) {
          best_.resize(static_cast<std::size_t>(k));
          best_.push_back(block_);
        }
      } else {
        best_.push_back(block_);
      }
      perm_.push_back(c);
      search(k + 1, allowed);
      perm_.pop_back();
    }
  }

  // +1 if a yields the larger indicator (the smaller sorted list).
  static int compare(const std::vector<Word>& a, const std::vector<Word>& b) {
    std::size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
    if (i == a.size() && i == b.size()) return 0;
    if (i == a.size()) return -1;
    if (i == b.size()) return 1;
    return a[i] < b[i] ? 1 : -1;
  }

  int n_;
  const std::vector<Word>& words_;
  std::vector<Word> xs_;
  std::vector<int> perm_;
  std::vector<Word> block_;
  std::vector<std::vector<Word>> best_;
};

}  // namespace detail

inline CanonicalKey canonical_key(const ToGraph& g, Level level) {
  CanonicalKey key{level, g.width(), {}};
  switch (level) {
    case Level::Labeled:
      key.words = g.vertices();
      break;
    case Level::Reorientation: {
      std::vector<Word> cur;
      bool first = true;
      for (Word b : g.vertices()) {
        cur.clear();
        for (Word w : g.vertices()) cur.push_back(w ^ b);
        std::sort(cur.begin(), cur.end());
        if (first || cur < key.words) key.words = cur;
        first = false;
      }
      break;
    }
    case Level::Isomorphism:
      if (g.empty()) break;
      if (g.size() == (std::size_t{1} << g.width())) {
        key.words = g.vertices();
        break;
      }
      key.words = detail::IsoCanon(g.vertices(), g.width()).run();
      std::sort(key.words.begin(), key.words.end());
      break;
  }
  return key;
}

}  // namespace topecube
