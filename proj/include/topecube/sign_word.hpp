#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace topecube {

// A tope is a word over {+,-}^n packed into one machine word: bit e set
// means coordinate e+1 is "+". Widths above 32 are not representable.
using Word = std::uint32_t;

inline constexpr int kMaxWidth = 32;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapacityError : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};
struct GuardError : Error {
  using Error::Error;
};
struct ParseError : Error {
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

inline constexpr Word width_mask(int n) {
  return n >= 32 ? ~Word{0} : ((Word{1} << n) - 1);
}

inline constexpr Word bit(int e) { return Word{1} << e; }

inline constexpr int popcount(Word w) { return std::popcount(w); }

inline constexpr int hamming(Word a, Word b) { return std::popcount(a ^ b); }

inline constexpr Word antipode(Word w, int n) { return ~w & width_mask(n); }

inline void check_width(int n) {
  if (n < 0 || n > kMaxWidth)
    throw CapacityError("width " + std::to_string(n) + " exceeds 32");
}

// Gather the bits of w selected by mask into the low end (software pext).
inline Word project(Word w, Word mask) {
  Word out = 0;
  int k = 0;
  for (Word m = mask; m; m &= m - 1) {
    if (w & (m & -m)) out |= Word{1} << k;
    ++k;
  }
  return out;
}

// Inverse of project: scatter the low bits of v onto the positions of mask.
inline Word deposit(Word v, Word mask) {
  Word out = 0;
  int k = 0;
  for (Word m = mask; m; m &= m - 1) {
    if (v & (Word{1} << k)) out |= (m & -m);
    ++k;
  }
  return out;
}

inline std::string word_to_string(Word w, int n) {
  std::string s(static_cast<std::size_t>(n), '-');
  for (int e = 0; e < n; ++e)
    if (w & bit(e)) s[static_cast<std::size_t>(e)] = '+';
  return s;
}

// Accepts "+-" strings; "01" strings are accepted too (1 = "+") since
// hand-written fixtures are easier to read in binary.
inline Word word_from_string(std::string_view s) {
  check_width(static_cast<int>(s.size()));
  Word w = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '+' || c == '1')
      w |= bit(static_cast<int>(i));
    else if (c != '-' && c != '0')
      throw std::invalid_argument(std::string("bad sign character '") + c + "'");
  }
  return w;
}

// Sign vector over {+,-,0}^n as three disjoint masks.
struct CoVector {
  int width = 0;
  Word plus = 0;
  Word minus = 0;

  Word zero() const { return width_mask(width) & ~(plus | minus); }
  Word support() const { return plus | minus; }
  int sign(int e) const {
    if (plus & bit(e)) return 1;
    if (minus & bit(e)) return -1;
    return 0;
  }
  CoVector operator-() const { return {width, minus, plus}; }
  bool operator==(const CoVector&) const = default;
  auto operator<=>(const CoVector&) const = default;

  static CoVector of_tope(Word w, int n) {
    return {n, w & width_mask(n), ~w & width_mask(n)};
  }
  // Covector fixing coordinates outside `zero` to the values of w.
  static CoVector with_zero(Word w, Word zero, int n) {
    Word fixed = width_mask(n) & ~zero;
    return {n, w & fixed, ~w & fixed};
  }

  // X <= Y in the sign order: X_e in {0, Y_e} for all e.
  bool conforms_to(const CoVector& y) const {
    return (plus & ~y.plus) == 0 && (minus & ~y.minus) == 0;
  }
  bool matches(Word w) const {
    return (w & plus) == plus && (w & minus) == 0;
  }
};

inline CoVector compose(const CoVector& x, const CoVector& y) {
  if (x.width != y.width) throw std::invalid_argument("compose: width mismatch");
  Word free = ~x.support();
  return {x.width, x.plus | (y.plus & free), x.minus | (y.minus & free)};
}

// Separator S(X,Y): coordinates where X and Y carry opposite nonzero signs.
inline Word separator(const CoVector& x, const CoVector& y) {
  return (x.plus & y.minus) | (x.minus & y.plus);
}

inline std::string to_string(const CoVector& x) {
  std::string s(static_cast<std::size_t>(x.width), '0');
  for (int e = 0; e < x.width; ++e) {
    if (x.plus & bit(e)) s[static_cast<std::size_t>(e)] = '+';
    if (x.minus & bit(e)) s[static_cast<std::size_t>(e)] = '-';
  }
  return s;
}

inline CoVector covector_from_string(std::string_view s) {
  CoVector x;
  x.width = static_cast<int>(s.size());
  check_width(x.width);
  for (std::size_t i = 0; i < s.size(); ++i) {
    switch (s[i]) {
      case '+': x.plus |= bit(static_cast<int>(i)); break;
      case '-': x.minus |= bit(static_cast<int>(i)); break;
      case '0': break;
      default: throw std::invalid_argument("bad covector character");
    }
  }
  return x;
}

}  // namespace topecube
