#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>

#include "sigbasis/rationals.hpp"
#include "sigbasis/words.hpp"

namespace sigbasis {

// A finite rational linear combination of words over one alphabet. Terms are
// kept in canonical word order; zero coefficients are erased eagerly so that
// structural equality is semantic equality.
class WordPoly {
 public:
  explicit WordPoly(int d) : d_(d) {}
  static WordPoly monomial(const Word& w, const Rat& c = Rat(1));

  int dim() const { return d_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Word, Rat>& terms() const { return terms_; }
  Rat coeff(const Word& w) const;

  void add_term(const Word& w, const Rat& c);
  WordPoly& operator+=(const WordPoly& other);
  WordPoly& operator*=(const Rat& scale);

  friend bool operator==(const WordPoly& a, const WordPoly& b) {
    return a.d_ == b.d_ && a.terms_ == b.terms_;
  }

  // "121 + 2*211"; rational coefficients print as "p/q*word"; "0" when empty.
  std::string str() const;

 private:
  int d_;
  std::map<Word, Rat> terms_;
};

// Shuffle product of two words: the sum over all order-preserving
// interleavings, by the recursion (wi) sh (vj) = ((w sh vj))i + ((wi sh v))j
// with the empty word as unit. Coefficients are positive integers; every
// result word has length |w| + |v|; total coefficient mass is
// binom(|w|+|v|, |w|); symmetric in its arguments.
WordPoly shuffle(const Word& w, const Word& v);

// Bilinear extension to linear combinations.
WordPoly shuffle_poly(const WordPoly& p, const WordPoly& q);

// shuffle(w, 0_k): the building block of the completion map that sends a
// word of length m to its zero-padded length-N companion.
WordPoly zero_pad_shuffle(const Word& w, std::size_t k);

// Memoizing wrapper used while assembling completion matrices, which revisit
// many shared sub-shuffles. Results are identical with or without the cache.
class ShuffleCache {
 public:
  const WordPoly& shuffle(const Word& w, const Word& v);
  WordPoly zero_pad_shuffle(const Word& w, std::size_t k);
  std::size_t size() const { return memo_.size(); }

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
      return std::hash<std::uint64_t>()(k.first * 0x9E3779B97F4A7C15ULL ^ k.second);
    }
  };
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, WordPoly, KeyHash>
      memo_;
};

}  // namespace sigbasis
