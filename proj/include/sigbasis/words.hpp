#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sigbasis {

// Letters range over {0, 1, ..., d}. Letter 0 indexes the time coordinate of
// a time-augmented path; 1..d index the space coordinates.
using Letter = std::uint8_t;

// Implementation bounds: digit-string serialization needs d <= 9, and the
// 64-bit radix sort key is comfortable for lengths up to 12.
inline constexpr int kMaxDim = 9;
inline constexpr int kMaxOrder = 12;

// An immutable word over {0,...,d}. The alphabet dimension d travels with the
// word so that mixed-alphabet operations can be rejected instead of coerced.
class Word {
 public:
  Word() : d_(1) {}  // empty word over {0,1}
  Word(int d, std::vector<Letter> letters);

  // Digit string, e.g. "021"; the empty word reads/prints as "e".
  static Word parse(int d, const std::string& text);
  std::string str() const;

  int dim() const { return d_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  Letter letter(std::size_t i) const { return letters_[i]; }

  // Rank in the canonical (length, then lexicographic) enumeration of all
  // words over the same alphabet: ((d+1)^len - 1)/d + radix-(d+1) value.
  std::uint64_t key() const;

  Word prefix(std::size_t len) const;       // first len letters
  Word suffix_from(std::size_t pos) const;  // letters from pos to the end
  Word drop_last() const;
  Word drop_first() const;

  // Removes every 0, keeping the relative order of the other letters.
  Word pure() const;
  std::size_t zero_count() const;
  bool starts_with_zero() const { return !empty() && letters_.front() == 0; }
  bool ends_with_zero() const { return !empty() && letters_.back() == 0; }

  friend bool operator==(const Word& a, const Word& b) {
    return a.d_ == b.d_ && a.letters_ == b.letters_;
  }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
  // Canonical order: length first, then lexicographic (d first so that the
  // order stays total across alphabets; sets never mix alphabets).
  friend bool operator<(const Word& a, const Word& b);

 private:
  int d_;
  std::vector<Letter> letters_;
};

Word concat(const Word& w, const Word& v);
Word zeros(int d, std::size_t k);  // the word 0_k

// A finite, duplicate-free set of words over one alphabet, held in canonical
// order, together with the truncation order N every member respects.
class WordSet {
 public:
  WordSet() : d_(1), order_(0) {}
  WordSet(int d, int order, std::vector<Word> words);

  int dim() const { return d_; }
  int order() const { return order_; }
  const std::vector<Word>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }
  bool contains(const Word& w) const { return index_of(w) >= 0; }
  std::ptrdiff_t index_of(const Word& w) const;  // -1 when absent

  // The set length: sum of the member word lengths.
  std::uint64_t total_length() const;

  friend bool operator==(const WordSet& a, const WordSet& b) {
    return a.d_ == b.d_ && a.words_ == b.words_;
  }

 private:
  int d_;
  int order_;
  std::vector<Word> words_;  // canonical order, unique
};

enum class WordKind {
  AllExact,      // every word of length exactly N
  AllUpTo,       // every word of length <= N
  PrefixesUpTo,  // length <= N, last letter != 0 (plus the empty word)
  SuffixesUpTo,  // length <= N, first letter != 0 (plus the empty word)
};

WordSet enumerate_words(WordKind kind, int N, int d);

// Words whose pure part equals gamma (a word with no zeros), of length
// exactly N, or of every length <= N when up_to is set.
WordSet enumerate_class(const Word& gamma, int N, bool up_to);

// All pure words of length <= N over letters {1..d}, canonical order.
std::vector<Word> pure_words_up_to(int N, int d);

// All prefixes (respectively suffixes) of members, including the empty word
// and the members themselves. Idempotent and extensive.
WordSet closure_forward(const WordSet& B);
WordSet closure_backward(const WordSet& B);

// Canonical (length, lex) order; WordSet already stores it.
const std::vector<Word>& canonical_order(const WordSet& B);

// Closed-form counts.
std::uint64_t card_all_exact(int N, int d);  // (d+1)^N
std::uint64_t card_all_up_to(int N, int d);  // ((d+1)^{N+1} - 1)/d
// Minimum of total_length over every basis-of-words candidate family;
// attained by both the prefix and the suffix set.
std::uint64_t minimal_basis_length(int N, int d);

}  // namespace sigbasis
