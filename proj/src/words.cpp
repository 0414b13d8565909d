#include "sigbasis/words.hpp"

#include <algorithm>
#include <cstddef>

#include "sigbasis/errors.hpp"

namespace sigbasis {

namespace {

void check_dim(int d) {
  if (d < 1 || d > kMaxDim) {
    throw InvalidInput("alphabet dimension must be in [1, " +
                       std::to_string(kMaxDim) + "], got " + std::to_string(d));
  }
}

void check_order(int n) {
  if (n < 0 || n > kMaxOrder) {
    throw InvalidInput("truncation order must be in [0, " +
                       std::to_string(kMaxOrder) + "], got " +
                       std::to_string(n));
  }
}

std::uint64_t pow_u64(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

Word::Word(int d, std::vector<Letter> letters)
    : d_(d), letters_(std::move(letters)) {
  check_dim(d);
  if (letters_.size() > static_cast<std::size_t>(kMaxOrder)) {
    throw InvalidInput("word longer than the supported maximum length " +
                       std::to_string(kMaxOrder));
  }
  for (Letter l : letters_) {
    if (l > d_) {
      throw InvalidInput("letter " + std::to_string(int(l)) +
                         " outside alphabet {0.." + std::to_string(d_) + "}");
    }
  }
}

Word Word::parse(int d, const std::string& text) {
  check_dim(d);
  if (text == "e") return Word(d, {});
  std::vector<Letter> ls;
  ls.reserve(text.size());
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw InvalidInput("word '" + text + "' contains non-digit character");
    }
    ls.push_back(static_cast<Letter>(c - '0'));
  }
  return Word(d, std::move(ls));
}

std::string Word::str() const {
  if (letters_.empty()) return "e";
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) s.push_back(static_cast<char>('0' + l));
  return s;
}

std::uint64_t Word::key() const {
  const std::uint64_t radix = static_cast<std::uint64_t>(d_) + 1;
  std::uint64_t offset = 0;  // number of strictly shorter words
  std::uint64_t power = 1;
  for (std::size_t k = 0; k < letters_.size(); ++k) {
    offset += power;
    power *= radix;
  }
  std::uint64_t rank = 0;
  for (Letter l : letters_) rank = rank * radix + l;
  return offset + rank;
}

Word Word::prefix(std::size_t len) const {
  return Word(d_, std::vector<Letter>(letters_.begin(), letters_.begin() + len));
}

Word Word::suffix_from(std::size_t pos) const {
  return Word(d_, std::vector<Letter>(letters_.begin() + pos, letters_.end()));
}

Word Word::drop_last() const { return prefix(letters_.size() - 1); }
Word Word::drop_first() const { return suffix_from(1); }

Word Word::pure() const {
  std::vector<Letter> ls;
  for (Letter l : letters_) {
    if (l != 0) ls.push_back(l);
  }
  return Word(d_, std::move(ls));
}

std::size_t Word::zero_count() const {
  return static_cast<std::size_t>(
      std::count(letters_.begin(), letters_.end(), Letter{0}));
}

bool operator<(const Word& a, const Word& b) {
  if (a.d_ != b.d_) return a.d_ < b.d_;
  if (a.letters_.size() != b.letters_.size()) {
    return a.letters_.size() < b.letters_.size();
  }
  return a.letters_ < b.letters_;
}

Word concat(const Word& w, const Word& v) {
  if (w.dim() != v.dim()) {
    throw InvalidInput("concat: alphabet mismatch (d=" +
                       std::to_string(w.dim()) + " vs d=" +
                       std::to_string(v.dim()) + ")");
  }
  std::vector<Letter> ls = w.letters();
  ls.insert(ls.end(), v.letters().begin(), v.letters().end());
  return Word(w.dim(), std::move(ls));
}

Word zeros(int d, std::size_t k) {
  return Word(d, std::vector<Letter>(k, Letter{0}));
}

WordSet::WordSet(int d, int order, std::vector<Word> words)
    : d_(d), order_(order), words_(std::move(words)) {
  check_dim(d);
  check_order(order);
  for (const Word& w : words_) {
    if (w.dim() != d_) {
      throw InvalidInput("word set: word '" + w.str() +
                         "' has mismatched alphabet dimension");
    }
    if (w.length() > static_cast<std::size_t>(order_)) {
      throw InvalidInput("word set: word '" + w.str() +
                         "' longer than truncation order " +
                         std::to_string(order_));
    }
  }
  std::sort(words_.begin(), words_.end());
  for (std::size_t i = 1; i < words_.size(); ++i) {
    if (words_[i] == words_[i - 1]) {
      throw InvalidInput("word set: duplicate word '" + words_[i].str() + "'");
    }
  }
}

std::ptrdiff_t WordSet::index_of(const Word& w) const {
  auto it = std::lower_bound(words_.begin(), words_.end(), w);
  if (it != words_.end() && *it == w) return it - words_.begin();
  return -1;
}

std::uint64_t WordSet::total_length() const {
  std::uint64_t total = 0;
  for (const Word& w : words_) total += w.length();
  return total;
}

namespace {

// Appends every word of length exactly n over {0..d} in lexicographic order.
void append_all_exact(int n, int d, std::vector<Word>& out) {
  std::vector<Letter> current(static_cast<std::size_t>(n), Letter{0});
  while (true) {
    out.emplace_back(d, current);
    int i = n - 1;
    while (i >= 0 && current[i] == d) {
      current[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++current[i];
  }
}

}  // namespace

WordSet enumerate_words(WordKind kind, int N, int d) {
  check_dim(d);
  check_order(N);
  std::vector<Word> out;
  switch (kind) {
    case WordKind::AllExact:
      append_all_exact(N, d, out);
      break;
    case WordKind::AllUpTo:
      for (int n = 0; n <= N; ++n) append_all_exact(n, d, out);
      break;
    case WordKind::PrefixesUpTo:
    case WordKind::SuffixesUpTo: {
      std::vector<Word> all;
      for (int n = 0; n <= N; ++n) append_all_exact(n, d, all);
      for (Word& w : all) {
        const bool keep =
            w.empty() || (kind == WordKind::PrefixesUpTo ? !w.ends_with_zero()
                                                         : !w.starts_with_zero());
        if (keep) out.push_back(std::move(w));
      }
      break;
    }
  }
  return WordSet(d, N, std::move(out));
}

namespace {

// Words of length exactly n whose pure part is gamma: choose the positions of
// gamma's letters among n slots, fill the rest with 0.
void append_class_exact(const Word& gamma, int n, std::vector<Word>& out) {
  const int k = static_cast<int>(gamma.length());
  if (k > n) return;
  std::vector<int> pos(k);
  for (int i = 0; i < k; ++i) pos[i] = i;
  while (true) {
    std::vector<Letter> ls(static_cast<std::size_t>(n), Letter{0});
    for (int i = 0; i < k; ++i) ls[pos[i]] = gamma.letter(i);
    out.emplace_back(gamma.dim(), std::move(ls));
    // next combination
    int i = k - 1;
    while (i >= 0 && pos[i] == n - k + i) --i;
    if (i < 0) break;
    ++pos[i];
    for (int j = i + 1; j < k; ++j) pos[j] = pos[j - 1] + 1;
  }
}

}  // namespace

WordSet enumerate_class(const Word& gamma, int N, bool up_to) {
  check_order(N);
  if (gamma.zero_count() != 0) {
    throw InvalidInput("class enumeration requires a pure word, got '" +
                       gamma.str() + "'");
  }
  if (gamma.length() > static_cast<std::size_t>(N)) {
    throw InvalidInput("pure word '" + gamma.str() +
                       "' longer than the order " + std::to_string(N));
  }
  std::vector<Word> out;
  if (up_to) {
    for (int n = static_cast<int>(gamma.length()); n <= N; ++n) {
      append_class_exact(gamma, n, out);
    }
  } else {
    append_class_exact(gamma, N, out);
  }
  return WordSet(gamma.dim(), N, std::move(out));
}

std::vector<Word> pure_words_up_to(int N, int d) {
  check_dim(d);
  check_order(N);
  std::vector<Word> out;
  out.emplace_back(d, std::vector<Letter>{});
  std::vector<Letter> current;
  for (int n = 1; n <= N; ++n) {
    current.assign(static_cast<std::size_t>(n), Letter{1});
    while (true) {
      out.emplace_back(d, current);
      int i = n - 1;
      while (i >= 0 && current[i] == d) {
        current[i] = 1;
        --i;
      }
      if (i < 0) break;
      ++current[i];
    }
  }
  return out;
}

namespace {

WordSet closure(const WordSet& B, bool forward) {
  std::vector<Word> out;
  for (const Word& w : B.words()) {
    for (std::size_t len = 0; len <= w.length(); ++len) {
      out.push_back(forward ? w.prefix(len) : w.suffix_from(w.length() - len));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return WordSet(B.dim(), B.order(), std::move(out));
}

}  // namespace

WordSet closure_forward(const WordSet& B) { return closure(B, true); }
WordSet closure_backward(const WordSet& B) { return closure(B, false); }

const std::vector<Word>& canonical_order(const WordSet& B) { return B.words(); }

std::uint64_t card_all_exact(int N, int d) {
  return pow_u64(static_cast<std::uint64_t>(d) + 1, static_cast<unsigned>(N));
}

std::uint64_t card_all_up_to(int N, int d) {
  return (pow_u64(static_cast<std::uint64_t>(d) + 1,
                  static_cast<unsigned>(N) + 1) -
          1) /
         static_cast<std::uint64_t>(d);
}

std::uint64_t minimal_basis_length(int N, int d) {
  const std::uint64_t p = card_all_exact(N, d);  // (d+1)^N
  return (static_cast<std::uint64_t>(N) * d * p - p + 1) /
         static_cast<std::uint64_t>(d);
}

}  // namespace sigbasis
