#include "sigbasis/freealg.hpp"

#include <map>
#include <utility>

#include "sigbasis/errors.hpp"

namespace sigbasis {

WordPoly WordPoly::monomial(const Word& w, const Rat& c) {
  WordPoly p(w.dim());
  p.add_term(w, c);
  return p;
}

Rat WordPoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rat(0) : it->second;
}

void WordPoly::add_term(const Word& w, const Rat& c) {
  if (w.dim() != d_) {
    throw InvalidInput("word poly: alphabet mismatch adding '" + w.str() + "'");
  }
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

WordPoly& WordPoly::operator+=(const WordPoly& other) {
  if (other.d_ != d_) throw InvalidInput("word poly: alphabet mismatch in sum");
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

WordPoly& WordPoly::operator*=(const Rat& scale) {
  if (scale == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= scale;
  return *this;
}

std::string WordPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms_) {
    if (!out.empty()) out += " + ";
    if (c == 1) {
      out += w.str();
    } else {
      out += rat_to_string(c) + "*" + w.str();
    }
  }
  return out;
}

namespace {

using IntTerms = std::map<Word, Int>;

// Plain recursion on the last letters. Word lengths at play are tiny (the
// truncation orders are <= 12), so depth and term counts stay desk-scale.
IntTerms shuffle_rec(const Word& w, const Word& v) {
  IntTerms out;
  if (w.empty()) {
    out.emplace(v, 1);
    return out;
  }
  if (v.empty()) {
    out.emplace(w, 1);
    return out;
  }
  const Letter i = w.letter(w.length() - 1);
  const Letter j = v.letter(v.length() - 1);
  for (const auto& [u, c] : shuffle_rec(w.drop_last(), v)) {
    Word appended = concat(u, Word(u.dim(), {i}));
    out[appended] += c;
  }
  for (const auto& [u, c] : shuffle_rec(w, v.drop_last())) {
    Word appended = concat(u, Word(u.dim(), {j}));
    out[appended] += c;
  }
  return out;
}

WordPoly to_poly(int d, const IntTerms& terms) {
  WordPoly p(d);
  for (const auto& [u, c] : terms) p.add_term(u, Rat(c));
  return p;
}

}  // namespace

WordPoly shuffle(const Word& w, const Word& v) {
  if (w.dim() != v.dim()) {
    throw InvalidInput("shuffle: alphabet mismatch ('" + w.str() + "' vs '" +
                       v.str() + "')");
  }
  return to_poly(w.dim(), shuffle_rec(w, v));
}

WordPoly shuffle_poly(const WordPoly& p, const WordPoly& q) {
  if (p.dim() != q.dim()) {
    throw InvalidInput("shuffle_poly: alphabet mismatch");
  }
  WordPoly out(p.dim());
  for (const auto& [w, cw] : p.terms()) {
    for (const auto& [v, cv] : q.terms()) {
      WordPoly base = shuffle(w, v);
      base *= cw * cv;
      out += base;
    }
  }
  return out;
}

WordPoly zero_pad_shuffle(const Word& w, std::size_t k) {
  return shuffle(w, zeros(w.dim(), k));
}

const WordPoly& ShuffleCache::shuffle(const Word& w, const Word& v) {
  if (w.dim() != v.dim()) {
    throw InvalidInput("shuffle: alphabet mismatch ('" + w.str() + "' vs '" +
                       v.str() + "')");
  }
  // The product is symmetric; normalize the key so both orders share an
  // entry. The alphabet dimension is folded in because radix ranks coincide
  // across alphabets.
  const Word* a = &w;
  const Word* b = &v;
  if (b->key() < a->key()) std::swap(a, b);
  const auto key = std::make_pair(
      a->key() | (static_cast<std::uint64_t>(w.dim()) << 56), b->key());
  auto it = memo_.find(key);
  if (it == memo_.end()) {
    it = memo_.emplace(key, sigbasis::shuffle(*a, *b)).first;
  }
  return it->second;
}

WordPoly ShuffleCache::zero_pad_shuffle(const Word& w, std::size_t k) {
  return shuffle(w, zeros(w.dim(), k));
}

}  // namespace sigbasis
