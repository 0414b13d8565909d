#include "sigbasis/basis.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "sigbasis/errors.hpp"

namespace sigbasis {

namespace {

std::map<Word, std::vector<Word>> group_by_pure(const WordSet& B) {
  std::map<Word, std::vector<Word>> groups;
  for (const Word& w : B.words()) groups[w.pure()].push_back(w);
  return groups;  // values inherit canonical order from B
}

CompletionBlock build_block(const Word& gamma, const std::vector<Word>& rows,
                            int N, ShuffleCache& cache) {
  CompletionBlock block;
  block.gamma = gamma;
  block.rows = rows;
  block.cols = enumerate_class(gamma, N, false).words();
  block.entries.assign(rows.size(),
                       std::vector<Int>(block.cols.size(), Int(0)));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Word& w = rows[r];
    const std::size_t k = static_cast<std::size_t>(N) - w.length();
    const WordPoly& padded = cache.shuffle(w, zeros(w.dim(), k));
    for (const auto& [u, c] : padded.terms()) {
      auto it = std::lower_bound(block.cols.begin(), block.cols.end(), u);
      assert(it != block.cols.end() && *it == u);
      // shuffle coefficients are integral by construction
      block.entries[r][static_cast<std::size_t>(it - block.cols.begin())] =
          c.get_num();
    }
  }
  return block;
}

}  // namespace

std::vector<Word> CompletionMatrix::all_rows() const {
  std::vector<Word> out;
  for (const auto& b : blocks) {
    out.insert(out.end(), b.rows.begin(), b.rows.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Word> CompletionMatrix::all_cols() const {
  std::vector<Word> out;
  for (const auto& b : blocks) {
    out.insert(out.end(), b.cols.begin(), b.cols.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Int>> CompletionMatrix::assemble() const {
  const std::vector<Word> rows = all_rows();
  const std::vector<Word> cols = all_cols();
  std::vector<std::vector<Int>> m(rows.size(),
                                  std::vector<Int>(cols.size(), Int(0)));
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows.size(); ++r) {
      const auto row_it = std::lower_bound(rows.begin(), rows.end(), b.rows[r]);
      const std::size_t ri = static_cast<std::size_t>(row_it - rows.begin());
      for (std::size_t c = 0; c < b.cols.size(); ++c) {
        if (b.entries[r][c] == 0) continue;
        const auto col_it =
            std::lower_bound(cols.begin(), cols.end(), b.cols[c]);
        m[ri][static_cast<std::size_t>(col_it - cols.begin())] =
            b.entries[r][c];
      }
    }
  }
  return m;
}

CompletionMatrix completion_matrix(const WordSet& B, int N) {
  if (N < 0 || N > kMaxOrder) {
    throw InvalidInput("completion matrix: order out of range");
  }
  for (const Word& w : B.words()) {
    if (w.length() > static_cast<std::size_t>(N)) {
      throw InvalidInput("completion matrix: word '" + w.str() +
                         "' longer than order " + std::to_string(N));
    }
  }
  CompletionMatrix cm;
  cm.d = B.dim();
  cm.N = N;
  ShuffleCache cache;
  auto groups = group_by_pure(B);
  for (const Word& gamma : pure_words_up_to(N, B.dim())) {
    auto it = groups.find(gamma);
    static const std::vector<Word> kEmpty;
    cm.blocks.push_back(
        build_block(gamma, it == groups.end() ? kEmpty : it->second, N, cache));
  }
  return cm;
}

int integer_rank(const std::vector<std::vector<Int>>& input) {
  std::vector<std::vector<Int>> m = input;
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::size_t rank = 0;
  Int prev(1);
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        // one-step fraction-free update; the division is exact
        Int num = m[rank][col] * m[i][j] - m[i][col] * m[rank][j];
        mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  return static_cast<int>(rank);
}

std::optional<std::vector<Rat>> left_kernel_vector(
    const std::vector<std::vector<Int>>& input) {
  const std::size_t rows = input.size();
  const std::size_t cols = rows == 0 ? 0 : input[0].size();
  // Rational elimination on [M | I]; a row whose M-part vanishes exposes the
  // row combination that produced it.
  std::vector<std::vector<Rat>> a(rows,
                                  std::vector<Rat>(cols + rows, Rat(0)));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = Rat(input[i][j]);
    a[i][cols + i] = 1;
  }
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[r], a[pivot]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][col] == 0) continue;
      Rat factor = a[i][col] / a[r][col];
      for (std::size_t j = col; j < cols + rows; ++j) {
        a[i][j] -= factor * a[r][j];
      }
    }
    ++r;
  }
  if (r == rows) return std::nullopt;
  // row r has zero M-part by construction
  return std::vector<Rat>(a[r].begin() + static_cast<std::ptrdiff_t>(cols),
                          a[r].end());
}

namespace {

ClassReport report_for_block(const CompletionBlock& block, int N) {
  ClassReport rep;
  rep.gamma = block.gamma;
  rep.cardinality = block.rows.size();
  rep.required = binomial(static_cast<unsigned long>(N),
                          static_cast<unsigned long>(block.gamma.length()));
  rep.rank = integer_rank(block.entries);
  rep.ok = Int(static_cast<unsigned long>(rep.cardinality)) == rep.required &&
           Int(rep.rank) == rep.required;
  return rep;
}

std::optional<WordPoly> witness_for_block(const CompletionBlock& block) {
  auto kernel = left_kernel_vector(block.entries);
  if (!kernel) return std::nullopt;
  WordPoly w(block.gamma.dim());
  for (std::size_t i = 0; i < block.rows.size(); ++i) {
    w.add_term(block.rows[i], (*kernel)[i]);
  }
  return w;
}

BasisCertificate certify(const CompletionMatrix& cm) {
  BasisCertificate cert;
  cert.d = cm.d;
  cert.N = cm.N;
  cert.is_basis = true;
  for (const auto& block : cm.blocks) {
    ClassReport rep = report_for_block(block, cm.N);
    cert.total_rank += static_cast<std::size_t>(rep.rank);
    if (!rep.ok) {
      cert.is_basis = false;
      if (!cert.witness && rep.rank < static_cast<int>(rep.cardinality)) {
        cert.witness = witness_for_block(block);
      }
    }
    cert.classes.push_back(std::move(rep));
  }
  return cert;
}

}  // namespace

BasisCertificate is_basis_of_words(const WordSet& B, int N) {
  return certify(completion_matrix(B, N));
}

BasisCertificate is_basis_for_class(const WordSet& B_gamma, int N,
                                    const Word& gamma) {
  if (gamma.zero_count() != 0) {
    throw InvalidInput("class certification requires a pure word");
  }
  for (const Word& w : B_gamma.words()) {
    if (w.pure() != gamma) {
      throw InvalidInput("word '" + w.str() + "' does not belong to the class of '" +
                         gamma.str() + "'");
    }
  }
  CompletionMatrix cm;
  cm.d = B_gamma.dim();
  cm.N = N;
  ShuffleCache cache;
  cm.blocks.push_back(build_block(gamma, B_gamma.words(), N, cache));
  return certify(cm);
}

WordPoly completion_map(const WordPoly& p, int N) {
  WordPoly out(p.dim());
  for (const auto& [w, c] : p.terms()) {
    if (w.length() > static_cast<std::size_t>(N)) {
      throw InvalidInput("completion map: word '" + w.str() +
                         "' longer than order " + std::to_string(N));
    }
    WordPoly padded =
        zero_pad_shuffle(w, static_cast<std::size_t>(N) - w.length());
    padded *= c;
    out += padded;
  }
  return out;
}

namespace {

FilterReport filter_one_class(const std::vector<Word>& members, int N,
                              const Word& gamma) {
  FilterReport rep;
  const unsigned long glen = static_cast<unsigned long>(gamma.length());
  const Int required = binomial(static_cast<unsigned long>(N), glen);
  if (Int(static_cast<unsigned long>(members.size())) != required) {
    rep.pass = false;
    rep.reason = "class '" + gamma.str() + "': cardinality " +
                 std::to_string(members.size()) + " != required " +
                 required.get_str();
    return rep;
  }
  for (int m = static_cast<int>(glen); m < N; ++m) {
    const auto count = static_cast<unsigned long>(std::count_if(
        members.begin(), members.end(), [m](const Word& w) {
          return w.length() <= static_cast<std::size_t>(m);
        }));
    const Int bound = binomial(static_cast<unsigned long>(m), glen);
    if (Int(count) > bound) {
      rep.pass = false;
      rep.reason = "class '" + gamma.str() + "': " + std::to_string(count) +
                   " words of length <= " + std::to_string(m) +
                   " exceeds bound " + bound.get_str();
      return rep;
    }
  }
  rep.pass = true;
  return rep;
}

}  // namespace

FilterReport necessary_filter(const WordSet& B, int N) {
  auto groups = group_by_pure(B);
  for (const Word& gamma : pure_words_up_to(N, B.dim())) {
    static const std::vector<Word> kEmpty;
    auto it = groups.find(gamma);
    FilterReport rep =
        filter_one_class(it == groups.end() ? kEmpty : it->second, N, gamma);
    if (!rep.pass) return rep;
  }
  return FilterReport{true, ""};
}

FilterReport necessary_filter_class(const WordSet& B_gamma, int N,
                                    const Word& gamma) {
  for (const Word& w : B_gamma.words()) {
    if (w.pure() != gamma) {
      return FilterReport{false, "word '" + w.str() +
                                     "' outside the class of '" + gamma.str() +
                                     "'"};
    }
  }
  return filter_one_class(B_gamma.words(), N, gamma);
}

WordSet construct_family(FamilyKind kind, int N, int d,
                         const std::map<Word, int>& pad) {
  const WordSet base = enumerate_words(kind == FamilyKind::PrefixPadded
                                           ? WordKind::PrefixesUpTo
                                           : WordKind::SuffixesUpTo,
                                       N, d);
  for (const auto& [w, m] : pad) {
    if (!base.contains(w)) {
      throw InvalidInput("pad entry for '" + w.str() +
                         "' which is not a base family word");
    }
    if (m < 0 || w.length() + static_cast<std::size_t>(m) >
                     static_cast<std::size_t>(N)) {
      throw InvalidInput("pad of " + std::to_string(m) + " zeros on '" +
                         w.str() + "' violates the length bound " +
                         std::to_string(N));
    }
  }
  std::vector<Word> out;
  out.reserve(base.size());
  for (const Word& w : base.words()) {
    auto it = pad.find(w);
    const std::size_t m = it == pad.end() ? 0 : static_cast<std::size_t>(it->second);
    Word padded = kind == FamilyKind::PrefixPadded ? concat(w, zeros(d, m))
                                                   : concat(zeros(d, m), w);
    out.push_back(std::move(padded));
  }
  WordSet family(d, N, std::move(out));
#ifndef NDEBUG
  if (!is_basis_of_words(family, N).is_basis) {
    throw std::logic_error("constructed family failed certification");
  }
#endif
  return family;
}

std::vector<WordSet> enumerate_bases(int N, int d, const Word& gamma) {
  const WordSet candidates = enumerate_class(gamma, N, true);
  if (candidates.size() > 20) {
    throw InvalidInput("class has " + std::to_string(candidates.size()) +
                       " candidate words; enumeration capped at 20");
  }
  const Int required_int =
      binomial(static_cast<unsigned long>(N),
               static_cast<unsigned long>(gamma.length()));
  const std::size_t required = required_int.get_ui();
  std::vector<WordSet> found;
  if (required == 0 || required > candidates.size()) return found;

  // Only subsets of the exact required cardinality can certify; everything
  // else fails on the counting condition.
  const std::size_t n = candidates.size();
  std::vector<std::size_t> idx(required);
  for (std::size_t i = 0; i < required; ++i) idx[i] = i;
  while (true) {
    std::vector<Word> subset;
    subset.reserve(required);
    for (std::size_t i : idx) subset.push_back(candidates.words()[i]);
    WordSet ws(d, N, std::move(subset));
    if (is_basis_for_class(ws, N, gamma).is_basis) found.push_back(std::move(ws));

    std::size_t i = required;
    while (i > 0 && idx[i - 1] == n - required + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < required; ++j) idx[j] = idx[j - 1] + 1;
  }
  return found;
}

}  // namespace sigbasis
