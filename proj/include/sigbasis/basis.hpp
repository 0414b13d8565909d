#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sigbasis/freealg.hpp"
#include "sigbasis/rationals.hpp"
#include "sigbasis/words.hpp"

namespace sigbasis {

// The completion map phi sends a word w of length <= N to the zero-padded
// shuffle w sh 0_{N-|w|}, a combination of length-N words. phi preserves the
// pure part of a word, so over the canonical order the matrix of phi is block
// diagonal, one block per pure word gamma: rows are the candidate words whose
// pure part is gamma, columns the length-N words with pure part gamma.
struct CompletionBlock {
  Word gamma;
  std::vector<Word> rows;  // candidate words, canonical order
  std::vector<Word> cols;  // length-N class members, canonical order
  std::vector<std::vector<Int>> entries;  // exact integers, rows x cols
};

struct CompletionMatrix {
  int d = 1;
  int N = 0;
  std::vector<CompletionBlock> blocks;  // ordered by gamma, canonical

  // Dense assembly across blocks: rows = all candidate words in canonical
  // order, columns = every length-N word in canonical order.
  std::vector<Word> all_rows() const;
  std::vector<Word> all_cols() const;
  std::vector<std::vector<Int>> assemble() const;
};

CompletionMatrix completion_matrix(const WordSet& B, int N);

// Row rank over the integers, by fraction-free (division-exact) elimination.
// Pivots are the first nonzero entries in canonical column order; no
// magnitude heuristics, so runs are bit-for-bit deterministic.
int integer_rank(const std::vector<std::vector<Int>>& m);

// A nonzero rational c with c^T m = 0, when the rows are dependent.
std::optional<std::vector<Rat>> left_kernel_vector(
    const std::vector<std::vector<Int>>& m);

struct ClassReport {
  Word gamma;
  std::size_t cardinality = 0;
  Int required;  // binom(N, |gamma|)
  int rank = 0;
  bool ok = false;  // cardinality == required == rank
};

struct BasisCertificate {
  bool is_basis = false;
  int d = 1;
  int N = 0;
  std::size_t total_rank = 0;
  std::vector<ClassReport> classes;
  // For a failed verdict with linearly dependent rows: an exact combination
  // of candidate words that phi sends to zero.
  std::optional<WordPoly> witness;
};

// Is (w sh 0_{N-|w|})_{w in B} a basis of the span of all length-N words?
// Exact, computed blockwise per pure word.
BasisCertificate is_basis_of_words(const WordSet& B, int N);

// Restricted variant: every member of B_gamma must have pure part gamma; the
// verdict concerns the span of the length-N class of gamma only.
BasisCertificate is_basis_for_class(const WordSet& B_gamma, int N,
                                    const Word& gamma);

// phi extended linearly: sum c_w (w sh 0_{N-|w|}).
WordPoly completion_map(const WordPoly& p, int N);

struct FilterReport {
  bool pass = false;
  std::string reason;  // names the offending pure word / length bound
};

// Counting conditions every basis satisfies (cardinality per pure-word class
// equals binom(N, |gamma|) and partial counts respect binom(m, |gamma|)).
// Passing does NOT imply being a basis.
FilterReport necessary_filter(const WordSet& B, int N);
FilterReport necessary_filter_class(const WordSet& B_gamma, int N,
                                    const Word& gamma);

enum class FamilyKind {
  PrefixPadded,  // base words end with a nonzero letter; zeros appended
  SuffixPadded,  // base words start with a nonzero letter; zeros prepended
};

// The guaranteed basis constructions: take every word w of the prefix
// (respectively suffix) family up to order N and pad it with pad(w) zeros on
// the zero-free side, subject to |w| + pad(w) <= N. Defaults to no padding.
// Debug builds re-certify the result.
WordSet construct_family(FamilyKind kind, int N, int d,
                         const std::map<Word, int>& pad = {});

// Every subset of the candidate class words that certifies as a basis for the
// length-N class of gamma. Guard: at most 20 candidate words.
std::vector<WordSet> enumerate_bases(int N, int d, const Word& gamma);

}  // namespace sigbasis
