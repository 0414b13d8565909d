#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sigbasis/words.hpp"

namespace sigbasis {

// One affine piece of a time-augmented path: over a window of the given
// duration the space coordinates move linearly by space_increment, and the
// time coordinate moves by the duration itself.
struct AffineSegment {
  double duration = 0.0;
  std::vector<double> space_increment;

  int dim() const { return static_cast<int>(space_increment.size()); }
};

// A piecewise-linear path: strictly increasing timestamps plus one point in
// R^d per timestamp. Segment k runs between timestamps k and k+1.
class PiecewisePath {
 public:
  PiecewisePath(std::vector<double> timestamps,
                std::vector<std::vector<double>> points);

  int dim() const { return d_; }
  std::size_t segments() const { return timestamps_.size() - 1; }
  double duration() const { return timestamps_.back() - timestamps_.front(); }
  AffineSegment segment(std::size_t k) const;

  const std::vector<double>& timestamps() const { return timestamps_; }
  const std::vector<std::vector<double>>& points() const { return points_; }

 private:
  int d_;
  std::vector<double> timestamps_;
  std::vector<std::vector<double>> points_;
};

// Counts elementary operations under the convention used throughout: one unit
// per segment-signature component materialized for the initial state, and 2m
// units per Chen update of a length-m word.
struct OpCounter {
  std::uint64_t elementary_ops = 0;
};

// Signature components over a fixed word set, stored in canonical order.
class SigVector {
 public:
  SigVector(WordSet words, std::vector<double> values);

  bool contains(const Word& w) const { return words_.contains(w); }
  double value(const Word& w) const;  // throws IncompleteSignature if absent

  const WordSet& word_set() const { return words_; }
  const std::vector<double>& values() const { return values_; }
  int order() const { return words_.order(); }
  int dim() const { return words_.dim(); }

 private:
  WordSet words_;
  std::vector<double> values_;
};

// Exact signature of a single affine segment: the component of i_1...i_m is
// the product of the time-augmented increments divided by m!.
SigVector sig_affine(const AffineSegment& seg, const WordSet& words);

// One Chen update: the component of w for the concatenated path, given the
// components of the two halves. Requires every prefix of w on the left and
// every suffix on the right; adds 2|w| to the counter when one is supplied.
double chen_combine(const SigVector& left, const SigVector& right,
                    const Word& w, OpCounter* counter = nullptr);

enum class Direction { Forward, Backward };

// A reusable evaluation plan for the signature components of a word set.
// Forward sweeps extend the path one segment at a time at the right end and
// keep partial signatures over the prefix closure of the target set; backward
// sweeps mirror this from the last segment with the suffix closure. The last
// sweep only touches the target words themselves.
class SigPlan {
 public:
  SigPlan(WordSet target, Direction dir);

  const WordSet& target() const { return target_; }
  // The working set carried between segments: the directional closure.
  const WordSet& work() const { return work_; }
  // The set of segment components consulted by Chen updates: every
  // contiguous subword of the working set (closed on both sides).
  const WordSet& eval() const { return eval_; }
  Direction direction() const { return dir_; }

  // Values over target() in canonical order.
  std::vector<double> run(const PiecewisePath& path,
                          OpCounter* counter = nullptr) const;

 private:
  void segment_table(const AffineSegment& seg, std::vector<double>& out) const;

  WordSet target_;
  Direction dir_;
  WordSet work_;
  WordSet eval_;
  // Per work word: the affine-signature value lives at eval index
  // work_in_eval_[i]; Chen split terms for word i are the pairs
  // [pair_offset_[i], pair_offset_[i+1]) of (state index, segment index).
  std::vector<std::uint32_t> work_in_eval_;
  std::vector<std::uint32_t> pair_offset_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_;
  std::vector<std::uint32_t> target_in_work_;
  // drop-last parent and final letter per eval word (except the empty word).
  std::vector<std::uint32_t> eval_parent_;
  std::vector<Letter> eval_last_;
};

std::pair<SigVector, OpCounter> sig_forward(const PiecewisePath& path,
                                            const WordSet& B);
std::pair<SigVector, OpCounter> sig_backward(const PiecewisePath& path,
                                             const WordSet& B);

// The operation count of a K-segment sweep, K >= 2, in closed form:
//   Card(closure) + 2(K-2) * len(closure) + 2 * len(B).
std::uint64_t cost_closed_form(Direction dir, const WordSet& B,
                               std::uint64_t K);

// Slow independent evaluation of every component up to order N by direct
// per-segment polynomial integration of the iterated integrals, with no
// partial-signature reuse across words. Guarded to N <= 5 and <= 50 segments.
SigVector brute_force_sig(const PiecewisePath& path, int N);

// Signature values for a batch of paths, row k holding plan.run(paths[k]).
// Results are identical for every worker count.
std::vector<std::vector<double>> sig_batch(
    const std::vector<PiecewisePath>& paths, const SigPlan& plan, int workers);

}  // namespace sigbasis
