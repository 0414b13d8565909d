#include "sigbasis/signature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "sigbasis/errors.hpp"

namespace sigbasis {

namespace {

// Reciprocals of the admissible word lengths, so the per-segment component
// table multiplies instead of divides in its hot loop.
constexpr std::array<double, kMaxOrder + 1> make_inverse_lengths() {
  std::array<double, kMaxOrder + 1> inv{};
  for (int m = 1; m <= kMaxOrder; ++m) inv[static_cast<std::size_t>(m)] = 1.0 / m;
  return inv;
}
constexpr std::array<double, kMaxOrder + 1> kInvLen = make_inverse_lengths();

double augmented_increment(const AffineSegment& seg, Letter letter) {
  return letter == 0 ? seg.duration
                     : seg.space_increment[static_cast<std::size_t>(letter) - 1];
}

void validate_segment(const AffineSegment& seg, int expected_dim) {
  if (seg.dim() != expected_dim) {
    throw InvalidInput("segment dimension " + std::to_string(seg.dim()) +
                       " does not match word dimension " +
                       std::to_string(expected_dim));
  }
  if (!(seg.duration > 0.0) || !std::isfinite(seg.duration)) {
    throw InvalidInput("segment duration must be positive and finite");
  }
  for (double v : seg.space_increment) {
    if (!std::isfinite(v)) throw InvalidInput("non-finite segment increment");
  }
}

}  // namespace

PiecewisePath::PiecewisePath(std::vector<double> timestamps,
                             std::vector<std::vector<double>> points)
    : timestamps_(std::move(timestamps)), points_(std::move(points)) {
  if (timestamps_.size() < 2) {
    throw InvalidInput("a path needs at least two sample points");
  }
  if (points_.size() != timestamps_.size()) {
    throw InvalidInput("path has " + std::to_string(timestamps_.size()) +
                       " timestamps but " + std::to_string(points_.size()) +
                       " points");
  }
  d_ = static_cast<int>(points_.front().size());
  if (d_ < 1 || d_ > kMaxDim) {
    throw InvalidInput("path dimension must be between 1 and " +
                       std::to_string(kMaxDim));
  }
  for (std::size_t k = 0; k < timestamps_.size(); ++k) {
    if (!std::isfinite(timestamps_[k])) {
      throw InvalidInput("non-finite timestamp");
    }
    if (k > 0 && !(timestamps_[k] > timestamps_[k - 1])) {
      throw InvalidInput("non-increasing timestamps at sample " +
                         std::to_string(k));
    }
    if (points_[k].size() != static_cast<std::size_t>(d_)) {
      throw InvalidInput("inconsistent point dimension at sample " +
                         std::to_string(k));
    }
    for (double v : points_[k]) {
      if (!std::isfinite(v)) throw InvalidInput("non-finite path value");
    }
  }
}

AffineSegment PiecewisePath::segment(std::size_t k) const {
  AffineSegment seg;
  seg.duration = timestamps_[k + 1] - timestamps_[k];
  seg.space_increment.resize(static_cast<std::size_t>(d_));
  for (int i = 0; i < d_; ++i) {
    seg.space_increment[static_cast<std::size_t>(i)] =
        points_[k + 1][static_cast<std::size_t>(i)] -
        points_[k][static_cast<std::size_t>(i)];
  }
  return seg;
}

SigVector::SigVector(WordSet words, std::vector<double> values)
    : words_(std::move(words)), values_(std::move(values)) {
  if (words_.size() != values_.size()) {
    throw std::logic_error("signature vector size mismatch");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DataError("non-finite signature component");
  }
  const std::ptrdiff_t empty_idx = words_.index_of(Word(words_.dim(), {}));
  if (empty_idx >= 0 &&
      values_[static_cast<std::size_t>(empty_idx)] != 1.0) {
    throw DataError("the empty-word component must equal one");
  }
}

double SigVector::value(const Word& w) const {
  const std::ptrdiff_t idx = words_.index_of(w);
  if (idx < 0) {
    throw IncompleteSignature("missing signature component for word '" +
                              w.str() + "'");
  }
  return values_[static_cast<std::size_t>(idx)];
}

SigVector sig_affine(const AffineSegment& seg, const WordSet& words) {
  validate_segment(seg, words.dim());
  std::vector<double> values;
  values.reserve(words.size());
  for (const Word& w : words.words()) {
    double v = 1.0;
    for (std::size_t i = 0; i < w.length(); ++i) {
      v *= augmented_increment(seg, w.letter(i)) * kInvLen[i + 1];
    }
    values.push_back(v);
  }
  return SigVector(words, std::move(values));
}

double chen_combine(const SigVector& left, const SigVector& right,
                    const Word& w, OpCounter* counter) {
  if (left.dim() != w.dim() || right.dim() != w.dim()) {
    throw InvalidInput("chen combine: dimension mismatch");
  }
  const std::size_t m = w.length();
  double acc = 0.0;
  for (std::size_t j = 0; j <= m; ++j) {
    acc += left.value(w.prefix(j)) * right.value(w.suffix_from(j));
  }
  if (counter != nullptr) counter->elementary_ops += 2 * m;
  return acc;
}

SigPlan::SigPlan(WordSet target, Direction dir)
    : target_(std::move(target)), dir_(dir) {
  if (target_.size() == 0) {
    throw InvalidInput("signature plan needs a non-empty word set");
  }
  work_ = dir_ == Direction::Forward ? closure_forward(target_)
                                     : closure_backward(target_);
  eval_ = dir_ == Direction::Forward ? closure_backward(work_)
                                     : closure_forward(work_);

  const auto eval_index = [this](const Word& w) {
    const std::ptrdiff_t idx = eval_.index_of(w);
    if (idx < 0) throw std::logic_error("segment table set is not closed");
    return static_cast<std::uint32_t>(idx);
  };
  const auto work_index = [this](const Word& w) {
    const std::ptrdiff_t idx = work_.index_of(w);
    if (idx < 0) throw std::logic_error("working set is not closed");
    return static_cast<std::uint32_t>(idx);
  };

  eval_parent_.resize(eval_.size());
  eval_last_.resize(eval_.size());
  for (std::size_t e = 0; e < eval_.size(); ++e) {
    const Word& w = eval_.words()[e];
    if (w.empty()) continue;
    eval_parent_[e] = eval_index(w.drop_last());
    eval_last_[e] = w.letter(w.length() - 1);
  }

  pair_offset_.reserve(work_.size() + 1);
  pair_offset_.push_back(0);
  for (const Word& w : work_.words()) {
    const std::size_t m = w.length();
    for (std::size_t j = 0; j <= m; ++j) {
      const Word pre = w.prefix(j);
      const Word suf = w.suffix_from(j);
      if (dir_ == Direction::Forward) {
        pairs_.emplace_back(work_index(pre), eval_index(suf));
      } else {
        pairs_.emplace_back(work_index(suf), eval_index(pre));
      }
    }
    pair_offset_.push_back(static_cast<std::uint32_t>(pairs_.size()));
  }

  work_in_eval_.reserve(work_.size());
  for (const Word& w : work_.words()) work_in_eval_.push_back(eval_index(w));
  target_in_work_.reserve(target_.size());
  for (const Word& w : target_.words()) target_in_work_.push_back(work_index(w));
}

void SigPlan::segment_table(const AffineSegment& seg,
                            std::vector<double>& out) const {
  // Canonical order puts the empty word first and every drop-last parent
  // before its child, so one ascending sweep fills the table.
  out[0] = 1.0;
  for (std::size_t e = 1; e < eval_.size(); ++e) {
    out[e] = out[eval_parent_[e]] *
             augmented_increment(seg, eval_last_[e]) *
             kInvLen[eval_.words()[e].length()];
  }
}

std::vector<double> SigPlan::run(const PiecewisePath& path,
                                 OpCounter* counter) const {
  if (path.dim() != target_.dim()) {
    throw InvalidInput("path dimension " + std::to_string(path.dim()) +
                       " does not match word dimension " +
                       std::to_string(target_.dim()));
  }
  const std::size_t K = path.segments();
  const bool forward = dir_ == Direction::Forward;
  std::vector<double> table(eval_.size());
  std::vector<double> state(work_.size());
  std::uint64_t ops = 0;

  for (std::size_t step = 0; step < K; ++step) {
    const std::size_t k = forward ? step : K - 1 - step;
    segment_table(path.segment(k), table);
    if (step == 0) {
      // the first segment seeds the working state with its own signature,
      // one component at a time
      for (std::size_t i = 0; i < work_.size(); ++i) {
        state[i] = table[work_in_eval_[i]];
        ops += 1;
      }
      continue;
    }
    const bool last = step + 1 == K;
    // In-place Chen sweep in descending canonical order: every split term
    // except the word itself is strictly shorter, hence not yet overwritten.
    if (!last) {
      for (std::size_t i = work_.size(); i-- > 0;) {
        double acc = 0.0;
        for (std::uint32_t p = pair_offset_[i]; p < pair_offset_[i + 1]; ++p) {
          acc += state[pairs_[p].first] * table[pairs_[p].second];
        }
        state[i] = acc;
        ops += 2 * work_.words()[i].length();
      }
    } else {
      // the final sweep refreshes only the requested words
      for (std::size_t t = target_.size(); t-- > 0;) {
        const std::size_t i = target_in_work_[t];
        double acc = 0.0;
        for (std::uint32_t p = pair_offset_[i]; p < pair_offset_[i + 1]; ++p) {
          acc += state[pairs_[p].first] * table[pairs_[p].second];
        }
        state[i] = acc;
        ops += 2 * work_.words()[i].length();
      }
    }
  }

  if (counter != nullptr) counter->elementary_ops += ops;
  std::vector<double> out(target_.size());
  for (std::size_t t = 0; t < target_.size(); ++t) {
    out[t] = state[target_in_work_[t]];
  }
  return out;
}

std::pair<SigVector, OpCounter> sig_forward(const PiecewisePath& path,
                                            const WordSet& B) {
  SigPlan plan(B, Direction::Forward);
  OpCounter counter;
  std::vector<double> values = plan.run(path, &counter);
  return {SigVector(B, std::move(values)), counter};
}

std::pair<SigVector, OpCounter> sig_backward(const PiecewisePath& path,
                                             const WordSet& B) {
  SigPlan plan(B, Direction::Backward);
  OpCounter counter;
  std::vector<double> values = plan.run(path, &counter);
  return {SigVector(B, std::move(values)), counter};
}

std::uint64_t cost_closed_form(Direction dir, const WordSet& B,
                               std::uint64_t K) {
  if (K < 2) {
    throw InvalidInput("the closed-form cost needs at least two segments");
  }
  const WordSet closure =
      dir == Direction::Forward ? closure_forward(B) : closure_backward(B);
  return closure.size() + 2 * (K - 2) * closure.total_length() +
         2 * B.total_length();
}

SigVector brute_force_sig(const PiecewisePath& path, int N) {
  if (N < 0 || N > 5) {
    throw InvalidInput("direct evaluation is guarded to order 5");
  }
  if (path.segments() > 50) {
    throw InvalidInput("direct evaluation is guarded to 50 segments");
  }
  const WordSet words = enumerate_words(WordKind::AllUpTo, N, path.dim());
  const std::size_t K = path.segments();

  std::vector<AffineSegment> segs;
  segs.reserve(K);
  for (std::size_t k = 0; k < K; ++k) segs.push_back(path.segment(k));

  // polys[w][k] holds the component of word w on segment k as a polynomial
  // in the local time s in [0, duration_k], built level by level: appending
  // letter i integrates the parent component against that coordinate.
  std::vector<std::vector<std::vector<double>>> polys(words.size());
  std::vector<double> final_values(words.size());
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    const Word& w = words.words()[wi];
    polys[wi].assign(K, {});
    if (w.empty()) {
      for (std::size_t k = 0; k < K; ++k) polys[wi][k] = {1.0};
      final_values[wi] = 1.0;
      continue;
    }
    const std::ptrdiff_t parent = words.index_of(w.drop_last());
    const Letter last = w.letter(w.length() - 1);
    double running = 0.0;  // component value at the segment start
    for (std::size_t k = 0; k < K; ++k) {
      const double slope = last == 0 ? 1.0
                                     : segs[k].space_increment
                                           [static_cast<std::size_t>(last) - 1] /
                                           segs[k].duration;
      const std::vector<double>& src =
          polys[static_cast<std::size_t>(parent)][k];
      std::vector<double> dst(src.size() + 1, 0.0);
      dst[0] = running;
      for (std::size_t j = 0; j < src.size(); ++j) {
        dst[j + 1] = slope * src[j] / static_cast<double>(j + 1);
      }
      double at_end = 0.0;
      double power = 1.0;
      for (std::size_t j = 0; j < dst.size(); ++j) {
        at_end += dst[j] * power;
        power *= segs[k].duration;
      }
      polys[wi][k] = std::move(dst);
      running = at_end;
    }
    final_values[wi] = running;
  }
  return SigVector(words, std::move(final_values));
}

std::vector<std::vector<double>> sig_batch(
    const std::vector<PiecewisePath>& paths, const SigPlan& plan,
    int workers) {
  if (workers < 1) throw InvalidInput("worker count must be positive");
  std::vector<std::vector<double>> results(paths.size());
  const std::size_t n = paths.size();
  const std::size_t w =
      std::min<std::size_t>(static_cast<std::size_t>(workers), std::max<std::size_t>(n, 1));
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&](std::size_t begin, std::size_t end) {
    try {
      for (std::size_t i = begin; i < end; ++i) {
        results[i] = plan.run(paths[i]);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (w <= 1) {
    body(0, n);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(w);
    for (std::size_t t = 0; t < w; ++t) {
      const std::size_t begin = n * t / w;
      const std::size_t end = n * (t + 1) / w;
      threads.emplace_back(body, begin, end);
    }
    for (auto& th : threads) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace sigbasis
