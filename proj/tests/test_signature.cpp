#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sigbasis/basis.hpp"
#include "sigbasis/errors.hpp"
#include "sigbasis/freealg.hpp"
#include "sigbasis/signature.hpp"

using namespace sigbasis;

namespace {

Word W(int d, const std::string& s) { return Word::parse(d, s); }

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

PiecewisePath random_path(std::mt19937_64& gen, int d, std::size_t K) {
  std::uniform_real_distribution<double> dur(0.1, 1.1);
  std::uniform_real_distribution<double> inc(-1.0, 1.0);
  std::vector<double> ts{0.0};
  std::vector<std::vector<double>> pts;
  std::vector<double> p(static_cast<std::size_t>(d), 0.0);
  pts.push_back(p);
  for (std::size_t k = 0; k < K; ++k) {
    ts.push_back(ts.back() + dur(gen));
    for (double& x : p) x += inc(gen);
    pts.push_back(p);
  }
  return PiecewisePath(std::move(ts), std::move(pts));
}

AffineSegment seg1(double duration, double dx) {
  return AffineSegment{duration, {dx}};
}

}  // namespace

TEST_CASE("affine segment components follow the factorial product formula") {
  const double T = 1.7;
  std::vector<Word> zero_words;
  for (std::size_t k = 0; k <= 5; ++k) zero_words.push_back(zeros(1, k));
  SigVector s = sig_affine(AffineSegment{T, {0.25}}, WordSet(1, 5, zero_words));
  double expect = 1.0;
  for (std::size_t k = 0; k <= 5; ++k) {
    if (k > 0) expect *= T / static_cast<double>(k);
    CHECK(close(s.value(zeros(1, k)), expect, 1e-13));
  }

  SigVector a = sig_affine(seg1(1.0, 2.0), WordSet(1, 2, {W(1, "01")}));
  CHECK(a.value(W(1, "01")) == 1.0);

  SigVector b = sig_affine(seg1(1.0, 3.0), WordSet(1, 2, {W(1, "11")}));
  CHECK(b.value(W(1, "11")) == 4.5);
  Eigen::VectorXd dx(1);
  dx << 3.0;
  CHECK(std::abs(b.value(W(1, "11")) -
                 oracles::riemann_affine(W(1, "11"), 1.0, dx, 10000)) < 1e-3);

  // components only depend on the multiset of letters through the product
  AffineSegment two{0.8, {1.5, -2.5}};
  SigVector c = sig_affine(two, WordSet(2, 2, {W(2, "12"), W(2, "21")}));
  CHECK(c.value(W(2, "12")) == c.value(W(2, "21")));
  CHECK(close(c.value(W(2, "12")), 0.5 * 1.5 * -2.5, 1e-14));

  CHECK_THROWS_AS(sig_affine(two, WordSet(1, 1, {W(1, "1")})), InvalidInput);
  CHECK_THROWS_AS(sig_affine(seg1(0.0, 1.0), WordSet(1, 1, {W(1, "1")})),
                  InvalidInput);
}

TEST_CASE("chen combination of two halves") {
  const double a = 1.3;
  const WordSet words = enumerate_words(WordKind::AllUpTo, 2, 1);
  SigVector half = sig_affine(seg1(1.0, a), words);
  SigVector doubled = sig_affine(AffineSegment{2.0, {2.0 * a}}, words);

  OpCounter counter;
  CHECK(chen_combine(half, half, W(1, "e"), &counter) == 1.0);
  CHECK(counter.elementary_ops == 0);
  for (const Word& w : words.words()) {
    CHECK(close(chen_combine(half, half, w), doubled.value(w), 1e-14));
  }
  chen_combine(half, half, W(1, "11"), &counter);
  CHECK(counter.elementary_ops == 4);

  // two unit segments with increments 1 then 0
  SigVector left = sig_affine(seg1(1.0, 1.0), words);
  SigVector right = sig_affine(seg1(1.0, 0.0), words);
  CHECK(close(chen_combine(left, right, W(1, "01")), 0.5, 1e-14));

  SigVector thin =
      sig_affine(seg1(1.0, 1.0), WordSet(1, 2, {W(1, "e"), W(1, "1")}));
  CHECK_THROWS_AS(chen_combine(thin, right, W(1, "01")), IncompleteSignature);
}

TEST_CASE("chen combination of computed sub-path signatures") {
  std::mt19937_64 gen(99);
  const WordSet words = enumerate_words(WordKind::AllUpTo, 3, 1);
  PiecewisePath path = random_path(gen, 1, 6);
  auto [full, full_ops] = sig_forward(path, words);

  std::vector<double> lt(path.timestamps().begin(),
                         path.timestamps().begin() + 4);
  std::vector<std::vector<double>> lp(path.points().begin(),
                                      path.points().begin() + 4);
  std::vector<double> rt(path.timestamps().begin() + 3,
                         path.timestamps().end());
  std::vector<std::vector<double>> rp(path.points().begin() + 3,
                                      path.points().end());
  SigVector left = sig_forward(PiecewisePath(lt, lp), words).first;
  SigVector right = sig_forward(PiecewisePath(rt, rp), words).first;
  for (const Word& w : words.words()) {
    CHECK(close(chen_combine(left, right, w), full.value(w), 1e-12));
  }
}

TEST_CASE("forward and backward sweeps match the direct evaluation") {
  std::mt19937_64 gen(41);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + static_cast<int>(gen() % 2);
    const int N = 1 + static_cast<int>(gen() % 4);
    const std::size_t K = 1 + gen() % 10;
    PiecewisePath path = random_path(gen, d, K);
    const WordSet words = enumerate_words(WordKind::AllUpTo, N, d);

    SigVector direct = brute_force_sig(path, N);
    auto [fwd, fwd_ops] = sig_forward(path, words);
    auto [bwd, bwd_ops] = sig_backward(path, words);
    for (const Word& w : words.words()) {
      CHECK(close(fwd.value(w), direct.value(w), 1e-10));
      CHECK(close(fwd.value(w), bwd.value(w), 1e-12));
    }
  }
}

TEST_CASE("direct evaluation worked examples and guards") {
  PiecewisePath two({0.0, 1.0, 2.0}, {{0.0}, {1.0}, {1.0}});
  SigVector s = brute_force_sig(two, 2);
  CHECK(close(s.value(W(1, "01")), 0.5, 1e-12));
  CHECK(s.value(W(1, "e")) == 1.0);

  // single affine piece: the factorial formula is the ground truth
  const double a = -0.7;
  PiecewisePath line({0.0, 1.0}, {{0.0}, {a}});
  SigVector l = brute_force_sig(line, 3);
  SigVector ref =
      sig_affine(seg1(1.0, a), enumerate_words(WordKind::AllUpTo, 3, 1));
  for (const Word& w : ref.word_set().words()) {
    CHECK(close(l.value(w), ref.value(w), 1e-12));
  }

  CHECK_THROWS_AS(brute_force_sig(two, 6), InvalidInput);
  std::vector<double> ts;
  std::vector<std::vector<double>> ps;
  for (int k = 0; k <= 51; ++k) {
    ts.push_back(k);
    ps.push_back({static_cast<double>(k % 3)});
  }
  CHECK_THROWS_AS(brute_force_sig(PiecewisePath(ts, ps), 2), InvalidInput);
}

TEST_CASE("single-segment sweeps count one unit per closure component") {
  PiecewisePath one({0.0, 0.9}, {{0.0}, {0.4}});
  WordSet b(1, 2, {W(1, "11")});
  auto [fs, fo] = sig_forward(one, b);
  CHECK(fo.elementary_ops == closure_forward(b).size());
  CHECK(fo.elementary_ops == 3);
  auto [bs, bo] = sig_backward(one, b);
  CHECK(bo.elementary_ops == 3);
  CHECK(close(fs.value(W(1, "11")), 0.5 * 0.4 * 0.4, 1e-14));

  WordSet prefixes = enumerate_words(WordKind::PrefixesUpTo, 2, 1);
  CHECK(sig_forward(one, prefixes).second.elementary_ops == 5);
  CHECK(sig_backward(one, prefixes).second.elementary_ops == 4);
}

TEST_CASE("frozen operation counts agree with the closed form") {
  std::mt19937_64 gen(7);
  PiecewisePath k2 = random_path(gen, 1, 2);
  PiecewisePath k3 = random_path(gen, 1, 3);

  const WordSet all2 = enumerate_words(WordKind::AllUpTo, 2, 1);
  const WordSet suffix2 = enumerate_words(WordKind::SuffixesUpTo, 2, 1);
  const WordSet prefix2 = enumerate_words(WordKind::PrefixesUpTo, 2, 1);
  const WordSet pair(1, 2, {W(1, "11")});

  CHECK(sig_forward(k2, all2).second.elementary_ops == 27);
  CHECK(sig_forward(k2, suffix2).second.elementary_ops == 14);
  CHECK(sig_backward(k2, prefix2).second.elementary_ops == 14);
  CHECK(sig_backward(k3, pair).second.elementary_ops == 13);
  CHECK(sig_forward(k3, pair).second.elementary_ops == 13);

  CHECK(cost_closed_form(Direction::Forward, all2, 2) == 27);
  CHECK(cost_closed_form(Direction::Forward, suffix2, 2) == 14);
  CHECK(cost_closed_form(Direction::Backward, prefix2, 2) == 14);
  CHECK(cost_closed_form(Direction::Backward, pair, 3) == 13);
  CHECK(cost_closed_form(Direction::Forward, WordSet(1, 0, {W(1, "e")}), 5) ==
        1);
  CHECK_THROWS_AS(cost_closed_form(Direction::Forward, all2, 1), InvalidInput);
}

TEST_CASE("instrumented counters equal the closed form on random sets") {
  std::mt19937_64 gen(1234);
  const WordSet pool = enumerate_words(WordKind::AllUpTo, 3, 1);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Word> sub;
    for (const Word& w : pool.words()) {
      if (gen() % 100 < 40) sub.push_back(w);
    }
    if (sub.empty()) sub.push_back(W(1, "10"));
    WordSet b(1, 3, std::move(sub));
    for (std::uint64_t K : {2, 3, 7}) {
      PiecewisePath path = random_path(gen, 1, K);
      CHECK(sig_forward(path, b).second.elementary_ops ==
            cost_closed_form(Direction::Forward, b, K));
      CHECK(sig_backward(path, b).second.elementary_ops ==
            cost_closed_form(Direction::Backward, b, K));
    }
  }
}

TEST_CASE("generated families minimize the directional cost at order two") {
  // compose one class basis per pure word to enumerate every order-two basis
  std::vector<WordSet> bases;
  auto c0 = enumerate_bases(2, 1, W(1, "e"));
  auto c1 = enumerate_bases(2, 1, W(1, "1"));
  auto c2 = enumerate_bases(2, 1, W(1, "11"));
  for (const auto& b0 : c0) {
    for (const auto& b1 : c1) {
      for (const auto& b2 : c2) {
        std::vector<Word> words;
        for (const auto* set : {&b0, &b1, &b2}) {
          words.insert(words.end(), set->words().begin(), set->words().end());
        }
        bases.emplace_back(1, 2, std::move(words));
      }
    }
  }
  REQUIRE(bases.size() == 9);

  const WordSet suffix = enumerate_words(WordKind::SuffixesUpTo, 2, 1);
  const WordSet prefix = enumerate_words(WordKind::PrefixesUpTo, 2, 1);
  for (std::uint64_t K : {2, 10, 100}) {
    const std::uint64_t best_f = cost_closed_form(Direction::Forward, suffix, K);
    const std::uint64_t best_b = cost_closed_form(Direction::Backward, prefix, K);
    bool f_attained = false;
    bool b_attained = false;
    for (const WordSet& b : bases) {
      const std::uint64_t cf = cost_closed_form(Direction::Forward, b, K);
      const std::uint64_t cb = cost_closed_form(Direction::Backward, b, K);
      CHECK(best_f <= cf);
      CHECK(best_b <= cb);
      f_attained = f_attained || cf == best_f;
      b_attained = b_attained || cb == best_b;
    }
    CHECK(f_attained);
    CHECK(b_attained);
  }
}

TEST_CASE("cost ratio of generated to full sets approaches d/(d+1)") {
  for (int d : {1, 2}) {
    for (int N : {2, 3}) {
      const WordSet suffix = enumerate_words(WordKind::SuffixesUpTo, N, d);
      const WordSet full = enumerate_words(WordKind::AllUpTo, N, d);
      const std::uint64_t K = 1000000;
      const double ratio =
          static_cast<double>(cost_closed_form(Direction::Forward, suffix, K)) /
          static_cast<double>(cost_closed_form(Direction::Forward, full, K));
      CHECK(std::abs(ratio - static_cast<double>(d) / (d + 1)) < 1e-5);
    }
  }
}

TEST_CASE("time-only components equal normalized powers of the duration") {
  std::mt19937_64 gen(2026);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 1 + static_cast<int>(gen() % 2);
    PiecewisePath path = random_path(gen, d, 1 + gen() % 8);
    std::vector<Word> zw;
    for (std::size_t k = 0; k <= 4; ++k) zw.push_back(zeros(d, k));
    WordSet zset(d, 4, zw);
    SigVector f = sig_forward(path, zset).first;
    SigVector b = sig_backward(path, zset).first;
    double expect = 1.0;
    for (std::size_t k = 0; k <= 4; ++k) {
      if (k > 0) expect *= path.duration() / static_cast<double>(k);
      CHECK(close(f.value(zeros(d, k)), expect, 1e-12));
      CHECK(close(b.value(zeros(d, k)), expect, 1e-12));
    }
  }
}

TEST_CASE("shuffle identity holds on computed signatures") {
  std::mt19937_64 gen(314);
  for (int d : {1, 2}) {
    PiecewisePath path = random_path(gen, d, 5);
    const WordSet words = enumerate_words(WordKind::AllUpTo, 4, d);
    SigVector s = sig_forward(path, words).first;
    const WordSet small = enumerate_words(WordKind::AllUpTo, 2, d);
    for (const Word& u : small.words()) {
      for (const Word& v : small.words()) {
        const WordPoly mix = shuffle(u, v);
        double rhs = 0.0;
        for (const auto& [w, c] : mix.terms()) rhs += rat_to_double(c) * s.value(w);
        CHECK(close(s.value(u) * s.value(v), rhs, 1e-9));
      }
    }
  }
}

TEST_CASE("zero-padded components recover shorter components exactly") {
  std::mt19937_64 gen(2718);
  PiecewisePath path = random_path(gen, 1, 7);
  const double T = path.duration();
  const WordSet words = enumerate_words(WordKind::AllUpTo, 4, 1);
  SigVector s = sig_forward(path, words).first;
  const WordSet small = enumerate_words(WordKind::AllUpTo, 2, 1);
  for (const Word& w : small.words()) {
    const std::size_t k = 4 - w.length() > 2 ? 2 : 4 - w.length();
    const WordPoly padded = zero_pad_shuffle(w, k);
    double rhs = 0.0;
    for (const auto& [u, c] : padded.terms()) rhs += rat_to_double(c) * s.value(u);
    double scale = 1.0;
    for (std::size_t j = 1; j <= k; ++j) scale *= static_cast<double>(j) / T;
    CHECK(close(s.value(w), scale * rhs, 1e-9));
  }
}

TEST_CASE("batch evaluation is independent of scheduling") {
  std::mt19937_64 gen(55);
  std::vector<PiecewisePath> paths;
  for (int i = 0; i < 23; ++i) paths.push_back(random_path(gen, 1, 1 + gen() % 6));
  SigPlan plan(enumerate_words(WordKind::SuffixesUpTo, 3, 1),
               Direction::Forward);
  auto r1 = sig_batch(paths, plan, 1);
  auto r2 = sig_batch(paths, plan, 2);
  auto r5 = sig_batch(paths, plan, 5);
  REQUIRE(r1.size() == paths.size());
  CHECK(r1 == r2);
  CHECK(r1 == r5);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    CHECK(r1[i] == plan.run(paths[i]));
  }
  CHECK_THROWS_AS(sig_batch(paths, plan, 0), InvalidInput);
}

TEST_CASE("path and signature-vector validation") {
  CHECK_THROWS_AS(PiecewisePath({0.0, 0.0}, {{1.0}, {2.0}}), InvalidInput);
  CHECK_THROWS_AS(PiecewisePath({0.0, -1.0}, {{1.0}, {2.0}}), InvalidInput);
  CHECK_THROWS_AS(PiecewisePath({0.0}, {{1.0}}), InvalidInput);
  CHECK_THROWS_AS(PiecewisePath({0.0, 1.0}, {{1.0}, {2.0, 3.0}}), InvalidInput);
  CHECK_THROWS_AS(PiecewisePath({0.0, 1.0}, {{1.0}, {std::nan("")}}),
                  InvalidInput);

  WordSet words(1, 1, {W(1, "e"), W(1, "1")});
  CHECK_THROWS_AS(SigVector(words, {2.0, 0.5}), DataError);
  CHECK_THROWS_AS(SigVector(words, {1.0, std::nan("")}), DataError);
  SigVector ok(words, {1.0, 0.5});
  CHECK(ok.value(W(1, "1")) == 0.5);
  CHECK_THROWS_AS(ok.value(W(1, "0")), IncompleteSignature);
}
