#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sigbasis/errors.hpp"
#include "sigbasis/rationals.hpp"
#include "sigbasis/words.hpp"

using namespace sigbasis;

namespace {
Word W(int d, const std::string& s) { return Word::parse(d, s); }
}  // namespace

TEST_CASE("concat juxtaposes and respects the empty-word identity") {
  CHECK(concat(W(2, "1"), W(2, "21")) == W(2, "121"));
  CHECK(concat(W(2, "121"), W(2, "e")) == W(2, "121"));
  CHECK(concat(W(2, "e"), W(2, "121")) == W(2, "121"));
  CHECK(concat(W(1, "01"), W(1, "0")) == W(1, "010"));
  CHECK_THROWS_AS(concat(W(1, "1"), W(2, "1")), InvalidInput);
}

TEST_CASE("pure removes zeros, keeps order, is idempotent") {
  CHECK(W(2, "0102").pure() == W(2, "12"));
  CHECK(W(2, "000").pure() == W(2, "e"));
  CHECK(W(2, "121").pure() == W(2, "121"));
  CHECK(W(2, "0102").pure().pure() == W(2, "12"));
  CHECK(W(2, "0102").pure().dim() == 2);
}

TEST_CASE("enumeration cardinalities match the closed forms") {
  for (int d = 1; d <= 3; ++d) {
    for (int N = 0; N <= 5; ++N) {
      CHECK(enumerate_words(WordKind::AllExact, N, d).size() ==
            card_all_exact(N, d));
      CHECK(enumerate_words(WordKind::AllUpTo, N, d).size() ==
            card_all_up_to(N, d));
      CHECK(enumerate_words(WordKind::PrefixesUpTo, N, d).size() ==
            card_all_exact(N, d));
      CHECK(enumerate_words(WordKind::SuffixesUpTo, N, d).size() ==
            card_all_exact(N, d));
    }
  }
  // spot values
  CHECK(enumerate_words(WordKind::AllExact, 1, 1) ==
        WordSet(1, 1, {W(1, "0"), W(1, "1")}));
  CHECK(enumerate_words(WordKind::SuffixesUpTo, 3, 1).size() == 8);
}

TEST_CASE("class enumeration places the pure letters among zero slots") {
  WordSet c = enumerate_class(W(1, "1"), 3, false);
  CHECK(c == WordSet(1, 3, {W(1, "001"), W(1, "010"), W(1, "100")}));
  for (int N = 1; N <= 5; ++N) {
    for (int k = 0; k <= N; ++k) {
      Word gamma(2, std::vector<Letter>(k, Letter{2}));
      CHECK(enumerate_class(gamma, N, false).size() ==
            binomial(N, k).get_ui());
    }
  }
  CHECK_THROWS_AS(enumerate_class(W(1, "01"), 3, false), InvalidInput);
}

TEST_CASE("class decomposition partitions the full word set") {
  for (int d = 1; d <= 2; ++d) {
    for (int N = 0; N <= 4; ++N) {
      WordSet all = enumerate_words(WordKind::AllUpTo, N, d);
      std::size_t covered = 0;
      for (const Word& gamma : pure_words_up_to(N, d)) {
        WordSet cls = enumerate_class(gamma, N, true);
        covered += cls.size();
        for (const Word& w : cls.words()) {
          CHECK(w.pure() == gamma);
          CHECK(all.contains(w));
        }
      }
      CHECK(covered == all.size());
    }
  }
}

TEST_CASE("closures are extensive, idempotent, and match hand values") {
  WordSet b(1, 2, {W(1, "11")});
  CHECK(closure_forward(b) == WordSet(1, 2, {W(1, "e"), W(1, "1"), W(1, "11")}));
  WordSet c(1, 2, {W(1, "01")});
  CHECK(closure_backward(c) ==
        WordSet(1, 2, {W(1, "e"), W(1, "1"), W(1, "01")}));

  for (int N = 1; N <= 4; ++N) {
    WordSet sfx = enumerate_words(WordKind::SuffixesUpTo, N, 2);
    CHECK(closure_forward(sfx) == sfx);
    WordSet pfx = enumerate_words(WordKind::PrefixesUpTo, N, 2);
    CHECK(closure_backward(pfx) == pfx);

    WordSet cf = closure_forward(pfx);
    CHECK(closure_forward(cf) == cf);
    for (const Word& w : pfx.words()) CHECK(cf.contains(w));
  }
}

TEST_CASE("canonical order sorts by length then lexicographically") {
  WordSet s(1, 1, {W(1, "1"), W(1, "0"), W(1, "e")});
  CHECK(canonical_order(s) ==
        std::vector<Word>{W(1, "e"), W(1, "0"), W(1, "1")});
  WordSet t(1, 2, {W(1, "10"), W(1, "01")});
  CHECK(canonical_order(t) == std::vector<Word>{W(1, "01"), W(1, "10")});
  // keys are strictly increasing along the canonical order
  WordSet all = enumerate_words(WordKind::AllUpTo, 4, 2);
  for (std::size_t i = 1; i < all.size(); ++i) {
    CHECK(all.words()[i - 1].key() < all.words()[i].key());
  }
}

TEST_CASE("set lengths of prefix and suffix families match the closed form") {
  for (int d = 1; d <= 3; ++d) {
    for (int N = 1; N <= 5; ++N) {
      WordSet pfx = enumerate_words(WordKind::PrefixesUpTo, N, d);
      WordSet sfx = enumerate_words(WordKind::SuffixesUpTo, N, d);
      CHECK(pfx.total_length() == minimal_basis_length(N, d));
      CHECK(sfx.total_length() == minimal_basis_length(N, d));
    }
  }
}

TEST_CASE("word sets reject duplicates, mixed alphabets, and long words") {
  CHECK_THROWS_AS(WordSet(1, 2, {W(1, "1"), W(1, "1")}), InvalidInput);
  CHECK_THROWS_AS(WordSet(1, 2, {W(2, "1")}), InvalidInput);
  CHECK_THROWS_AS(WordSet(1, 1, {W(1, "11")}), InvalidInput);
}

TEST_CASE("parse and print round-trip") {
  for (const char* text : {"e", "0", "1", "01", "10", "1021"}) {
    CHECK(W(2, text).str() == text);
  }
  CHECK_THROWS_AS(W(1, "2x"), InvalidInput);
  CHECK_THROWS_AS(W(1, "2"), InvalidInput);  // letter outside {0,1}
}
