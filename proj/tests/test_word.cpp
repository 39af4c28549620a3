#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "tlen/word.hpp"

using namespace tlen;
using namespace tlen::testing;

static ReducedWord W(const std::string& s, int rank = 2) { return parse_word(s, rank); }

TEST_CASE("concat examples") {
  CHECK(concat(W("ab"), W("BA")).empty());
  CHECK(format_word(concat(W("ab"), W("b")).letters()) == "abb");
  CHECK(format_word(concat(W("abA"), W("aB")).letters()) == "a");
  CHECK(concat(W("1"), W("1")).empty());
  CHECK_THROWS_AS(concat(W("ab", 2), W("c", 3)), std::invalid_argument);
}

TEST_CASE("cancellation_count examples") {
  CHECK(cancellation_count(W("ab"), W("BBA")) == 1);
  CHECK(cancellation_count(W("ab"), W("b")) == 0);
  CHECK(cancellation_count(W("ab"), W("BA")) == 2);
  CHECK(cancellation_count(W("1"), W("ab")) == 0);
}

TEST_CASE("invert examples") {
  CHECK(format_word(invert(W("abC", 3)).letters()) == "cBA");
  CHECK(invert(W("1")).empty());
  CHECK(format_word(invert(W("a")).letters()) == "A");
}

TEST_CASE("cyclic_reduce examples") {
  auto [c1, u1] = cyclic_reduce(W("abA"));
  CHECK(format_word(c1.letters()) == "b");
  CHECK(format_word(u1.letters()) == "a");

  auto [c2, u2] = cyclic_reduce(W("ab"));
  CHECK(format_word(c2.letters()) == "ab");
  CHECK(u2.empty());

  auto [c3, u3] = cyclic_reduce(W("aabAA"));
  CHECK(format_word(c3.letters()) == "b");
  CHECK(format_word(u3.letters()) == "aa");

  auto [c4, u4] = cyclic_reduce(W("1"));
  CHECK(c4.empty());
  CHECK(u4.empty());
}

TEST_CASE("cyclic_reduce reassembly and idempotence") {
  Rng rng(7);
  for (int t = 0; t < 300; ++t) {
    ReducedWord w = random_reduced_word(2 + t % 3, 1 + t % 30, rng);
    auto [core, conj] = cyclic_reduce(w);
    ReducedWord back = concat(concat(conj, core.as_word()), invert(conj));
    // core is one specific rotation; conjugating by the rotation offset
    // recovers w only up to rotation choice, so compare cyclic classes
    auto [cw, cu] = cyclic_reduce(back);
    CHECK(cw == core);
    auto [again, conj2] = cyclic_reduce(core.as_word());
    CHECK(again == core);
    CHECK(conj2.empty());
  }
}

TEST_CASE("cyclic word canonical rotation") {
  auto c = CyclicWord::from_cyclically_reduced(2, parse_word("ba", 2).letters());
  CHECK(format_word(c.letters()) == "ab");
  auto c2 = CyclicWord::from_cyclically_reduced(2, parse_word("bA", 2).letters());
  CHECK(format_word(c2.letters()) == "Ab");
  CHECK_THROWS_AS(CyclicWord::from_cyclically_reduced(2, parse_word("abA", 2).letters()),
                  std::invalid_argument);

  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    CyclicWord c0 = random_cyclic_word(2, 1 + t % 20, rng);
    const auto& ls = c0.letters();
    for (size_t r = 0; r < ls.size(); ++r) {
      std::vector<Letter> rot(ls.begin() + r, ls.end());
      rot.insert(rot.end(), ls.begin(), ls.begin() + r);
      CHECK(CyclicWord::from_cyclically_reduced(2, rot) == c0);
    }
  }
}

TEST_CASE("free reduction agrees with naive scanner") {
  Rng rng(3);
  for (int t = 0; t < 2000; ++t) {
    int rank = 2 + t % 3;
    std::uniform_int_distribution<size_t> len(0, 60);
    std::vector<Letter> raw;
    size_t L = len(rng);
    for (size_t i = 0; i < L; ++i) raw.push_back(random_letter(rank, rng));
    CHECK(ReducedWord::reduce(rank, raw).letters() == naive_reduce(raw));
  }
}

TEST_CASE("concat length identity and associativity") {
  Rng rng(5);
  for (int t = 0; t < 500; ++t) {
    int rank = 2 + t % 2;
    ReducedWord u = random_reduced_word(rank, t % 25, rng);
    ReducedWord v = random_reduced_word(rank, (t * 7) % 25, rng);
    ReducedWord w = random_reduced_word(rank, (t * 3) % 25, rng);
    ReducedWord uv = concat(u, v);
    CHECK(uv.length() == u.length() + v.length() - 2 * cancellation_count(u, v));
    CHECK(concat(uv, w) == concat(u, concat(v, w)));
    CHECK(concat(u, invert(u)).empty());
    CHECK(invert(invert(u)) == u);
    CHECK(invert(u).length() == u.length());
  }
}

TEST_CASE("alpha frozen examples") {
  CHECK(alpha(W("1")) == 0);
  CHECK(alpha(W("a")) == 1);
  CHECK(alpha(W("ababa")) == 2);
  CHECK(alpha(W("baaaa")) == 4);
  CHECK(alpha(W("aab")) == 2);
  CHECK(alpha(W("abaaba")) == 2);
  CHECK(alpha(W("aBaBaB")) == 3);
}

TEST_CASE("alpha agrees with brute force") {
  Rng rng(13);
  for (int t = 0; t < 400; ++t) {
    int rank = 2 + t % 2;
    ReducedWord w = random_reduced_word(rank, t % 48, rng);
    CHECK(alpha(w) == alpha_brute(w.letters()));
  }
}

TEST_CASE("alpha symmetry and power lower bound") {
  Rng rng(17);
  for (int t = 0; t < 300; ++t) {
    ReducedWord w = random_reduced_word(2, 1 + t % 30, rng);
    CHECK(alpha(w) == alpha(invert(w)));
  }
  for (int t = 0; t < 200; ++t) {
    CyclicWord u = random_cyclic_word(2, 1 + t % 6, rng);
    int p = 2 + t % 4;
    ReducedWord pw(2);
    for (int q = 0; q < p; ++q) pw = concat(pw, u.as_word());
    CHECK(pw.length() == p * u.length());  // no cancellation: u cyclically reduced
    CHECK(alpha(pw) >= p);
  }
}

TEST_CASE("alpha_tilde frozen examples") {
  auto neck = [](const std::string& s) {
    return CyclicWord::from_cyclically_reduced(2, parse_word(s, 2).letters());
  };
  CHECK(alpha_tilde(CyclicWord(2)) == 0);
  CHECK(alpha_tilde(neck("ba")) == 1);
  CHECK(alpha_tilde(neck("baaaa")) == 4);
  CHECK(alpha_tilde_rotations(neck("baaaa")) == 4);  // definition-level confirmation
  CHECK(alpha_tilde(neck("aaaa")) == 4);
  CHECK(alpha_tilde(neck("abab")) == 2);
}

TEST_CASE("alpha_tilde agrees with rotation maximum") {
  Rng rng(19);
  for (int t = 0; t < 250; ++t) {
    int rank = 2 + t % 2;
    CyclicWord c = random_cyclic_word(rank, 1 + t % 24, rng);
    CHECK(alpha_tilde(c) == alpha_tilde_rotations(c));
  }
}

TEST_CASE("alpha_tilde inversion invariance") {
  Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    CyclicWord c = random_cyclic_word(2, 1 + t % 20, rng);
    CHECK(alpha_tilde(c) == alpha_tilde(c.inverse()));
  }
}

TEST_CASE("text and parse round trips") {
  CHECK(format_word(W("1").letters()) == "1");
  CHECK(parse_word("").empty());
  CHECK_THROWS_AS(parse_word("a b"), std::invalid_argument);
  CHECK(parse_word("aA").empty());  // parse reduces
  Rng rng(29);
  for (int t = 0; t < 200; ++t) {
    ReducedWord w = random_reduced_word(3, t % 30, rng);
    CHECK(parse_word(format_word(w.letters()), 3) == w);
  }
}

TEST_CASE("shortlex order") {
  CHECK(word_less(W("a"), W("ab")));
  CHECK(word_less(W("a"), W("A")));
  CHECK(word_less(W("A"), W("b")));
  CHECK(!word_less(W("ab"), W("ab")));
}
