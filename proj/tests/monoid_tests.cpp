#include "doctest.h"

#include <random>

#include "mca/monoid.hpp"
#include "testutil.hpp"

using namespace mca;

namespace {

MonoidPresentation pq_group() {
  MonoidPresentation pres;
  pres.generators = {"p", "q"};
  pres.relations = {{Word{{0, 1}}, Word{}}, {Word{{1, 0}}, Word{}}};
  return pres;
}

MonoidPresentation involution() {
  MonoidPresentation pres;
  pres.generators = {"g"};
  pres.relations = {{Word{{0, 0}}, Word{}}};
  return pres;
}

MonoidPresentation free_pq() {
  MonoidPresentation pres;
  pres.generators = {"p", "q"};
  return pres;
}

}  // namespace

TEST_CASE("valid_name_token") {
  CHECK(valid_name_token("p"));
  CHECK(valid_name_token("A9_x"));
  CHECK_FALSE(valid_name_token(""));
  CHECK_FALSE(valid_name_token("9a"));
  CHECK_FALSE(valid_name_token("a-b"));
  CHECK_FALSE(valid_name_token("\xce\xb5"));
}

TEST_CASE("parse_word basics") {
  MonoidPresentation pres = free_pq();
  CHECK(parse_word("\xce\xb5", pres).empty());
  CHECK(parse_word("p.q.p", pres).letters == std::vector<int>{0, 1, 0});
  CHECK(parse_word("q", pres).letters == std::vector<int>{1});
  CHECK_THROWS_AS(parse_word("z", pres), UnknownGeneratorError);
  CHECK_THROWS_AS(parse_word("", pres), SyntaxError);
  CHECK_THROWS_AS(parse_word("p..q", pres), SyntaxError);
  CHECK_THROWS_AS(parse_word("p q", pres), SyntaxError);
  CHECK_THROWS_AS(parse_word("p.", pres), SyntaxError);
}

TEST_CASE("format_word round trip") {
  MonoidPresentation pres = free_pq();
  for (const char* text : {"\xce\xb5", "p", "p.q.p.q.q"})
    CHECK(format_word(parse_word(text, pres), pres) == text);
}

TEST_CASE("word_concat unit and associativity") {
  MonoidPresentation pres = free_pq();
  Word e;
  CHECK(word_concat(e, e) == e);
  Word p = parse_word("p", pres), q = parse_word("q", pres);
  CHECK(word_concat(p, q) == parse_word("p.q", pres));
  CHECK(word_concat(p, e) == p);
  CHECK(word_concat(e, q) == q);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    Word u = testutil::random_word(rng, pres, 4);
    Word v = testutil::random_word(rng, pres, 4);
    Word w = testutil::random_word(rng, pres, 4);
    CHECK(word_concat(word_concat(u, v), w) == word_concat(u, word_concat(v, w)));
  }
}

TEST_CASE("p.p.p acts as three clockwise steps on the six-cell ring") {
  CellularAutomaton ring = testutil::cyclic6();
  Word ppp = word_concat(parse_word("p.p", ring.pres), parse_word("p", ring.pres));
  CHECK(ppp == parse_word("p.p.p", ring.pres));
  CHECK(act(ring, ring.cell_index("k0"), ppp) == ring.cell_index("k3"));
}

TEST_CASE("length_lex_less") {
  MonoidPresentation pres = free_pq();
  CHECK(length_lex_less(parse_word("p", pres), parse_word("p.p", pres)));
  CHECK(length_lex_less(parse_word("p.q", pres), parse_word("q.p", pres)));
  CHECK_FALSE(length_lex_less(parse_word("p", pres), parse_word("p", pres)));
  CHECK(length_lex_less(Word{}, parse_word("p", pres)));
}

TEST_CASE("reduce_bounded") {
  SUBCASE("free monoid is untouched") {
    MonoidPresentation pres = free_pq();
    Word w = parse_word("p.q", pres);
    CHECK(reduce_bounded(pres, w, 5) == w);
  }
  SUBCASE("inverse pair cancels") {
    MonoidPresentation pres = pq_group();
    CHECK(reduce_bounded(pres, parse_word("p.q.p", pres), 5) == parse_word("p", pres));
    CHECK(reduce_bounded(pres, parse_word("q.p.q.p", pres), 5).empty());
  }
  SUBCASE("involution collapses even powers") {
    MonoidPresentation pres = involution();
    CHECK(reduce_bounded(pres, parse_word("g.g.g.g", pres), 5).empty());
    CHECK(reduce_bounded(pres, parse_word("g.g.g", pres), 5) == parse_word("g", pres));
  }
  SUBCASE("never lengthens and is idempotent") {
    MonoidPresentation pres = pq_group();
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
      Word w = testutil::random_word(rng, pres, 6);
      Word r = reduce_bounded(pres, w, 4);
      CHECK(r.size() <= w.size());
      CHECK(reduce_bounded(pres, r, 4) == r);
    }
  }
  SUBCASE("monotone in bound") {
    MonoidPresentation pres = involution();
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
      Word w = testutil::random_word(rng, pres, 8);
      Word small = reduce_bounded(pres, w, 1);
      Word large = reduce_bounded(pres, w, 6);
      CHECK((large == small || length_lex_less(large, small)));
    }
  }
}

TEST_CASE("words_identity_bounded") {
  CHECK(words_identity_bounded(free_pq(), Word{}, 3) == IdentityVerdict::Identity);
  CHECK(words_identity_bounded(free_pq(), Word{{0}}, 3) == IdentityVerdict::Unknown);
  MonoidPresentation inv = involution();
  CHECK(words_identity_bounded(inv, parse_word("g.g", inv), 3) ==
        IdentityVerdict::Identity);
  CHECK(words_identity_bounded(inv, parse_word("g", inv), 3) == IdentityVerdict::Unknown);
}
