#include <doctest.h>

#include <random>

#include "fcw/stallings.hpp"
#include "oracle.hpp"

using namespace fcw;
using stallings::SubgroupAutomaton;

namespace {

  Symbol b() { return Symbol::intern("b"); }
  Symbol c() { return Symbol::intern("c"); }
  Alphabet bc() { return {b(), c()}; }
  Word w(std::string_view s) { return parse_word(s); }

  SubgroupAutomaton sub(std::vector<Word> gens) {
    return SubgroupAutomaton::build(bc(), gens);
  }

  Word random_word(std::mt19937_64& rng, std::vector<Symbol> const& gens, std::size_t len) {
    Word out;
    while (out.length() < len) {
      out.append(gens[rng() % gens.size()], rng() % 2 ? 1 : -1);
    }
    return out;
  }

}  // namespace

TEST_CASE("building folds the bouquet") {
  auto a = sub({w("b"), w("c^2")});
  CHECK(a.state_count() == 2);
  CHECK(a.rank() == 2);
  auto cyc = sub({w("b"), w("b^3")});
  CHECK(cyc.state_count() == 1);
  CHECK(cyc.rank() == 1);
  auto triv = sub({});
  CHECK(triv.state_count() == 1);
  CHECK(triv.rank() == 0);
  CHECK(triv.member(Word()));
  CHECK_THROWS_AS(sub({w("q")}), UnknownSymbol);
}

TEST_CASE("membership examples") {
  auto a = sub({w("b"), w("c^2")});
  CHECK_FALSE(a.member(w("c^-1 b c")));
  CHECK(a.member(w("c^2 b c^-2")));
  CHECK(sub({w("b")}).member(w("b^3")));
}

TEST_CASE("express expands back to the word") {
  auto a  = sub({w("b"), w("c^2")});
  auto ex = a.express(w("c^2 b c^-2"));
  REQUIRE(ex);
  CHECK(a.expand(*ex) == w("c^2 b c^-2"));
  CHECK(ex->size() == 3);
  auto e1 = sub({w("b")}).express(Word());
  REQUIRE(e1);
  CHECK(e1->empty());
  CHECK_FALSE(sub({w("b")}).express(w("c")));
}

TEST_CASE("intersections") {
  CHECK(stallings::intersect(sub({w("b")}), sub({w("c")})).rank() == 0);
  auto i2 = stallings::intersect(sub({w("b"), w("c^2")}), sub({w("c")}));
  CHECK(stallings::equal(i2, sub({w("c^2")})));
  CHECK(i2.member(w("c^2")));
  CHECK_FALSE(i2.member(w("c")));
  CHECK(stallings::equal(stallings::intersect(sub({w("b"), w("c")}), sub({w("b")})), sub({w("b")})));
}

TEST_CASE("equality, rank and basis") {
  CHECK(stallings::equal(sub({w("b"), w("b^3")}), sub({w("b")})));
  auto a = sub({w("b^2"), w("b c")});
  CHECK(stallings::equal(sub(a.basis()), a));
  CHECK(a.rank() == a.edge_count() - a.state_count() + 1);
}

TEST_CASE("coset representatives") {
  CHECK(sub({w("b")}).coset_rep(w("b c")) == w("c"));
  CHECK(sub({w("c^2")}).coset_rep(w("c^3")) == w("c"));
  CHECK(sub({w("b")}).coset_rep(w("b^5")).is_identity());

  std::mt19937_64 rng(17);
  std::vector<Symbol> gens{b(), c()};
  for (int n = 0; n < 300; ++n) {
    std::vector<Word> hs{random_word(rng, gens, 1 + rng() % 3), random_word(rng, gens, 1 + rng() % 3)};
    auto a = sub(hs);
    auto g = random_word(rng, gens, rng() % 8);
    auto r = a.coset_rep(g);
    CHECK(a.member(g * r.inverse()));
    auto x = hs[rng() % 2];
    CHECK(a.coset_rep(x * g) == r);
  }
}

TEST_CASE("membership agrees with enumeration and permutation certificates") {
  std::mt19937_64     rng(2024);
  std::vector<Symbol> gens{b(), c()};
  int                 decided = 0;
  for (int n = 0; n < 200; ++n) {
    std::vector<Word>            hs;
    std::vector<oracle::Letters> hl;
    for (std::uint64_t k = 0, r = 1 + rng() % 3; k < r; ++k) {
      hs.push_back(random_word(rng, gens, 1 + rng() % 3));
      hl.push_back(oracle::encode(hs.back(), gens));
    }
    auto a    = sub(hs);
    Word x    = rng() % 2 ? random_word(rng, gens, rng() % 6) : hs[0] * hs.back().inverse();
    auto want = oracle::member(hl, oracle::encode(x, gens), 2, 4, rng);
    if (want == oracle::Answer::Undecided) {
      continue;
    }
    ++decided;
    CHECK(a.member(x) == (want == oracle::Answer::Yes));
  }
  CHECK(decided > 150);
}

TEST_CASE("intersection basis lies in both factors") {
  std::mt19937_64     rng(77);
  std::vector<Symbol> gens{b(), c()};
  for (int n = 0; n < 100; ++n) {
    auto x = sub({random_word(rng, gens, 1 + rng() % 4), random_word(rng, gens, 1 + rng() % 4)});
    auto y = sub({random_word(rng, gens, 1 + rng() % 4), random_word(rng, gens, 1 + rng() % 4)});
    auto i = stallings::intersect(x, y);
    for (auto const& v : i.basis()) {
      CHECK(x.member(v));
      CHECK(y.member(v));
    }
    auto g = random_word(rng, gens, rng() % 6);
    CHECK(i.member(g) == (x.member(g) && y.member(g)));
  }
}

TEST_CASE("DOT export is stable") {
  auto a = sub({w("c^2"), w("b")});
  CHECK(a.dot("A") == sub({w("b"), w("c^2")}).dot("A"));
  CHECK(a.dot("A").find("doublecircle") != std::string::npos);
}

TEST_CASE("morphisms") {
  stallings::Morphism xi0(bc(), {w("b"), w("c")}, {w("c^-1 b c"), w("c^2")});
  CHECK(xi0.apply(w("b c")) == w("c^-1 b c^3"));
  CHECK(xi0.apply_inverse(w("c^-1 b c^3")) == w("b c"));
  CHECK_THROWS_AS(xi0.apply_inverse(w("b")), NotAMember);
  auto img = xi0.image(sub({w("b")}));
  CHECK(stallings::equal(img, sub({w("c^-1 b c")})));
  CHECK_THROWS_AS(stallings::Morphism(bc(), {w("b"), w("b^2")}, {w("b"), w("c")}), InvalidScheme);
  CHECK(stallings::rank_of(bc(), std::vector<Word>{w("b"), w("b^2"), w("c b c^-1")}) == 2);
}

TEST_CASE("double coset split") {
  auto a      = sub({w("b")});
  auto target = sub({w("c^2")});
  auto p      = w("b^3 c^4");
  auto s      = stallings::split_double(a, target.graph(), p);
  REQUIRE(s);
  CHECK(a.member(s->first));
  CHECK(target.member(s->second));
  CHECK(s->first * s->second == p);
  CHECK_FALSE(stallings::split_double(a, target.graph(), w("c")));
}
