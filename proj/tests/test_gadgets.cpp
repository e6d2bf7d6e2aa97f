#include <doctest.h>

#include "fcw/gadgets.hpp"
#include "fcw/rewrite.hpp"

using namespace fcw;
using gadgets::b_index;
using gadgets::Direction;

namespace {

  Word w(std::string_view s) { return parse_word(s); }

}  // namespace

TEST_CASE("the action of xi_m and xi'_m on b_i") {
  for (std::int64_t m = -3; m <= 4; ++m) {
    auto phi = gadgets::xi(m);
    auto psi = gadgets::xi_prime(m);
    for (std::int64_t i = -8; i <= 8; ++i) {
      CHECK(phi.apply(b_index(i)) == b_index(2 * i - m + 1));
      CHECK(psi.apply(b_index(i)) == b_index(2 * i - m));
    }
    CHECK(psi.apply(b_index(m)) == b_index(m));
    CHECK(phi.apply(w("c")) == w("c^2"));
  }
  CHECK(gadgets::xi(0).apply(w("b c")) == w("c^-1 b c^3"));
}

TEST_CASE("Theta") {
  auto th = gadgets::Theta(0);
  std::set<std::string> names;
  for (Symbol s : th->alphabet()) {
    names.insert(std::string(s.name()));
  }
  CHECK(names == std::set<std::string>{"a", "b", "c", "t0", "t0'"});
  auto p = presentation(th);
  CHECK(p.generators.size() == 5);
  CHECK(p.relators.size() == 4);
  CHECK(validate(th).empty());
}

TEST_CASE("tail streams") {
  CHECK(gadgets::tail_stream(3, Direction::Up).truncate(3) == std::vector<Word>{b_index(3), b_index(4), b_index(5)});
  CHECK(gadgets::tail_stream(0, Direction::Down).truncate(2) == std::vector<Word>{b_index(-1), b_index(-2)});
  auto r = gadgets::b_index_range(b_index(4) * b_index(-2) * w("c"));
  REQUIRE(r);
  CHECK(r->first == -2);
  CHECK(r->second == 4);
  CHECK_FALSE(gadgets::b_index_range(w("c^3")));
}

TEST_CASE("tail witnesses") {
  for (std::int64_t m : {0, 1, 3, -2}) {
    auto [t, tp] = gadgets::stable_names(m);
    Word tw = Word::letter(t), tpw = Word::letter(tp);
    CHECK(gadgets::tail_witness(m, m) == b_index(m));
    CHECK(gadgets::tail_witness(m + 1, m) == b_index(m).conjugate(tw));
    CHECK(gadgets::tail_witness(m + 8, m) == b_index(m).conjugate(tw * tpw.pow(3)));
    auto x = gadgets::Xi(m);
    for (std::int64_t i = m; i <= m + 20; ++i) {
      CHECK(equal(x, gadgets::tail_witness(i, m), b_index(i)).is_yes());
    }
    for (std::int64_t i = m - 1; i >= m - 20; --i) {
      CHECK(equal(x, gadgets::tail_witness(i, m, Direction::Down), b_index(i)).is_yes());
    }
    CHECK_THROWS_AS(gadgets::tail_witness(m - 1, m), Error);
    CHECK_THROWS_AS(gadgets::tail_witness(m, m, Direction::Down), Error);
  }
}

TEST_CASE("benign intersection and join") {
  auto f  = gadgets::free_bc();
  auto a1 = Subgroup::free(f, {w("b")});
  auto a2 = Subgroup::free(f, {w("c")});

  auto bi = gadgets::benign_intersection(f, {{f, a1}, {f, a2}});
  REQUIRE(bi.h);
  CHECK(bi.h->automaton()->rank() == 0);
  CHECK(bi.stable.size() == 2);
  CHECK(validate(bi.k).empty());
  CHECK(bi.l->member(w("(b c)^(t1 t2)")).is_yes());
  CHECK(bi.l->member(w("b")).is_no());
  CHECK(bi.l->member(w("c")).is_no());

  auto bj = gadgets::benign_join(f, {{f, a1}, {f, a2}});
  REQUIRE(bj.h);
  CHECK(bj.h->automaton()->is_whole());
  CHECK(bj.l->generators().size() == 4);
  CHECK(bj.l->member(w("b c")).is_yes());

  auto one = gadgets::benign_intersection(f, {{f, Subgroup::free(f, {w("b"), w("c^2")})}});
  CHECK(one.l->member(w("c^2")).is_yes());
  CHECK(one.l->member(w("c")).is_no());
}

TEST_CASE("the two-tail example") {
  for (std::int64_t m : {0, 2}) {
    auto ex = gadgets::example_5_4(m);
    CHECK(ex.l->generators().size() == 4);
    CHECK(validate(ex.k).empty());
    auto p = presentation(ex.k);
    CHECK(p.generators.size() == 8);
    CHECK(p.relators.size() == 14);
    CHECK(ex.h->member(b_index(m + 4)).is_yes());
    CHECK(ex.h->member(b_index(-3)).is_yes());
    if (m > 0) {
      CHECK(ex.h->member(b_index(m - 1)).is_no());
    }
    CHECK(ex.h->member(b_index(0)).is_yes() == (m == 0));

    auto ea = gadgets::example_5_4(m, true);
    CHECK(ea.l->generators().size() == 5);
    CHECK(ea.k->alphabet().contains(Symbol::intern("a")));
    CHECK(ea.h->member(w("a") * b_index(-1)).is_yes());
  }
  CHECK_THROWS_AS(gadgets::example_5_4(-1), Error);
}
