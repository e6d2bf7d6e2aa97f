#include <doctest.h>

#include <random>

#include "fcw/gadgets.hpp"
#include "fcw/rewrite.hpp"

using namespace fcw;

namespace {

  Word w(std::string_view s) { return parse_word(s); }

  Word random_word(std::mt19937_64& rng, std::vector<Symbol> const& gens, std::size_t len) {
    Word out;
    while (out.length() < len) {
      out.append(gens[rng() % gens.size()], rng() % 2 ? 1 : -1);
    }
    return out;
  }

  NodePtr fixing_b() {
    auto f = gadgets::free_bc();
    return make_fixing_hnn("H", f, {{"t", Subgroup::free(f, {w("b")})}});
  }

}  // namespace

TEST_CASE("Britton reduction in Xi_0") {
  auto x  = gadgets::Xi(0);
  auto nf = britton_reduce(x, w("t0^-1 b t0"));
  CHECK(nf.head == w("c^-1 b c"));
  CHECK(nf.tail.empty());
  auto nf2 = britton_reduce(x, w("t0^-1 b c t0"));
  CHECK(nf2.head == w("c^-1 b c^3"));
  CHECK(nf2.tail.empty());
  CHECK(normal_form(x, w("t0 c^-1 b c t0^-1")) == w("b"));
  CHECK(normal_form(x, w("t0' b t0'^-1")) == w("b"));
}

TEST_CASE("Britton reduction without a pinch") {
  auto h  = fixing_b();
  auto nf = britton_reduce(h, w("t^-1 c t"));
  CHECK(nf.head.is_identity());
  REQUIRE(nf.tail.size() == 2);
  CHECK(nf.tail[0].eps == -1);
  CHECK(nf.tail[0].l == w("c"));
  CHECK(nf.tail[1].eps == 1);
  CHECK(nf.tail[1].l.is_identity());
  CHECK(nf.expand() == w("t^-1 c t"));
  CHECK(is_trivial(h, w("t^-1 c t c^-1")).is_no());
  CHECK(is_trivial(h, w("t^-1 b t b^-1")).is_yes());
}

TEST_CASE("normal forms do not depend on the spelling") {
  auto h = fixing_b();
  CHECK(normal_form(h, w("b c t b^2")) == normal_form(h, w("b c b^2 t")));
  CHECK(normal_form(h, w("t^-1 b^3 t c")) == w("b^3 c"));
  auto x = gadgets::Xi(2);
  auto [t, tp] = gadgets::stable_names(2);
  Word tw = Word::letter(t), tpw = Word::letter(tp);
  CHECK(equal(x, gadgets::b_index(2).conjugate(tw), gadgets::b_index(3)).is_yes());
  CHECK(equal(x, gadgets::b_index(2).conjugate(tpw), gadgets::b_index(2)).is_yes());
  CHECK(equal(x, gadgets::b_index(4).conjugate(tw), gadgets::b_index(7)).is_yes());
  CHECK(equal(x, gadgets::b_index(4).conjugate(tpw), gadgets::b_index(6)).is_yes());
}

TEST_CASE("amalgam reduction") {
  auto fa = make_free("A", {"a"});
  auto p  = make_free_product("P", fa, gadgets::free_bc());
  std::vector<AmalgamNormalForm::Entry> alt{{0, w("a")}, {1, w("b")}, {0, w("a^-1")}};
  auto nf = amalgam_reduce(p, alt);
  CHECK(nf.head.is_identity());
  CHECK(nf.tail == alt);
  auto id = amalgam_reduce(p, std::vector<AmalgamNormalForm::Entry>{{0, Word()}});
  CHECK(id.head.is_identity());
  CHECK(id.tail.empty());
  CHECK(factor_chunks(p, w("a b c a^2")).size() == 3);
}

TEST_CASE("amalgamated letters migrate across the factors") {
  auto g   = gadgets::free_bc("G");
  auto h   = make_free("H", {"d", "e"});
  auto a   = Subgroup::free(g, {w("b")});
  auto bsg = Subgroup::free(h, {w("d")});
  Alphabet all = g->alphabet();
  all.insert(h->alphabet().begin(), h->alphabet().end());
  stallings::Morphism phi(all, {w("b")}, {w("d")});
  auto y = make_amalgam("Y", g, h, a, bsg, phi);
  CHECK(validate(y).empty());
  auto n1 = amalgam_reduce(y, w("c b e"));
  auto n2 = amalgam_reduce(y, w("c d e"));
  CHECK(n1 == n2);
  CHECK(n1.tail.size() == 2);
  CHECK(is_trivial(y, w("b d^-1")).is_yes());
  CHECK(is_trivial(y, w("c e c^-1 e^-1")).is_no());
  CHECK(is_trivial(y, w("c b c^-1 d^-1")).is_no());
  CHECK(equal(y, w("c b c^-1"), w("c d c^-1")).is_yes());
}

TEST_CASE("remark: conjugates by two letters agree on G") {
  auto f = gadgets::free_bc();
  auto g = Subgroup::free(f, {w("b"), w("c")});
  auto k = make_fixing_hnn("K", f, {{"t1", g}, {"t2", g}});
  CHECK(equal(k, w("b^(t1)"), w("b^(t2)")).is_yes());
  CHECK(equal(k, w("(b c^2)^(t1)"), w("(b c^2)^(t2)")).is_yes());
  CHECK(is_trivial(k, w("t1 t2^-1")).is_no());
}

TEST_CASE("w w^-1 is trivial and stable-letter exponent sums certify nontriviality") {
  std::mt19937_64 rng(8);
  std::vector<NodePtr> nodes{gadgets::Xi(0), gadgets::Xi(3), fixing_b()};
  for (auto const& n : nodes) {
    std::vector<Symbol> gens = n->symbols();
    for (int k = 0; k < 200; ++k) {
      Word x = random_word(rng, gens, rng() % 12);
      CHECK(is_trivial(n, x * x.inverse()).is_yes());
      Word y = random_word(rng, gens, 1 + rng() % 10);
      auto nf = normal_form(n, y);
      CHECK(is_trivial(n, nf * y.inverse()).is_yes());
      for (auto const& l : n->letters()) {
        if (y.exponent_sum(l.stable) != 0) {
          CHECK(is_trivial(n, y).is_no());
        }
      }
    }
    for (Symbol s : gens) {
      CHECK(is_trivial(n, Word::letter(s)).is_no());
    }
  }
}

TEST_CASE("describe_normal_form") {
  CHECK(describe_normal_form(gadgets::free_bc(), w("b b^-1 c")) == "c");
  CHECK(describe_normal_form(gadgets::Xi(0), w("t0^-1 b t0")) == "c^-1 b c");
}
