#include <doctest.h>

#include <algorithm>
#include <set>

#include "fcw/gadgets.hpp"
#include "fcw/scheme.hpp"
#include "fcw/subgroup.hpp"

using namespace fcw;

namespace {

  Word w(std::string_view s) { return parse_word(s); }

  bool has_message(std::vector<Diagnostic> const& d, std::string_view text) {
    return std::any_of(d.begin(), d.end(), [&](Diagnostic const& x) { return x.message.find(text) != std::string::npos; });
  }

  std::set<Word> relator_set(Presentation const& p) {
    std::set<Word> out;
    for (auto const& r : p.relators) {
      out.insert(r);
    }
    return out;
  }

}  // namespace

TEST_CASE("free nodes") {
  auto f = make_free("F", {"a", "b", "c"});
  CHECK(validate(f).empty());
  auto p = presentation(f);
  CHECK(p.generators.size() == 3);
  CHECK(p.relators.empty());
  CHECK(f->is_free());
  CHECK(f->symbols().front().name() == "a");
}

TEST_CASE("Xi validates and has four relators") {
  for (std::int64_t m : {0, 3, -2}) {
    auto x = gadgets::Xi(m);
    CHECK(validate(x).empty());
    auto p = presentation(x);
    CHECK(p.generators.size() == 4);
    CHECK(p.relators.size() == 4);
  }
  auto [t, tp] = gadgets::stable_names(-2);
  CHECK(t == "tn2");
  CHECK(tp == "tn2'");
}

TEST_CASE("validation diagnostics") {
  auto l  = make_free("L", {"b", "c"});
  auto r  = make_free("R", {"b", "c", "d"});
  auto y  = make_amalgam("Y", l, r, Subgroup::free(l, {w("b")}), Subgroup::free(r, {w("b"), w("c")}));
  auto dy = validate(y);
  CHECK(has_message(dy, "identity amalgamation requires equal subgroups"));

  auto f  = gadgets::free_bc();
  auto h  = make_hnn("H", f, {{Symbol::intern("t"), Subgroup::free(f, {w("b")}), Subgroup::free(f, {w("c")}), std::nullopt}});
  CHECK(has_message(validate(h), "identity hnn letter requires equal subgroups"));

  auto g2 = make_free("G2", {"x"});
  auto bad = make_hnn("Bad", f, {{Symbol::intern("t"), Subgroup::free(g2, {w("x")}), Subgroup::free(g2, {w("x")}), std::nullopt}});
  CHECK_FALSE(validate(bad).empty());

  CHECK_THROWS_AS(make_hnn("Clash", f, {{Symbol::intern("b"), Subgroup::free(f, {w("b")}), Subgroup::free(f, {w("b")}), std::nullopt}}),
                  InvalidScheme);
}

TEST_CASE("a single-part star is an HNN extension") {
  auto f = gadgets::free_bc();
  auto a = Subgroup::free(f, {w("b")});
  auto s = make_star("S", f, {{f, a, Symbol::intern("t1")}});
  CHECK(validate(s).empty());
  auto e = expand_star(s);
  CHECK(e->kind() == NodeKind::Hnn);
  CHECK(e->letters().size() == 1);
  CHECK_THROWS_AS(expand_star(f), InvalidScheme);
}

TEST_CASE("a two-part star expands to an amalgam over M") {
  auto f  = gadgets::free_bc();
  auto s  = make_star("S", f, {{f, Subgroup::free(f, {w("b")}), Symbol::intern("t1")},
                              {f, Subgroup::free(f, {w("c")}), Symbol::intern("t2")}});
  auto e  = expand_star(s);
  CHECK(e->kind() == NodeKind::Amalgam);
  CHECK(e->left()->kind() == NodeKind::Hnn);
  CHECK(e->right()->kind() == NodeKind::Hnn);
  CHECK(validate(s).empty());
}

TEST_CASE("a star over G with K_i = G presents the multi-letter HNN extension") {
  auto f     = gadgets::free_bc();
  auto a1    = Subgroup::free(f, {w("b")});
  auto a2    = Subgroup::free(f, {w("c")});
  auto a3    = Subgroup::free(f, {w("b"), w("c^2")});
  auto star  = make_star("S", f, {{f, a1, Symbol::intern("t1")}, {f, a2, Symbol::intern("t2")}, {f, a3, Symbol::intern("t3")}});
  auto multi = make_fixing_hnn("M", f, {{"t1", a1}, {"t2", a2}, {"t3", a3}});
  auto ps    = presentation(star);
  auto pm    = presentation(multi);
  CHECK(std::set<Symbol>(ps.generators.begin(), ps.generators.end())
        == std::set<Symbol>(pm.generators.begin(), pm.generators.end()));
  CHECK(relator_set(ps) == relator_set(pm));
}

TEST_CASE("stars reject a shared node that is not inside the parts") {
  auto f = gadgets::free_bc();
  auto g = make_free("G", {"x"});
  CHECK_THROWS_AS(make_star("S", g, {{f, Subgroup::free(f, {w("b")}), Symbol::intern("t")}}), InvalidScheme);
}

TEST_CASE("find_path locates shared nodes") {
  auto base = gadgets::free_bc("M");
  auto x    = gadgets::Xi(1, base);
  auto p    = find_path(x, base.get());
  REQUIRE(p);
  CHECK(p->size() == 1);
  CHECK_FALSE(find_path(base, x.get()));
}

TEST_CASE("presentation text lists generators and relators") {
  auto text = presentation(gadgets::Xi(0)).str();
  CHECK(text.find("t0") != std::string::npos);
  CHECK(text.find("t0'") != std::string::npos);
}
