#include <doctest.h>

#include "fcw/dsl.hpp"
#include "fcw/gadgets.hpp"
#include "fcw/rewrite.hpp"

using namespace fcw;

namespace {

  Word w(std::string_view s) { return parse_word(s); }

  constexpr char const* kXi = R"(# Xi_0 by hand
group F = free(b, c)
sub All = subgroup(F; b, c)
sub Img = subgroup(F; c^-1 b c, c^2)
sub Img2 = subgroup(F; b, c^2)
iso xi : All -> Img on { b -> c^-1 b c, c -> c^2 }
iso xip : All -> Img2 on { b -> b, c -> c^2 }
group X = hnn(F; t : All -> Img by xi, u : All -> Img2 by xip)
sub T = tail(F; 0, up)
sub L = closure(X; T; t, u)
)";

}  // namespace

TEST_CASE("a hand-written Xi_0 parses and validates") {
  auto ws = parse_workspace(kXi);
  CHECK(ws.check().empty());
  CHECK(ws.group_names() == std::vector<std::string>{"F", "X"});
  auto x = ws.group("X");
  CHECK(normal_form(x, w("t^-1 b t")) == w("c^-1 b c"));
  auto l = ws.subgroup("L");
  CHECK(l->member(gadgets::b_index(9)).is_yes());
  CHECK(l->member(gadgets::b_index(-1)).is_no());
}

TEST_CASE("CRLF line endings and comments") {
  auto ws = parse_workspace("group F = free(b, c)\r\n# note\r\nsub A = subgroup(F; b, c^2)  # trailing\r\n");
  CHECK(ws.has_subgroup("A"));
  CHECK(ws.subgroup("A")->member(w("c^2 b c^-2")).is_yes());
}

TEST_CASE("fixing letters, amalgams, stars, conjugates and joins") {
  auto ws = parse_workspace(R"(
group G = free(b, c)
sub A = subgroup(G; b)
sub B = subgroup(G; c)
group K = hnn(G; t1 fixes A, t2 fixes B)
group S = star(G; (G, A, s1), (G, B, s2))
group H = free(d, e)
sub D = subgroup(H; d)
iso p : A -> D on { b -> d }
group Y = amalgam(G, H; over A ~ D by p)
group P = amalgam(G, H)
sub GK = subgroup(K; b, c)
sub C = conjugate(GK; t1 t2)
sub J = join(A, B)
sub Q = bounded(K; b^(t1), c^(t2))
)");
  CHECK(ws.check().empty());
  CHECK(ws.group("S")->kind() == NodeKind::Star);
  CHECK(is_trivial(ws.group("Y"), w("b d^-1")).is_yes());
  CHECK(is_trivial(ws.group("P"), w("b d^-1")).is_no());
  CHECK(ws.subgroup("C")->member(w("b")).is_no());
  CHECK(ws.subgroup("J")->member(w("b c")).is_yes());
  CHECK(ws.subgroup("Q")->member(w("b c")).is_yes());
}

TEST_CASE("parse errors point at the offending token") {
  auto at = [](std::string_view text) -> std::pair<std::size_t, std::size_t> {
    try {
      parse_workspace(text);
    } catch (ParseError const& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  CHECK(at("group F = free(b, c)\nsub A = subgroup(F; b, q)\n") == std::pair<std::size_t, std::size_t>{2, 24});
  CHECK(at("group F = free(b, c)\ngroup F = free(d)\n").first == 2);
  CHECK(at("group F = fre(b)\n") == std::pair<std::size_t, std::size_t>{1, 11});
  CHECK(at("sub A = subgroup(Z; b)\n").first == 1);
  CHECK(at("group F = free(b, c\n").first == 1);
  CHECK(at("group F = free(b, c)\nwhat\n").first == 2);
}

TEST_CASE("validation problems surface through check") {
  auto ws = parse_workspace(R"(
group G = free(b, c)
sub A = subgroup(G; b)
sub B = subgroup(G; c)
group Bad = hnn(G; t : A -> B)
)");
  CHECK_FALSE(ws.check().empty());
}

TEST_CASE("emitted text re-parses to the same presentation") {
  for (std::int64_t m : {0, 2}) {
    for (bool with_a : {false, true}) {
      auto ex   = gadgets::example_5_4(m, with_a);
      auto text = emit_dsl(ex.k, {ex.l});
      auto ws   = parse_workspace(text);
      CHECK(ws.check().empty());
      auto root = ws.group(ws.group_names().back());
      CHECK(presentation(root).relators.size() == presentation(ex.k).relators.size());
      CHECK(presentation(root).generators == presentation(ex.k).generators);
    }
  }
  auto x    = gadgets::Xi(3);
  auto l    = gadgets::xi_closure(x, 3, gadgets::Direction::Up);
  auto ws   = parse_workspace(emit_dsl(x, {l}));
  auto name = ws.subgroup_names().back();
  CHECK(ws.subgroup(name)->member(gadgets::b_index(11)).is_yes());
  CHECK(ws.subgroup(name)->member(gadgets::b_index(2)).is_no());
}
