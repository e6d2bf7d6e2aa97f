#include "fcw/gadgets.hpp"

#include <algorithm>

namespace fcw::gadgets {

  namespace {

    Symbol sym_a() {
      static Symbol const s = Symbol::intern("a");
      return s;
    }
    Symbol sym_b() {
      static Symbol const s = Symbol::intern("b");
      return s;
    }
    Symbol sym_c() {
      static Symbol const s = Symbol::intern("c");
      return s;
    }

    std::string index_name(std::int64_t m) {
      return m < 0 ? "n" + std::to_string(-m) : std::to_string(m);
    }

  }  // namespace

  Word b_index(std::int64_t i) {
    return Word::letter(sym_b()).conjugate(Word::letter(sym_c(), i));
  }

  Word b_seq(FinSupportSeq const& f) {
    Word out;
    for (auto const& [i, e] : f.entries()) {
      out *= b_index(i).pow(e);
    }
    return out;
  }

  Word a_seq(FinSupportSeq const& f) {
    return Word::letter(sym_a()).conjugate(b_seq(f));
  }

  std::optional<std::pair<std::int64_t, std::int64_t>> b_index_range(Word const& w) {
    std::optional<std::pair<std::int64_t, std::int64_t>> out;
    std::int64_t                                         height = 0;
    for (auto const& s : w.syllables()) {
      if (s.symbol == sym_c()) {
        height += s.exponent;
      } else if (s.symbol == sym_b()) {
        std::int64_t i = -height;
        if (!out) {
          out.emplace(i, i);
        } else {
          out->first  = std::min(out->first, i);
          out->second = std::max(out->second, i);
        }
      }
    }
    return out;
  }

  NodePtr free_bc(std::string name) {
    return make_free(std::move(name), {"b", "c"});
  }

  std::pair<std::string, std::string> stable_names(std::int64_t m, std::string const& suffix) {
    std::string t = "t" + index_name(m) + suffix;
    return {t, t + "'"};
  }

  stallings::Morphism xi(std::int64_t m) {
    Alphabet bc{sym_b(), sym_c()};
    return stallings::Morphism(
        bc, {Word::letter(sym_b()), Word::letter(sym_c())}, {b_index(1 - m), Word::letter(sym_c(), 2)});
  }

  stallings::Morphism xi_prime(std::int64_t m) {
    Alphabet bc{sym_b(), sym_c()};
    return stallings::Morphism(
        bc, {Word::letter(sym_b()), Word::letter(sym_c())}, {b_index(-m), Word::letter(sym_c(), 2)});
  }

  NodePtr Xi(std::int64_t m, NodePtr base, std::string const& suffix) {
    if (!base) {
      base = free_bc();
    }
    auto [t, tp] = stable_names(m, suffix);
    auto whole   = Subgroup::free(base, {Word::letter(sym_b()), Word::letter(sym_c())}, "F");
    auto phi     = xi(m);
    auto psi     = xi_prime(m);
    auto img     = Subgroup::free(base, phi.images(), "xi(F)");
    auto img2    = Subgroup::free(base, psi.images(), "xi'(F)");
    return make_hnn("Xi" + index_name(m) + suffix,
                    base,
                    {{Symbol::intern(t), whole, img, phi}, {Symbol::intern(tp), whole, img2, psi}});
  }

  NodePtr Theta(std::int64_t m) {
    return make_free_product("Theta" + index_name(m), make_free("A", {"a"}), Xi(m));
  }

  GeneratorStream tail_stream(std::int64_t m, Direction dir) {
    GeneratorStream s;
    if (dir == Direction::Up) {
      s.description = "tail(" + std::to_string(m) + ", up)";
      s.rays.push_back({m, 1});
    } else {
      s.description = "tail(" + std::to_string(m) + ", down)";
      s.rays.push_back({m - 1, -1});
    }
    s.rule        = b_index;
    s.index_range = b_index_range;
    return s;
  }

  SubgroupPtr tail_subgroup(NodePtr base, std::int64_t m, Direction dir) {
    auto s    = tail_stream(m, dir);
    auto name = s.description;
    return Subgroup::stream(std::move(base), std::move(s), std::move(name));
  }

  Word tail_witness(std::int64_t i, std::int64_t m, Direction dir, std::string const& suffix) {
    std::int64_t seed = dir == Direction::Up ? m : m - 1;
    if (dir == Direction::Up ? i < m : i > m - 1) {
      throw Error("tail_witness: index " + std::to_string(i) + " is on the wrong side of "
                  + std::to_string(m));
    }
    if (i == seed) {
      return b_index(i);
    }
    auto [t, tp] = stable_names(m, suffix);
    // b_j^t = b_{2j-m+1}, b_j^t' = b_{2j-m}
    if ((i - m) % 2 == 0) {
      return tail_witness((i + m) / 2, m, dir, suffix).conjugate(Word::letter(tp));
    }
    return tail_witness((i + m - 1) / 2, m, dir, suffix).conjugate(Word::letter(t));
  }

  SubgroupPtr xi_closure(NodePtr const& xi_node, std::int64_t m, Direction dir) {
    auto        g = tail_subgroup(xi_node->base(), m, dir);
    std::string name =
        dir == Direction::Up ? "L" + index_name(m) : "L" + index_name(m) + "down";
    return Subgroup::stable_closure(xi_node, g, {}, {}, name);
  }

  SubgroupPtr theta_closure(NodePtr const& theta, std::int64_t m, Direction dir) {
    auto a = Subgroup::free(theta->left(), {Word::letter(sym_a())}, "<a>");
    auto l = xi_closure(theta->right(), m, dir);
    return Subgroup::amalgam_closure(theta, a, l, "aL");
  }

  namespace {

    BenignWitness benign_star(NodePtr                 g,
                              std::vector<BenignPart> parts,
                              std::string const&      letter,
                              std::string const&      star_name) {
      std::vector<StarPart> sp;
      BenignWitness         out;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        Symbol t = Symbol::intern(letter + std::to_string(i + 1));
        sp.push_back({parts[i].k, parts[i].l, t});
        out.stable.push_back(t);
      }
      out.g = g;
      out.k = make_star(star_name, g, std::move(sp));
      return out;
    }

    std::vector<stallings::SubgroupAutomaton const*> base_automata(
        NodePtr const&                 g,
        std::vector<BenignPart> const& parts) {
      std::vector<stallings::SubgroupAutomaton const*> out;
      for (auto const& p : parts) {
        if (p.k != g || !p.l->automaton()) {
          return {};
        }
        out.push_back(p.l->automaton().get());
      }
      return out;
    }

  }  // namespace

  BenignWitness benign_intersection(NodePtr g, std::vector<BenignPart> parts, std::string const& letter) {
    auto autos = base_automata(g, parts);
    auto out   = benign_star(g, parts, letter, "KI");
    Word by;
    for (Symbol t : out.stable) {
      by.append(t, 1);
    }
    out.l = Subgroup::conjugate(Subgroup::factor(out.k, g), by, "LI");
    if (!autos.empty()) {
      auto meet = *autos[0];
      for (std::size_t i = 1; i < autos.size(); ++i) {
        meet = stallings::intersect(meet, *autos[i]);
      }
      out.h = Subgroup::free(g, meet.basis(), "I");
    }
    return out;
  }

  BenignWitness benign_join(NodePtr g, std::vector<BenignPart> parts, std::string const& letter) {
    auto              autos = base_automata(g, parts);
    auto              out   = benign_star(g, parts, letter, "KJ");
    std::vector<Word> gens;
    for (Symbol t : out.stable) {
      for (Symbol x : g->symbols()) {
        gens.push_back(Word::letter(x).conjugate(Word::letter(t)));
      }
    }
    out.l = Subgroup::bounded(out.k, std::move(gens), {}, "LJ");
    if (!autos.empty()) {
      std::vector<Word> gens_j;
      for (auto const& p : parts) {
        gens_j.insert(gens_j.end(), p.l->generators().begin(), p.l->generators().end());
      }
      out.h = Subgroup::free(g, std::move(gens_j), "J");
    }
    return out;
  }

  BenignWitness example_5_4(std::int64_t m, bool with_a) {
    if (m < 0) {
      throw Error("the two-tail example is built for m >= 0 only");
    }
    NodePtr     base = free_bc("M");
    NodePtr     xm   = Xi(m, base);
    NodePtr     x0   = Xi(0, base, m == 0 ? "v" : "");
    SubgroupPtr l1   = xi_closure(xm, m, Direction::Up);
    auto        g2   = tail_subgroup(base, 0, Direction::Down);
    SubgroupPtr l2   = Subgroup::stable_closure(x0, g2, {}, {}, "L0down");

    Symbol u  = Symbol::intern("u");
    Symbol v  = Symbol::intern("v");
    auto   kj = make_star("KJ", base, {{xm, l1, u}, {x0, l2, v}});

    std::vector<Word> lj;
    for (Symbol t : {u, v}) {
      for (Symbol x : {sym_b(), sym_c()}) {
        lj.push_back(Word::letter(x).conjugate(Word::letter(t)));
      }
    }

    GeneratorStream h;
    h.description = "<..., b_-2, b_-1; b_" + std::to_string(m) + ", b_" + std::to_string(m + 1)
                    + ", ...>";
    h.rays        = {{m, 1}, {-1, -1}};
    h.rule        = b_index;
    h.index_range = b_index_range;

    BenignWitness out;
    out.stable = {u, v};
    if (!with_a) {
      out.g = base;
      out.k = kj;
      out.h = Subgroup::stream(base, std::move(h), "H");
      out.l = Subgroup::bounded(kj, std::move(lj), {}, "LJ");
      return out;
    }
    out.g = make_free("G", {"a", "b", "c"});
    out.k = make_free_product("AKJ", make_free("A", {"a"}), kj);
    h.fixed.push_back(Word::letter(sym_a()));
    h.description = "<a> * " + h.description;
    out.h         = Subgroup::stream(out.g, std::move(h), "H");
    lj.insert(lj.begin(), Word::letter(sym_a()));
    out.l = Subgroup::bounded(out.k, std::move(lj), {}, "L");
    return out;
  }

}  // namespace fcw::gadgets
