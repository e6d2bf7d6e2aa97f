#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fcw/scheme.hpp"
#include "fcw/subgroup.hpp"
#include "fcw/words.hpp"

namespace fcw::gadgets {

  enum class Direction { Up, Down };

  //! b_i = c^-i b c^i
  Word b_index(std::int64_t i);
  //! Product of b_i^f(i) in increasing i.
  Word b_seq(FinSupportSeq const& f);
  //! a^(b_f)
  Word a_seq(FinSupportSeq const& f);

  //! Smallest and largest i such that b occurs in w as part of some b_i,
  //! i.e. minus the c-exponent sum of the prefix before each b syllable.
  std::optional<std::pair<std::int64_t, std::int64_t>> b_index_range(Word const& w);

  //! Free group on b, c.
  NodePtr free_bc(std::string name = "F");

  //! Names of the two stable letters of Xi(m): t<m><suffix> and its primed
  //! twin. Negative m is written with an 'n', as in tn2.
  std::pair<std::string, std::string> stable_names(std::int64_t m, std::string const& suffix = {});

  //! xi_m: b -> b_{1-m}, c -> c^2 on <b, c>.
  stallings::Morphism xi(std::int64_t m);
  //! xi'_m: b -> b_{-m}, c -> c^2.
  stallings::Morphism xi_prime(std::int64_t m);

  //! <b, c> *_{xi_m, xi'_m} (t_m, t'_m) over `base` (a fresh F(b, c) if
  //! null).
  NodePtr Xi(std::int64_t m, NodePtr base = nullptr, std::string const& suffix = {});
  //! <a> * Xi(m)
  NodePtr Theta(std::int64_t m);

  //! <b_m, b_{m+1}, ...> (Up) or <b_{m-1}, b_{m-2}, ...> (Down).
  GeneratorStream tail_stream(std::int64_t m, Direction dir);
  SubgroupPtr     tail_subgroup(NodePtr base, std::int64_t m, Direction dir);

  //! A word over {b_m, t_m, t'_m} (Up) or {b_{m-1}, t_m, t'_m} (Down) equal
  //! to b_i in Xi(m). Throws Error if i lies on the wrong side of m.
  Word tail_witness(std::int64_t       i,
                    std::int64_t       m,
                    Direction          dir    = Direction::Up,
                    std::string const& suffix = {});

  //! <b_m, t_m, t'_m> (Up) or <b_{m-1}, t_m, t'_m> (Down) in the Xi node
  //! `xi_node` built for this m, decided by peeling against the tail
  //! stream.
  SubgroupPtr xi_closure(NodePtr const& xi_node, std::int64_t m, Direction dir);
  //! <a, b_m, t_m, t'_m> in Theta(m).
  SubgroupPtr theta_closure(NodePtr const& theta, std::int64_t m, Direction dir);

  //! G embeds in K by the identity on symbols; the claim under test is
  //! w in H  <=>  w in L  for words w over G.
  struct BenignWitness {
    NodePtr             g;
    SubgroupPtr         h;
    NodePtr             k;
    SubgroupPtr         l;
    std::vector<Symbol> stable;
  };

  struct BenignPart {
    NodePtr     k;
    SubgroupPtr l;
  };

  //! K = star(G; (K_i, L_i, t_i)), L = G^(t_1 ... t_r). H is the
  //! intersection of the L_i when every K_i is G itself, else null.
  BenignWitness benign_intersection(NodePtr                 g,
                                    std::vector<BenignPart> parts,
                                    std::string const&      letter = "t");
  //! As above with L = <G^t_1, ..., G^t_r> and H the join of the L_i.
  BenignWitness benign_join(NodePtr                 g,
                            std::vector<BenignPart> parts,
                            std::string const&      letter = "t");

  //! (Xi_m *_{L_1} u) *_{<b,c>} (Xi_0 *_{L_2} v) with L_J = <b^u, c^u, b^v,
  //! c^v>. With `with_a` the group is <a> * K_J, G = <a, b, c> and a joins
  //! both H and L. Throws Error for m < 0.
  BenignWitness example_5_4(std::int64_t m, bool with_a = false);

}  // namespace fcw::gadgets
