#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fcw/words.hpp"

namespace fcw::stallings {

  //! A freely reduced word over basis indices, run-length encoded.
  using BasisWord = std::vector<std::pair<std::size_t, std::int64_t>>;

  //! Deterministic labelled graph: at most one outgoing and one incoming
  //! edge per (state, symbol).
  struct Digraph {
    std::vector<std::map<Symbol, std::size_t>> out;
    std::vector<std::map<Symbol, std::size_t>> in;

    std::size_t size() const noexcept {
      return out.size();
    }
    std::size_t add_state() {
      out.emplace_back();
      in.emplace_back();
      return out.size() - 1;
    }
    void add_edge(std::size_t from, Symbol x, std::size_t to) {
      out[from][x] = to;
      in[to][x]    = from;
    }
    //! Follows x^sign from `state`.
    std::optional<std::size_t> step(std::size_t state, Symbol x, int sign)
        const;
  };

  //! Folded Stallings graph of a finitely generated subgroup of a free
  //! group. State 0 is the basepoint; states are numbered by breadth-first
  //! search from it with edges visited in name order, so two automata for
  //! the same subgroup are identical.
  class SubgroupAutomaton {
   public:
    //! Trivial subgroup of the free group on `ambient`.
    explicit SubgroupAutomaton(Alphabet ambient = {});

    //! Folds the bouquet of `generators`. Throws UnknownSymbol on a letter
    //! outside `ambient`.
    static SubgroupAutomaton build(Alphabet                ambient,
                                   std::span<Word const> generators);

    Alphabet const& ambient() const noexcept {
      return ambient_;
    }
    std::vector<Word> const& provided_generators() const noexcept {
      return provided_;
    }
    Digraph const& graph() const noexcept {
      return graph_;
    }
    std::size_t state_count() const noexcept {
      return graph_.size();
    }
    std::size_t edge_count() const noexcept;
    //! |edges| - |states| + 1
    std::size_t rank() const noexcept {
      return basis_.size();
    }
    //! Spanning-tree (Nielsen) basis, one element per non-tree edge.
    std::vector<Word> const& basis() const noexcept {
      return basis_;
    }
    //! Label of the spanning-tree path from the basepoint to `state`.
    Word const& tree_word(std::size_t state) const {
      return tree_word_.at(state);
    }
    //! True iff this is the whole free group on ambient().
    bool is_whole() const;

    bool member(Word const& w) const;
    //! Witness over basis(); absent iff w is not a member.
    std::optional<BasisWord> express(Word const& w) const;
    //! Evaluates a basis word.
    Word expand(BasisWord const& bw) const;

    //! Canonical representative r with A*g = A*r: the spanning-tree word of
    //! the state reached by the longest traceable prefix of g, followed by
    //! the untraceable suffix.
    Word coset_rep(Word const& g) const;

    //! Byte-stable Graphviz rendering.
    std::string dot(std::string_view name = "subgroup") const;

   private:
    friend class Builder;
    void check_alphabet(Word const& w) const;

    Alphabet          ambient_;
    std::vector<Word> provided_;
    Digraph           graph_;
    std::vector<Word> tree_word_;
    std::vector<Word> basis_;
    // basis index of each non-tree edge, keyed by its source state
    std::vector<std::map<Symbol, std::size_t>> nontree_;
  };

  //! Longest traceable prefix of w from the basepoint: returns the state
  //! reached and the untraced suffix.
  std::pair<std::size_t, Word> trace_prefix(Digraph const& g,
                                            std::size_t    start,
                                            Word const&    w);

  SubgroupAutomaton intersect(SubgroupAutomaton const& a,
                              SubgroupAutomaton const& b);
  bool              equal(SubgroupAutomaton const& a,
                          SubgroupAutomaton const& b);
  //! a <= b
  bool contains(SubgroupAutomaton const& b, SubgroupAutomaton const& a);
  //! Subgroup generated by the union of both generating sets.
  SubgroupAutomaton join(SubgroupAutomaton const& a,
                         SubgroupAutomaton const& b);

  //! Sizes of the graph searched by split_double(): core states of A plus
  //! the dangling path spelled by the untraceable part of p.
  struct SplitShape {
    std::size_t core_states = 0;
    std::size_t tail_length = 0;
  };
  SplitShape split_shape(SubgroupAutomaton const& a, Word const& p);

  //! Decomposes p = u * l with u in A and l in the subgroup whose folded
  //! graph is `target` (basepoint 0). Absent iff p is not in A * target.
  std::optional<std::pair<Word, Word>> split_double(
      SubgroupAutomaton const& a,
      Digraph const&           target,
      Word const&              p);

  //! Folded bouquet of `keys` whose edges carry words over the keys, so
  //! that reading a member of <keys> spells it as a product of keys.
  class KeyedGraph {
   public:
    //! With `strict`, throws InvalidScheme if the keys satisfy a relation
    //! (so they are not a free basis of the subgroup they generate).
    KeyedGraph(std::vector<Word> const& keys, bool strict);

    //! w as a word over key indices; absent iff w is not in <keys>.
    std::optional<BasisWord> trace(Word const& w) const;

   private:
    struct Edge {
      std::size_t to;
      BasisWord   keys;
    };
    std::vector<std::map<Symbol, Edge>> out_;
    std::vector<std::map<Symbol, Edge>> in_;
  };

  //! Product of words[i]^e over a basis word.
  Word substitute(BasisWord const& bw, std::vector<Word> const& words);

  //! An isomorphism between subgroups of a free group, given on a free
  //! basis of its domain.
  class Morphism {
   public:
    //! Throws InvalidScheme if the keys are not a free basis of the group
    //! they generate or the images do not freely generate theirs.
    Morphism(Alphabet          ambient,
             std::vector<Word> domain_basis,
             std::vector<Word> images);

    SubgroupAutomaton const& domain() const noexcept {
      return *domain_;
    }
    SubgroupAutomaton const& codomain() const noexcept {
      return *codomain_;
    }
    std::vector<Word> const& keys() const noexcept {
      return keys_;
    }
    std::vector<Word> const& images() const noexcept {
      return images_;
    }

    //! Throws NotAMember if w is outside the domain.
    Word                apply(Word const& w) const;
    std::optional<Word> try_apply(Word const& w) const;
    //! Throws NotAMember if w is outside the codomain.
    Word                apply_inverse(Word const& w) const;
    std::optional<Word> try_apply_inverse(Word const& w) const;
    //! phi(S) for S <= domain.
    SubgroupAutomaton image(SubgroupAutomaton const& s) const;
    Morphism          inverse() const;

   private:
    Morphism() = default;

    Alphabet                                 ambient_;
    std::vector<Word>                        keys_;
    std::vector<Word>                        images_;
    std::shared_ptr<SubgroupAutomaton const> domain_;
    std::shared_ptr<SubgroupAutomaton const> codomain_;
    std::shared_ptr<KeyedGraph const>        forward_;
    std::shared_ptr<KeyedGraph const>        backward_;
  };

  Word              apply_morphism(Morphism const& phi, Word const& w);
  SubgroupAutomaton subgroup_image(Morphism const&          phi,
                                   SubgroupAutomaton const& s);

  //! Rank of the subgroup generated by `words`, computed without the
  //! Morphism machinery.
  std::size_t rank_of(Alphabet const& ambient, std::span<Word const> words);

}  // namespace fcw::stallings
