#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fcw/scheme.hpp"
#include "fcw/stallings.hpp"
#include "fcw/words.hpp"

namespace fcw {

  //! Generators of an infinitely generated subgroup: finitely many fixed
  //! words plus rays of indices fed to `rule`.
  struct GeneratorStream {
    struct Ray {
      std::int64_t start     = 0;
      int          direction = 1;  // +1: start, start+1, ...; -1: start, start-1, ...
    };

    std::string                         description;
    std::vector<Word>                   fixed;
    std::vector<Ray>                    rays;
    std::function<Word(std::int64_t)> rule;
    //! Smallest and largest index a word can involve; absent if the word
    //! involves none. Used to pick a truncation that decides membership.
    std::function<std::optional<std::pair<std::int64_t, std::int64_t>>(Word const&)>
        index_range;

    //! Fixed words followed by the first k indices of every ray.
    std::vector<Word> truncate(std::size_t k) const;
    //! Fixed words and the first element of every ray.
    std::vector<Word> seeds() const { return truncate(1); }
    //! Truncation length needed to contain every index in [lo, hi].
    std::size_t cover(std::int64_t lo, std::int64_t hi) const;
  };

  //! Product of powers of subgroup elements; multiplying it out gives the
  //! queried element in the ambient group.
  using Witness = std::vector<std::pair<Word, std::int64_t>>;

  Word        evaluate(Witness const& w);
  std::string to_string(Witness const& w);

  struct Verdict {
    enum class Kind { Yes, No, Unknown };

    Kind        kind = Kind::Unknown;
    Witness     witness;
    std::string note;

    static Verdict yes(Witness w = {}) { return {Kind::Yes, std::move(w), {}}; }
    static Verdict no() { return {Kind::No, {}, {}}; }
    static Verdict unknown(std::string why = {}) {
      return {Kind::Unknown, {}, std::move(why)};
    }
    bool is_yes() const noexcept { return kind == Kind::Yes; }
    bool is_no() const noexcept { return kind == Kind::No; }
    bool is_unknown() const noexcept { return kind == Kind::Unknown; }
    std::string str() const;
  };

  //! x = u * l with u in the subgroup. `member` holds iff x is in the
  //! subgroup, in which case l is the identity. For canonical splits l is
  //! the fixed representative of the coset; otherwise it is x itself.
  struct Split {
    Word u;
    Word l;
    bool member    = false;
    bool canonical = true;
  };

  enum class Strategy {
    StallingsFree,
    Stream,
    Factor,
    StableClosure,
    AmalgamClosure,
    Conjugate,
    BoundedSearch,
  };

  std::string_view to_string(Strategy s);

  struct SearchBudget {
    std::size_t depth    = 12;
    std::size_t max_ball = 200000;
  };

  //! Subgroup of a scheme's group with a membership strategy.
  class Subgroup : public std::enable_shared_from_this<Subgroup> {
   public:
    //! Exact membership by folding; `ambient` must be a free node.
    static SubgroupPtr free(NodePtr ambient, std::vector<Word> generators, std::string name = {});
    //! Infinitely generated subgroup of a free node.
    static SubgroupPtr stream(NodePtr ambient, GeneratorStream s, std::string name = {});
    //! The subgroup `factor`, a node occurring inside `ambient`.
    static SubgroupPtr factor(NodePtr ambient, NodePtr factor, std::string name = {});
    //! <G', T> in the HNN node `hnn`, G' over its (free) base. If
    //! `generators` is empty they default to G''s seeds plus T.
    static SubgroupPtr stable_closure(NodePtr             hnn,
                                      SubgroupPtr         base_part,
                                      std::vector<Symbol> letters,
                                      std::vector<Word>   generators = {},
                                      std::string         name       = {});
    //! <G', H'> in the amalgam node `amalgam`.
    static SubgroupPtr amalgam_closure(NodePtr     amalgam,
                                       SubgroupPtr left_part,
                                       SubgroupPtr right_part,
                                       std::string name = {});
    //! inner^by = by^-1 inner by.
    static SubgroupPtr conjugate(SubgroupPtr inner, Word by, std::string name = {});
    static SubgroupPtr bounded(NodePtr           ambient,
                               std::vector<Word> generators,
                               SearchBudget      budget = {},
                               std::string       name   = {});
    static SubgroupPtr trivial(NodePtr ambient, std::string name = {});
    //! Picks a strategy: folding over free nodes, Factor when the words are
    //! exactly the symbols of a node inside `ambient`, exact triviality for
    //! an empty list, bounded search otherwise.
    static SubgroupPtr automatic(NodePtr ambient, std::vector<Word> generators, std::string name = {});

    NodePtr const&     ambient() const noexcept { return ambient_; }
    std::string const& name() const noexcept { return name_; }
    Strategy           strategy() const noexcept { return strategy_; }
    //! Declared generators; for a stream these are its seeds.
    std::vector<Word> const& generators() const noexcept { return generators_; }
    bool                     finitely_generated() const noexcept { return !stream_; }
    bool                     is_exact() const noexcept {
      return strategy_ != Strategy::BoundedSearch || trivial_;
    }
    //! Known to be the trivial subgroup.
    bool is_trivial_subgroup() const noexcept { return trivial_; }
    std::optional<GeneratorStream> const& stream_data() const noexcept { return stream_; }
    //! Folded automaton for StallingsFree handles; null otherwise.
    std::shared_ptr<stallings::SubgroupAutomaton const> const& automaton() const noexcept {
      return automaton_;
    }
    NodePtr const&             factor_node() const noexcept { return factor_; }
    SubgroupPtr const&         inner() const noexcept { return inner_; }
    SubgroupPtr const&         left_part() const noexcept { return inner_; }
    SubgroupPtr const&         right_part() const noexcept { return right_; }
    std::vector<Symbol> const& letters() const noexcept { return letters_; }
    Word const&                conjugator() const noexcept { return by_; }
    SearchBudget const&        budget() const noexcept { return budget_; }

    //! Automaton of the first k stream generators (or of the generators of
    //! a StallingsFree handle, ignoring k).
    stallings::SubgroupAutomaton truncation(std::size_t k) const;

    Verdict member(Word const& w) const;
    //! Throws UnsupportedMembership when membership is undecided.
    Split split(Word const& x) const;

   private:
    Subgroup() = default;

    Verdict member_stream(Word const& w) const;
    Verdict member_factor(Word const& w) const;
    Verdict member_stable(Word const& w) const;
    Verdict member_amalgam(Word const& w) const;
    Verdict member_bounded(Word const& w) const;
    Split   split_factor(Word const& x) const;
    //! x = u * l with u in `assoc` and l in this (free, base-level) subgroup.
    std::optional<std::pair<Word, Word>> split_into(Subgroup const& assoc,
                                                    Word const&     x) const;

    struct Ball {
      std::unordered_map<Word, std::size_t> index;
      std::vector<Word>                     element;
      std::vector<std::size_t>              parent;
      std::vector<std::size_t>              gen;
      std::vector<int>                      sign;
      std::vector<std::size_t>              dist;
      std::size_t                           radius = 0;
    };
    Ball const& ball() const;
    Witness     ball_path(std::size_t i) const;

    NodePtr                                             ambient_;
    std::string                                         name_;
    Strategy                                            strategy_ = Strategy::StallingsFree;
    std::vector<Word>                                   generators_;
    std::optional<GeneratorStream>                      stream_;
    std::shared_ptr<stallings::SubgroupAutomaton const> automaton_;
    NodePtr                                             factor_;
    std::vector<std::size_t>                            path_;
    SubgroupPtr                                         inner_;
    SubgroupPtr                                         right_;
    std::vector<Symbol>                                 letters_;
    Word                                                by_;
    SearchBudget                                        budget_;
    bool                                                trivial_ = false;

    mutable std::once_flag        ball_once_;
    mutable std::unique_ptr<Ball> ball_;
  };

  inline Verdict member(SubgroupPtr const& h, Word const& w) {
    return h->member(w);
  }

  //! For each stable letter in `letters` (all letters if empty) checks
  //! phi(G' n A) = G' n B. Stream subgroups are checked on the truncation
  //! of length `k`. Throws UnsupportedMembership over a non-free base.
  bool verify_compatibility(SubgroupPtr const&         gprime,
                            NodePtr const&             hnn,
                            std::vector<Symbol> const& letters = {},
                            std::size_t                k       = 8);

  //! Throws AmbientMismatch if the handles live in different nodes.
  SubgroupPtr join(std::vector<SubgroupPtr> const& handles, std::string name = {});
  SubgroupPtr conjugate(SubgroupPtr const& h, Word const& by, std::string name = {});

  //! Expresses w as a product of `generators` in a free group.
  std::optional<Witness> express_over(Alphabet const&          ambient,
                                      std::vector<Word> const& generators,
                                      Word const&              w);

}  // namespace fcw
