#pragma once

#include <string>
#include <vector>

#include "fcw/scheme.hpp"
#include "fcw/subgroup.hpp"
#include "fcw/words.hpp"

namespace fcw {

  //! head t^e1 l1 t^e2 l2 ... with each l a coset representative of A (after
  //! t^-1) or B (after t). The head and every l are base elements in their
  //! own normal form.
  struct HnnNormalForm {
    struct Entry {
      std::size_t letter = 0;  // index into the node's letters()
      Symbol      stable;
      int         eps = 1;
      Word        l;

      friend bool operator==(Entry const&, Entry const&) = default;
    };

    Word               head;
    std::vector<Entry> tail;

    Word        expand() const;
    std::string str() const;

    friend bool operator==(HnnNormalForm const&, HnnNormalForm const&) = default;
  };

  //! head l1 l2 ... ln with the head in the amalgamated subgroup (written in
  //! the left factor) and consecutive l from different factors.
  struct AmalgamNormalForm {
    struct Entry {
      int  side = 0;  // 0 left, 1 right
      Word l;

      friend bool operator==(Entry const&, Entry const&) = default;
    };

    Word               head;
    std::vector<Entry> tail;

    Word        expand() const;
    std::string str() const;

    friend bool operator==(AmalgamNormalForm const&, AmalgamNormalForm const&) = default;
  };

  //! Throws UnsupportedMembership if a pinch test is undecided.
  HnnNormalForm britton_reduce(NodePtr const& hnn, Word const& w);

  //! Cuts w into maximal single-factor chunks. Symbols shared by both
  //! factors join the chunk before them (or the first chunk).
  std::vector<AmalgamNormalForm::Entry> factor_chunks(NodePtr const& amalgam, Word const& w);

  AmalgamNormalForm amalgam_reduce(NodePtr const&                               amalgam,
                                   std::vector<AmalgamNormalForm::Entry> const& factors);
  AmalgamNormalForm amalgam_reduce(NodePtr const& amalgam, Word const& w);

  //! Canonical word for w; throws UnsupportedMembership when undecided.
  Word normal_form(NodePtr const& s, Word const& w);

  Verdict is_trivial(NodePtr const& s, Word const& w);
  Verdict equal(NodePtr const& s, Word const& x, Word const& y);

  //! Text form of a normal form: the expanded word for free nodes, the
  //! head and tail syllables otherwise.
  std::string describe_normal_form(NodePtr const& s, Word const& w);

}  // namespace fcw
