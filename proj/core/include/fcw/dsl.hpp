#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fcw/scheme.hpp"
#include "fcw/subgroup.hpp"

namespace fcw {

  //! Named groups, subgroups and isomorphisms from one or more scheme
  //! files.
  //!
  //!   group F = free(a, b, c)
  //!   sub A = subgroup(F; b, c^2)
  //!   sub H = tail(F; 3, up)
  //!   iso phi : A -> B on { b -> c^-1 b c, c^2 -> c^2 }
  //!   group X = hnn(F; t1 fixes A, t2 : A2 -> B2 by phi)
  //!   sub L = closure(X; H; t1, t2)
  //!   group Y = amalgam(G, H; over A ~ B by psi)
  //!   group Z = amalgam(G, H)
  //!   group S = star(M; (K1, L1, u), (K2, L2, v))
  //!   sub C = conjugate(A; t1)
  //!   sub J = join(A, B)
  class Workspace {
   public:
    //! Parses `text` and adds its declarations. Throws ParseError with the
    //! line and column of the offending token.
    void load(std::string_view text);

    NodePtr     group(std::string const& name) const;
    SubgroupPtr subgroup(std::string const& name) const;
    bool        has_group(std::string const& name) const { return groups_.contains(name); }
    bool        has_subgroup(std::string const& name) const { return subgroups_.contains(name); }

    std::vector<std::string> const& group_names() const noexcept { return group_order_; }
    std::vector<std::string> const& subgroup_names() const noexcept { return sub_order_; }

    //! Validation diagnostics over every declared group.
    std::vector<Diagnostic> check() const;

   private:
    friend class DeclParser;

    std::map<std::string, NodePtr>             groups_;
    std::map<std::string, SubgroupPtr>         subgroups_;
    std::map<std::string, stallings::Morphism> isos_;
    std::map<std::string, std::string>         iso_domain_;
    std::map<std::string, std::string>         iso_codomain_;
    std::vector<std::string>                   group_order_;
    std::vector<std::string>                   sub_order_;
  };

  Workspace parse_workspace(std::string_view text);

  //! Declarations rebuilding `root` and the `extra` subgroups. Throws Error
  //! for subgroups with no textual form (streams other than tails).
  std::string emit_dsl(NodePtr const& root, std::vector<SubgroupPtr> const& extra = {});

}  // namespace fcw
