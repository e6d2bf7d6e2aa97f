#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fcw/stallings.hpp"
#include "fcw/words.hpp"

namespace fcw {

  class Node;
  class Subgroup;
  using NodePtr     = std::shared_ptr<Node const>;
  using SubgroupPtr = std::shared_ptr<Subgroup const>;

  enum class NodeKind { Free, Hnn, Amalgam, Star };

  //! One stable letter of a multi-letter HNN-extension: t^-1 a t = phi(a)
  //! for a in `assoc`. An empty `phi` is the identity, which requires
  //! assoc == image.
  struct HnnLetter {
    Symbol                              stable;
    SubgroupPtr                         assoc;
    SubgroupPtr                         image;
    std::optional<stallings::Morphism> phi;
  };

  struct StarPart {
    NodePtr     k;
    SubgroupPtr l;
    Symbol      t;
  };

  //! Immutable node of a group construction tree. Nodes may be shared, so a
  //! scheme is really a DAG; a shared node stands for one and the same
  //! subgroup wherever it occurs.
  class Node {
   public:
    NodeKind           kind() const noexcept { return kind_; }
    std::string const& name() const noexcept { return name_; }
    //! Every symbol of the group, base generators and stable letters.
    Alphabet const& alphabet() const noexcept { return alphabet_; }
    //! Symbols in order of introduction (depth-first, left to right).
    std::vector<Symbol> const& symbols() const noexcept { return ordered_; }
    bool is_free() const noexcept { return kind_ == NodeKind::Free; }

    // Hnn
    NodePtr const&                base() const { return base_; }
    std::vector<HnnLetter> const& letters() const { return letters_; }
    //! Index of `t` in letters(), if it is one of this node's stable letters.
    std::optional<std::size_t> letter_index(Symbol t) const;

    // Amalgam: left_sub <= left, right_sub <= right, identified by phi
    NodePtr const&                             left() const { return left_; }
    NodePtr const&                             right() const { return right_; }
    SubgroupPtr const&                         left_sub() const { return left_sub_; }
    SubgroupPtr const&                         right_sub() const { return right_sub_; }
    std::optional<stallings::Morphism> const& phi() const { return phi_; }

    // Star
    NodePtr const&               shared() const { return base_; }
    std::vector<StarPart> const& parts() const { return parts_; }
    //! The left-nested amalgam of HNN-extensions this star stands for.
    NodePtr const& expanded() const { return expanded_; }

    //! Child nodes in a fixed order: base; left, right; expanded.
    std::vector<NodePtr> children() const;

    friend NodePtr make_free(std::string name, std::vector<std::string> generators);
    friend NodePtr make_hnn(std::string name, NodePtr base, std::vector<HnnLetter> letters);
    friend NodePtr make_amalgam(std::string                        name,
                                NodePtr                            left,
                                NodePtr                            right,
                                SubgroupPtr                        left_sub,
                                SubgroupPtr                        right_sub,
                                std::optional<stallings::Morphism> phi);
    friend NodePtr make_star(std::string name, NodePtr m, std::vector<StarPart> parts);

   private:
    Node() = default;
    void add_symbols(Node const& child);
    void add_symbol(Symbol s);

    NodeKind            kind_ = NodeKind::Free;
    std::string         name_;
    Alphabet            alphabet_;
    std::vector<Symbol> ordered_;

    NodePtr                            base_;
    std::vector<HnnLetter>             letters_;
    NodePtr                            left_;
    NodePtr                            right_;
    SubgroupPtr                        left_sub_;
    SubgroupPtr                        right_sub_;
    std::optional<stallings::Morphism> phi_;
    std::vector<StarPart>              parts_;
    NodePtr                            expanded_;
  };

  NodePtr make_free(std::string name, std::vector<std::string> generators);
  //! Throws InvalidScheme if a stable letter is already a symbol of `base`.
  NodePtr make_hnn(std::string name, NodePtr base, std::vector<HnnLetter> letters);
  NodePtr make_amalgam(std::string                        name,
                       NodePtr                            left,
                       NodePtr                            right,
                       SubgroupPtr                        left_sub,
                       SubgroupPtr                        right_sub,
                       std::optional<stallings::Morphism> phi = std::nullopt);
  //! Free product: amalgam over trivial subgroups.
  NodePtr make_free_product(std::string name, NodePtr left, NodePtr right);
  //! Builds the star node and its expansion; throws InvalidScheme if M is
  //! not a node of some K_i.
  NodePtr make_star(std::string name, NodePtr m, std::vector<StarPart> parts);

  //! Convenience: HNN-extension of `base` with each t_i fixing A_i.
  NodePtr make_fixing_hnn(std::string                                      name,
                          NodePtr                                          base,
                          std::vector<std::pair<std::string, SubgroupPtr>> letters);

  //! Path of child indices from `from` down to `target`, if it occurs.
  std::optional<std::vector<std::size_t>> find_path(NodePtr const& from,
                                                    Node const*    target);

  struct Diagnostic {
    std::string where;
    std::string message;
    std::string str() const { return where + ": " + message; }
  };

  std::vector<Diagnostic> validate(NodePtr const& s);

  //! The star's expansion; throws InvalidScheme for other node kinds.
  NodePtr expand_star(NodePtr const& s);

  struct Presentation {
    std::vector<Symbol> generators;
    std::vector<Word>   relators;
    std::string         str() const;
  };

  //! Throws InvalidScheme if some associated or amalgamated subgroup is not
  //! given by finitely many generators.
  Presentation presentation(NodePtr const& s);

}  // namespace fcw
