#include "fcw/scheme.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "fcw/subgroup.hpp"

namespace fcw {

  std::optional<std::size_t> Node::letter_index(Symbol t) const {
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (letters_[i].stable == t) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::vector<NodePtr> Node::children() const {
    switch (kind_) {
      case NodeKind::Free: return {};
      case NodeKind::Hnn: return {base_};
      case NodeKind::Amalgam: return {left_, right_};
      case NodeKind::Star: return {expanded_};
    }
    return {};
  }

  void Node::add_symbol(Symbol s) {
    if (alphabet_.insert(s).second) {
      ordered_.push_back(s);
    }
  }

  void Node::add_symbols(Node const& child) {
    for (Symbol s : child.ordered_) {
      add_symbol(s);
    }
  }

  NodePtr make_free(std::string name, std::vector<std::string> generators) {
    auto n   = std::shared_ptr<Node>(new Node());
    n->kind_ = NodeKind::Free;
    n->name_ = std::move(name);
    for (auto const& g : generators) {
      if (!is_identifier(g)) {
        throw InvalidScheme("'" + g + "' is not a valid generator name");
      }
      Symbol s = Symbol::intern(g);
      if (n->alphabet_.contains(s)) {
        throw InvalidScheme("generator '" + g + "' listed twice");
      }
      n->add_symbol(s);
    }
    return n;
  }

  NodePtr make_hnn(std::string name, NodePtr base, std::vector<HnnLetter> letters) {
    if (!base) {
      throw InvalidScheme("hnn: missing base");
    }
    auto n   = std::shared_ptr<Node>(new Node());
    n->kind_ = NodeKind::Hnn;
    n->name_ = std::move(name);
    n->add_symbols(*base);
    for (auto const& l : letters) {
      if (n->alphabet_.contains(l.stable)) {
        throw InvalidScheme("stable letter '" + std::string(l.stable.name())
                            + "' is already a symbol of the base");
      }
      n->add_symbol(l.stable);
    }
    n->base_    = std::move(base);
    n->letters_ = std::move(letters);
    return n;
  }

  NodePtr make_amalgam(std::string                        name,
                       NodePtr                            left,
                       NodePtr                            right,
                       SubgroupPtr                        left_sub,
                       SubgroupPtr                        right_sub,
                       std::optional<stallings::Morphism> phi) {
    if (!left || !right || !left_sub || !right_sub) {
      throw InvalidScheme("amalgam: missing factor or subgroup");
    }
    auto n   = std::shared_ptr<Node>(new Node());
    n->kind_ = NodeKind::Amalgam;
    n->name_ = std::move(name);
    n->add_symbols(*left);
    n->add_symbols(*right);
    n->left_      = std::move(left);
    n->right_     = std::move(right);
    n->left_sub_  = std::move(left_sub);
    n->right_sub_ = std::move(right_sub);
    n->phi_       = std::move(phi);
    return n;
  }

  NodePtr make_free_product(std::string name, NodePtr left, NodePtr right) {
    auto ls = Subgroup::trivial(left);
    auto rs = Subgroup::trivial(right);
    return make_amalgam(std::move(name), std::move(left), std::move(right), ls, rs);
  }

  NodePtr make_star(std::string name, NodePtr m, std::vector<StarPart> parts) {
    if (!m || parts.empty()) {
      throw InvalidScheme("star: needs a shared node and at least one part");
    }
    auto n   = std::shared_ptr<Node>(new Node());
    n->kind_ = NodeKind::Star;
    n->name_ = name;

    NodePtr acc;
    for (auto const& p : parts) {
      if (!p.k || !p.l) {
        throw InvalidScheme("star: missing part");
      }
      if (!find_path(p.k, m.get())) {
        throw InvalidScheme("star: '" + p.k->name() + "' does not contain '" + m->name() + "'");
      }
      auto hnn = make_hnn(p.k->name() + "*" + std::string(p.t.name()), p.k, {{p.t, p.l, p.l, std::nullopt}});
      if (!acc) {
        acc = hnn;
        continue;
      }
      acc = make_amalgam(
          name, acc, hnn, Subgroup::factor(acc, m), Subgroup::factor(hnn, m), std::nullopt);
    }
    n->add_symbols(*acc);
    n->base_     = std::move(m);
    n->parts_    = std::move(parts);
    n->expanded_ = std::move(acc);
    return n;
  }

  NodePtr make_fixing_hnn(std::string                                      name,
                          NodePtr                                          base,
                          std::vector<std::pair<std::string, SubgroupPtr>> letters) {
    std::vector<HnnLetter> ls;
    for (auto& [t, a] : letters) {
      ls.push_back({Symbol::intern(t), a, a, std::nullopt});
    }
    return make_hnn(std::move(name), std::move(base), std::move(ls));
  }

  std::optional<std::vector<std::size_t>> find_path(NodePtr const& from, Node const* target) {
    if (from.get() == target) {
      return std::vector<std::size_t>{};
    }
    auto kids = from->children();
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (auto p = find_path(kids[i], target)) {
        p->insert(p->begin(), i);
        return p;
      }
    }
    return std::nullopt;
  }

  NodePtr expand_star(NodePtr const& s) {
    if (s->kind() != NodeKind::Star) {
      throw InvalidScheme("expand_star: '" + s->name() + "' is not a star");
    }
    return s->expanded();
  }

  ////////////////////////////////////////////////////////////////////////
  // validate
  ////////////////////////////////////////////////////////////////////////

  namespace {

    std::string label(Node const& n) {
      if (!n.name().empty()) {
        return n.name();
      }
      switch (n.kind()) {
        case NodeKind::Free: return "<free>";
        case NodeKind::Hnn: return "<hnn>";
        case NodeKind::Amalgam: return "<amalgam>";
        case NodeKind::Star: return "<star>";
      }
      return "<node>";
    }

    // 1 yes, 0 no, -1 undecided
    int contained(SubgroupPtr const& small, SubgroupPtr const& big) {
      if (small == big) {
        return 1;
      }
      if (!small->finitely_generated()) {
        return -1;
      }
      for (auto const& g : small->generators()) {
        if (!g.uses_only(big->ambient()->alphabet())) {
          return 0;
        }
        auto v = big->member(g);
        if (v.is_no()) {
          return 0;
        }
        if (v.is_unknown()) {
          return -1;
        }
      }
      return 1;
    }

    bool same_automaton(SubgroupPtr const& h, stallings::SubgroupAutomaton const& a) {
      if (!h->automaton()) {
        return false;
      }
      auto const& mine = *h->automaton();
      if (mine.ambient() == a.ambient()) {
        return stallings::equal(mine, a);
      }
      // amalgam isomorphisms live over the union of both factors
      if (!std::includes(a.ambient().begin(), a.ambient().end(), mine.ambient().begin(), mine.ambient().end())) {
        return false;
      }
      return stallings::equal(stallings::SubgroupAutomaton::build(a.ambient(), mine.basis()), a);
    }

    class Validator {
     public:
      std::vector<Diagnostic> out;

      void node(NodePtr const& s) {
        if (!seen_.insert(s.get()).second) {
          return;
        }
        std::string where = label(*s);
        switch (s->kind()) {
          case NodeKind::Free: break;
          case NodeKind::Hnn: hnn(*s, where); break;
          case NodeKind::Amalgam: amalgam(*s, where); break;
          case NodeKind::Star: star(s, where); break;
        }
        for (auto const& c : s->children()) {
          node(c);
        }
      }

     private:
      void add(std::string where, std::string message) {
        out.push_back({std::move(where), std::move(message)});
      }

      void handle(SubgroupPtr const& h, NodePtr const& ambient, std::string const& where) {
        if (!h) {
          add(where, "missing subgroup");
          return;
        }
        if (h->ambient() != ambient) {
          add(where, "subgroup '" + h->name() + "' is not a subgroup of '" + label(*ambient) + "'");
          return;
        }
        if (h->strategy() == Strategy::StableClosure) {
          try {
            if (!verify_compatibility(h->inner(), h->ambient(), h->letters())) {
              add(where, "closure '" + h->name() + "' fails phi(G' n A) = G' n B");
            }
          } catch (Error const& e) {
            add(where, std::string("closure '") + h->name() + "': " + e.what());
          }
        }
      }

      void hnn(Node const& s, std::string const& where) {
        std::set<Symbol> seen;
        for (auto const& l : s.letters()) {
          std::string w = where + "." + std::string(l.stable.name());
          if (!seen.insert(l.stable).second) {
            add(w, "stable letter repeated");
          }
          handle(l.assoc, s.base(), w);
          handle(l.image, s.base(), w);
          if (!l.assoc || !l.image) {
            continue;
          }
          if (l.phi) {
            if (!s.base()->is_free()) {
              add(w, "a morphism needs a free base");
            } else if (!same_automaton(l.assoc, l.phi->domain())) {
              add(w, "morphism domain differs from the associated subgroup");
            } else if (!same_automaton(l.image, l.phi->codomain())) {
              add(w, "morphism image differs from the target subgroup");
            }
          } else {
            int a = contained(l.assoc, l.image);
            int b = contained(l.image, l.assoc);
            if (a == 0 || b == 0) {
              add(w, "identity hnn letter requires equal subgroups");
            } else if (a < 0 || b < 0) {
              add(w, "cannot confirm that the associated subgroups are equal");
            }
          }
        }
      }

      void amalgam(Node const& s, std::string const& where) {
        handle(s.left_sub(), s.left(), where + ".left");
        handle(s.right_sub(), s.right(), where + ".right");
        Alphabet shared;
        for (Symbol x : s.left()->alphabet()) {
          if (s.right()->alphabet().contains(x)) {
            shared.insert(x);
          }
        }
        if (s.phi()) {
          if (!shared.empty()) {
            add(where, "amalgam with a morphism requires disjoint factors");
          }
          if (!same_automaton(s.left_sub(), s.phi()->domain())) {
            add(where, "morphism domain differs from the left subgroup");
          }
          if (!same_automaton(s.right_sub(), s.phi()->codomain())) {
            add(where, "morphism image differs from the right subgroup");
          }
          return;
        }
        int a = contained(s.left_sub(), s.right_sub());
        int b = contained(s.right_sub(), s.left_sub());
        if (a == 0 || b == 0) {
          add(where, "identity amalgamation requires equal subgroups");
        } else if (a < 0 || b < 0) {
          add(where, "cannot confirm that the amalgamated subgroups are equal");
        }
        for (Symbol x : shared) {
          Word w = Word::letter(x);
          if (!s.left_sub()->member(w).is_yes() || !s.right_sub()->member(w).is_yes()) {
            add(where,
                "shared symbol '" + std::string(x.name()) + "' is not in the amalgamated subgroup");
          }
        }
      }

      void star(NodePtr const& s, std::string const& where) {
        Alphabet const& m = s->shared()->alphabet();
        std::set<Symbol> letters;
        for (std::size_t i = 0; i < s->parts().size(); ++i) {
          auto const& p = s->parts()[i];
          std::string w = where + ".part" + std::to_string(i + 1);
          handle(p.l, p.k, w);
          if (!letters.insert(p.t).second) {
            add(w, "stable letter repeated");
          }
          for (std::size_t j = 0; j < i; ++j) {
            for (Symbol x : s->parts()[j].k->alphabet()) {
              if (p.k->alphabet().contains(x) && !m.contains(x)) {
                add(w, "parts share symbol '" + std::string(x.name()) + "' outside the shared node");
              }
            }
          }
        }
      }

      std::unordered_set<Node const*> seen_;
    };

  }  // namespace

  std::vector<Diagnostic> validate(NodePtr const& s) {
    Validator v;
    try {
      v.node(s);
    } catch (Error const& e) {
      v.out.push_back({label(*s), e.what()});
    }
    return std::move(v.out);
  }

  ////////////////////////////////////////////////////////////////////////
  // presentation
  ////////////////////////////////////////////////////////////////////////

  namespace {

    class Presenter {
     public:
      std::vector<Word> relators;

      void node(NodePtr const& s) {
        if (!seen_.insert(s.get()).second) {
          return;
        }
        switch (s->kind()) {
          case NodeKind::Free: return;
          case NodeKind::Star: node(s->expanded()); return;
          case NodeKind::Hnn:
            node(s->base());
            for (auto const& l : s->letters()) {
              Word t = Word::letter(l.stable);
              for (auto const& a : gens(l.assoc)) {
                Word img = l.phi ? l.phi->apply(a) : a;
                add(t.inverse() * a * t * img.inverse());
              }
            }
            return;
          case NodeKind::Amalgam:
            node(s->left());
            node(s->right());
            for (auto const& a : gens(s->left_sub())) {
              Word img = s->phi() ? s->phi()->apply(a) : a;
              add(a * img.inverse());
            }
            return;
        }
      }

     private:
      static std::vector<Word> const& gens(SubgroupPtr const& h) {
        if (!h->finitely_generated()) {
          throw InvalidScheme("subgroup '" + h->name() + "' is not finitely generated");
        }
        return h->generators();
      }

      void add(Word r) {
        if (!r.is_identity() && known_.insert(r).second) {
          relators.push_back(std::move(r));
        }
      }

      std::unordered_set<Node const*> seen_;
      std::set<Word>                  known_;
    };

  }  // namespace

  Presentation presentation(NodePtr const& s) {
    Presenter p;
    p.node(s);
    return {s->symbols(), std::move(p.relators)};
  }

  std::string Presentation::str() const {
    std::string out = "<";
    for (std::size_t i = 0; i < generators.size(); ++i) {
      out += (i ? ", " : " ");
      out += generators[i].name();
    }
    out += " |";
    for (std::size_t i = 0; i < relators.size(); ++i) {
      out += (i ? ", " : " ");
      out += relators[i].str();
    }
    out += " >";
    return out;
  }

}  // namespace fcw
