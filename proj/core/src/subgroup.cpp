#include "fcw/subgroup.hpp"

#include <algorithm>
#include <deque>

#include "fcw/rewrite.hpp"

namespace fcw {

  ////////////////////////////////////////////////////////////////////////
  // Small value types
  ////////////////////////////////////////////////////////////////////////

  std::vector<Word> GeneratorStream::truncate(std::size_t k) const {
    std::vector<Word> out = fixed;
    for (std::size_t j = 0; j < k; ++j) {
      for (auto const& r : rays) {
        out.push_back(rule(r.start + r.direction * static_cast<std::int64_t>(j)));
      }
    }
    return out;
  }

  std::size_t GeneratorStream::cover(std::int64_t lo, std::int64_t hi) const {
    std::size_t k = 1;
    for (auto const& r : rays) {
      std::int64_t need = 0;
      if (r.direction > 0 && hi >= r.start) {
        need = hi - r.start + 1;
      } else if (r.direction < 0 && lo <= r.start) {
        need = r.start - lo + 1;
      }
      k = std::max(k, static_cast<std::size_t>(need));
    }
    return k;
  }

  Word evaluate(Witness const& w) {
    Word out;
    for (auto const& [x, e] : w) {
      out *= x.pow(e);
    }
    return out;
  }

  std::string to_string(Witness const& w) {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    for (auto const& [x, e] : w) {
      if (!out.empty()) {
        out += ' ';
      }
      if (x.syllable_count() == 1 && x.syllables()[0].exponent == 1) {
        out += x.str();
        if (e != 1) {
          out += "^" + std::to_string(e);
        }
      } else {
        out += "(" + x.str() + ")";
        if (e != 1) {
          out += "^" + std::to_string(e);
        }
      }
    }
    return out;
  }

  std::string Verdict::str() const {
    switch (kind) {
      case Kind::Yes: return "Yes";
      case Kind::No: return "No";
      case Kind::Unknown: return "Unknown";
    }
    return "Unknown";
  }

  std::string_view to_string(Strategy s) {
    switch (s) {
      case Strategy::StallingsFree: return "stallings";
      case Strategy::Stream: return "stream";
      case Strategy::Factor: return "factor";
      case Strategy::StableClosure: return "stable-closure";
      case Strategy::AmalgamClosure: return "amalgam-closure";
      case Strategy::Conjugate: return "conjugate";
      case Strategy::BoundedSearch: return "bounded-search";
    }
    return "?";
  }

  ////////////////////////////////////////////////////////////////////////
  // Construction
  ////////////////////////////////////////////////////////////////////////

  namespace {

    void require_words(Node const& ambient, std::vector<Word> const& words) {
      for (auto const& w : words) {
        for (auto const& s : w.syllables()) {
          if (!ambient.alphabet().contains(s.symbol)) {
            throw UnknownSymbol(std::string(s.symbol.name()));
          }
        }
      }
    }

    Word across(Node const& s, int from, Word const& u) {
      if (s.phi()) {
        return from == 0 ? s.phi()->apply(u) : s.phi()->apply_inverse(u);
      }
      NodePtr const& to = from == 0 ? s.right() : s.left();
      if (!u.uses_only(to->alphabet())) {
        throw UnsupportedMembership("amalgamated element " + u.str()
                                    + " is not written over shared symbols");
      }
      return u;
    }

    Word apply_letter(HnnLetter const& l, int eps, Word const& u) {
      if (!l.phi) {
        return u;
      }
      return eps < 0 ? l.phi->apply(u) : l.phi->apply_inverse(u);
    }

    void collect_nodes(NodePtr const& n, std::vector<NodePtr>& out) {
      if (std::find(out.begin(), out.end(), n) != out.end()) {
        return;
      }
      out.push_back(n);
      for (auto const& c : n->children()) {
        collect_nodes(c, out);
      }
    }

  }  // namespace

  SubgroupPtr Subgroup::free(NodePtr ambient, std::vector<Word> generators, std::string name) {
    if (!ambient->is_free()) {
      throw InvalidScheme("'" + ambient->name() + "' is not a free group");
    }
    require_words(*ambient, generators);
    auto h        = std::shared_ptr<Subgroup>(new Subgroup());
    h->strategy_  = Strategy::StallingsFree;
    h->automaton_ = std::make_shared<stallings::SubgroupAutomaton const>(
        stallings::SubgroupAutomaton::build(ambient->alphabet(), generators));
    h->trivial_    = h->automaton_->rank() == 0;
    h->ambient_    = std::move(ambient);
    h->generators_ = std::move(generators);
    h->name_       = std::move(name);
    return h;
  }

  SubgroupPtr Subgroup::stream(NodePtr ambient, GeneratorStream s, std::string name) {
    if (!ambient->is_free()) {
      throw InvalidScheme("'" + ambient->name() + "' is not a free group");
    }
    auto h         = std::shared_ptr<Subgroup>(new Subgroup());
    h->strategy_   = Strategy::Stream;
    h->generators_ = s.seeds();
    require_words(*ambient, h->generators_);
    h->stream_  = std::move(s);
    h->ambient_ = std::move(ambient);
    h->name_    = std::move(name);
    return h;
  }

  SubgroupPtr Subgroup::factor(NodePtr ambient, NodePtr factor, std::string name) {
    auto path = find_path(ambient, factor.get());
    if (!path) {
      throw InvalidScheme("'" + factor->name() + "' is not a node of '" + ambient->name() + "'");
    }
    auto h       = std::shared_ptr<Subgroup>(new Subgroup());
    h->strategy_ = Strategy::Factor;
    for (Symbol s : factor->symbols()) {
      h->generators_.push_back(Word::letter(s));
    }
    h->path_    = std::move(*path);
    h->factor_  = std::move(factor);
    h->ambient_ = std::move(ambient);
    h->name_    = std::move(name);
    return h;
  }

  SubgroupPtr Subgroup::stable_closure(NodePtr             hnn,
                                       SubgroupPtr         base_part,
                                       std::vector<Symbol> letters,
                                       std::vector<Word>   generators,
                                       std::string         name) {
    if (hnn->kind() != NodeKind::Hnn) {
      throw InvalidScheme("closure: '" + hnn->name() + "' is not an hnn node");
    }
    if (base_part->ambient() != hnn->base()) {
      throw AmbientMismatch("closure: base subgroup does not live in the base of '" + hnn->name()
                            + "'");
    }
    if (letters.empty()) {
      for (auto const& l : hnn->letters()) {
        letters.push_back(l.stable);
      }
    }
    for (Symbol t : letters) {
      if (!hnn->letter_index(t)) {
        throw InvalidScheme("closure: '" + std::string(t.name()) + "' is not a stable letter of '"
                            + hnn->name() + "'");
      }
    }
    if (generators.empty()) {
      generators = base_part->generators();
      for (Symbol t : letters) {
        generators.push_back(Word::letter(t));
      }
    }
    require_words(*hnn, generators);
    auto h         = std::shared_ptr<Subgroup>(new Subgroup());
    h->strategy_   = Strategy::StableClosure;
    h->ambient_    = std::move(hnn);
    h->inner_      = std::move(base_part);
    h->letters_    = std::move(letters);
    h->generators_ = std::move(generators);
    h->name_       = std::move(name);
    return h;
  }

  SubgroupPtr Subgroup::amalgam_closure(NodePtr     amalgam,
                                        SubgroupPtr left_part,
                                        SubgroupPtr right_part,
                                        std::string name) {
    if (amalgam->kind() != NodeKind::Amalgam) {
      throw InvalidScheme("closure: '" + amalgam->name() + "' is not an amalgam");
    }
    if (left_part->ambient() != amalgam->left() || right_part->ambient() != amalgam->right()) {
      throw AmbientMismatch("closure: parts do not live in the factors of '" + amalgam->name()
                            + "'");
    }
    auto h         = std::shared_ptr<Subgroup>(new Subgroup());
    h->strategy_   = Strategy::AmalgamClosure;
    h->generators_ = left_part->generators();
    h->generators_.insert(
        h->generators_.end(), right_part->generators().begin(), right_part->generators().end());
    h->ambient_ = std::move(amalgam);
    h->inner_   = std::move(left_part);
    h->right_   = std::move(right_part);
    h->name_    = std::move(name);
    return h;
  }

  SubgroupPtr Subgroup::conjugate(SubgroupPtr inner, Word by, std::string name) {
    require_words(*inner->ambient(), {by});
    auto h       = std::shared_ptr<Subgroup>(new Subgroup());
    h->strategy_ = Strategy::Conjugate;
    for (auto const& g : inner->generators()) {
      h->generators_.push_back(g.conjugate(by));
    }
    h->trivial_ = inner->trivial_;
    h->ambient_ = inner->ambient();
    h->inner_   = std::move(inner);
    h->by_      = std::move(by);
    h->name_    = std::move(name);
    return h;
  }

  SubgroupPtr Subgroup::bounded(NodePtr           ambient,
                                std::vector<Word> generators,
                                SearchBudget      budget,
                                std::string       name) {
    require_words(*ambient, generators);
    auto h         = std::shared_ptr<Subgroup>(new Subgroup());
    h->strategy_   = Strategy::BoundedSearch;
    h->trivial_    = std::all_of(generators.begin(), generators.end(), [](Word const& g) {
      return g.is_identity();
    });
    h->ambient_    = std::move(ambient);
    h->generators_ = std::move(generators);
    h->budget_     = budget;
    h->name_       = std::move(name);
    return h;
  }

  SubgroupPtr Subgroup::trivial(NodePtr ambient, std::string name) {
    if (ambient->is_free()) {
      return free(std::move(ambient), {}, std::move(name));
    }
    return bounded(std::move(ambient), {}, {}, std::move(name));
  }

  SubgroupPtr Subgroup::automatic(NodePtr ambient, std::vector<Word> generators, std::string name) {
    require_words(*ambient, generators);
    if (ambient->is_free()) {
      return free(std::move(ambient), std::move(generators), std::move(name));
    }
    if (generators.empty()) {
      return trivial(std::move(ambient), std::move(name));
    }
    Alphabet letters;
    bool     plain = true;
    for (auto const& g : generators) {
      if (g.syllable_count() != 1 || g.syllables()[0].exponent != 1) {
        plain = false;
        break;
      }
      letters.insert(g.syllables()[0].symbol);
    }
    if (plain) {
      std::vector<NodePtr> nodes;
      collect_nodes(ambient, nodes);
      for (auto const& n : nodes) {
        if (n->alphabet() == letters) {
          return factor(std::move(ambient), n, std::move(name));
        }
      }
    }
    return bounded(std::move(ambient), std::move(generators), {}, std::move(name));
  }

  stallings::SubgroupAutomaton Subgroup::truncation(std::size_t k) const {
    if (automaton_) {
      return *automaton_;
    }
    if (!stream_) {
      throw UnsupportedMembership("subgroup '" + name_ + "' has no automaton");
    }
    return stallings::SubgroupAutomaton::build(ambient_->alphabet(), stream_->truncate(k));
  }

  ////////////////////////////////////////////////////////////////////////
  // Membership
  ////////////////////////////////////////////////////////////////////////

  Verdict Subgroup::member(Word const& w) const {
    require_words(*ambient_, {w});
    try {
      if (trivial_) {
        return is_trivial(ambient_, w);
      }
      switch (strategy_) {
        case Strategy::StallingsFree: {
          auto bw = automaton_->express(w);
          if (!bw) {
            return Verdict::no();
          }
          Witness wit;
          for (auto const& [i, e] : *bw) {
            wit.emplace_back(automaton_->basis()[i], e);
          }
          return Verdict::yes(std::move(wit));
        }
        case Strategy::Stream: return member_stream(w);
        case Strategy::Factor: return member_factor(w);
        case Strategy::StableClosure: return member_stable(w);
        case Strategy::AmalgamClosure: return member_amalgam(w);
        case Strategy::Conjugate: {
          auto v = inner_->member(by_ * w * by_.inverse());
          for (auto& f : v.witness) {
            f.first = f.first.conjugate(by_);
          }
          return v;
        }
        case Strategy::BoundedSearch: return member_bounded(w);
      }
    } catch (UnsupportedMembership const& e) {
      return Verdict::unknown(e.what());
    }
    return Verdict::unknown();
  }

  Verdict Subgroup::member_stream(Word const& w) const {
    if (!stream_->index_range) {
      return Verdict::unknown("stream has no certified index bound");
    }
    auto        range = stream_->index_range(w);
    std::size_t k     = range ? stream_->cover(range->first, range->second) : 1;
    auto        a     = truncation(k);
    auto        bw    = a.express(w);
    if (!bw) {
      return Verdict::no();
    }
    Witness wit;
    for (auto const& [i, e] : *bw) {
      wit.emplace_back(a.basis()[i], e);
    }
    return Verdict::yes(std::move(wit));
  }

  Split Subgroup::split_factor(Word const& x) const {
    NodePtr cur = ambient_;
    Word    u   = x;
    Word    rep;
    for (std::size_t idx : path_) {
      Word r;
      switch (cur->kind()) {
        case NodeKind::Free: break;
        case NodeKind::Star: break;
        case NodeKind::Hnn: {
          auto nf = britton_reduce(cur, u);
          u       = nf.head;
          nf.head = Word();
          r       = nf.expand();
          break;
        }
        case NodeKind::Amalgam: {
          auto nf   = amalgam_reduce(cur, u);
          int  side = static_cast<int>(idx);
          Word a    = side == 0 ? nf.head : across(*cur, 0, nf.head);
          std::size_t from = 0;
          if (!nf.tail.empty() && nf.tail[0].side == side) {
            a *= nf.tail[0].l;
            from = 1;
          }
          u = a;
          for (std::size_t j = from; j < nf.tail.size(); ++j) {
            r *= nf.tail[j].l;
          }
          break;
        }
      }
      rep = r * rep;
      cur = cur->children()[idx];
    }
    bool in = rep.is_identity();
    return {in ? normal_form(factor_, u) : u, rep, in, true};
  }

  Verdict Subgroup::member_factor(Word const& w) const {
    Split s = split_factor(w);
    if (!s.member) {
      return Verdict::no();
    }
    return Verdict::yes({{s.u, 1}});
  }

  std::optional<std::pair<Word, Word>> Subgroup::split_into(Subgroup const& assoc,
                                                            Word const&     x) const {
    if (assoc.trivial_) {
      auto v = member(x);
      if (v.is_unknown()) {
        throw UnsupportedMembership(v.note);
      }
      if (v.is_no()) {
        return std::nullopt;
      }
      return std::make_pair(Word(), x);
    }
    if (!assoc.automaton_) {
      throw UnsupportedMembership("associated subgroup '" + assoc.name_ + "' has no automaton");
    }
    auto const& a = *assoc.automaton_;
    if (automaton_) {
      return stallings::split_double(a, automaton_->graph(), x);
    }
    if (!stream_ || !stream_->index_range) {
      throw UnsupportedMembership("subgroup '" + name_ + "' cannot be searched for splits");
    }
    // Any split uses stream indices within this window: the product search
    // over A's core plus x's dangling path cannot reach further without
    // revisiting a product state.
    auto         shape  = stallings::split_shape(a, x);
    std::int64_t bound  = static_cast<std::int64_t>(shape.tail_length + shape.core_states * shape.core_states) + 3;
    auto         range  = stream_->index_range(x);
    std::int64_t lo     = range ? range->first : 0;
    std::int64_t hi     = range ? range->second : 0;
    std::int64_t lo_cap = lo, hi_cap = hi;
    for (auto const& r : stream_->rays) {
      lo_cap = std::min(lo_cap, std::min<std::int64_t>(0, r.start));
      hi_cap = std::max(hi_cap, std::max<std::int64_t>(0, r.start));
    }
    std::size_t k_max = stream_->cover(lo_cap - bound, hi_cap + bound);
    std::size_t k     = std::min(k_max, stream_->cover(lo - 2, hi + 2));
    while (true) {
      auto t = truncation(k);
      if (auto s = stallings::split_double(a, t.graph(), x)) {
        return s;
      }
      if (k >= k_max) {
        return std::nullopt;
      }
      k = std::min(k_max, 2 * k);
    }
  }

  Verdict Subgroup::member_stable(Word const& w) const {
    auto        nf      = britton_reduce(ambient_, w);
    auto const& letters = ambient_->letters();
    for (auto const& e : nf.tail) {
      if (std::find(letters_.begin(), letters_.end(), e.stable) == letters_.end()) {
        return Verdict::no();
      }
    }
    std::deque<std::pair<Word, std::int64_t>> wit;
    std::size_t                               n = nf.tail.size();
    Word                                      p = n == 0 ? nf.head : nf.tail[n - 1].l;
    for (std::size_t k = n; k-- > 0;) {
      auto const& e   = nf.tail[k];
      auto const& L   = letters[e.letter];
      auto const& sub = e.eps < 0 ? *L.assoc : *L.image;
      auto        s   = inner_->split_into(sub, p);
      if (!s) {
        return Verdict::no();
      }
      if (!s->second.is_identity()) {
        wit.emplace_front(s->second, 1);
      }
      wit.emplace_front(Word::letter(e.stable), e.eps);
      Word moved = apply_letter(L, e.eps, s->first);
      p          = (k == 0 ? nf.head : nf.tail[k - 1].l) * moved;
    }
    auto v = inner_->member(p);
    if (!v.is_yes()) {
      return v;
    }
    for (auto it = v.witness.rbegin(); it != v.witness.rend(); ++it) {
      wit.push_front(*it);
    }
    return Verdict::yes(Witness(wit.begin(), wit.end()));
  }

  Verdict Subgroup::member_amalgam(Word const& w) const {
    Node const& s  = *ambient_;
    auto        nf = amalgam_reduce(ambient_, w);
    if (nf.tail.empty()) {
      return inner_->member(nf.head);
    }
    auto&    tail = nf.tail;
    tail[0].l     = (tail[0].side == 0 ? nf.head : across(s, 0, nf.head)) * tail[0].l;
    auto part     = [&](int side) -> Subgroup const& { return side == 0 ? *inner_ : *right_; };
    auto sub      = [&](int side) -> Subgroup const& {
      return side == 0 ? *s.left_sub() : *s.right_sub();
    };
    std::deque<std::pair<Word, std::int64_t>> wit;
    Word                                      p = tail.back().l;
    for (std::size_t k = tail.size() - 1; k > 0; --k) {
      int  side = tail[k].side;
      auto sp   = part(side).split_into(sub(side), p);
      if (!sp) {
        return Verdict::no();
      }
      if (!sp->second.is_identity()) {
        wit.emplace_front(sp->second, 1);
      }
      p = tail[k - 1].l * across(s, side, sp->first);
    }
    auto v = part(tail[0].side).member(p);
    if (!v.is_yes()) {
      return v;
    }
    for (auto it = v.witness.rbegin(); it != v.witness.rend(); ++it) {
      wit.push_front(*it);
    }
    return Verdict::yes(Witness(wit.begin(), wit.end()));
  }

  ////////////////////////////////////////////////////////////////////////
  // Bounded search
  ////////////////////////////////////////////////////////////////////////

  Subgroup::Ball const& Subgroup::ball() const {
    std::call_once(ball_once_, [this] {
      auto b = std::make_unique<Ball>();
      b->index.emplace(Word(), 0);
      b->element.emplace_back();
      b->parent.push_back(SIZE_MAX);
      b->gen.push_back(0);
      b->sign.push_back(0);
      b->dist.push_back(0);
      std::size_t layer_start = 0;
      for (std::size_t r = 1; r <= budget_.depth; ++r) {
        std::size_t layer_end = b->element.size();
        bool        full      = false;
        for (std::size_t i = layer_start; i < layer_end && !full; ++i) {
          for (std::size_t g = 0; g < generators_.size() && !full; ++g) {
            for (int sign : {1, -1}) {
              Word x  = normal_form(ambient_, b->element[i] * generators_[g].pow(sign));
              auto it = b->index.find(x);
              if (it != b->index.end()) {
                continue;
              }
              b->index.emplace(x, b->element.size());
              b->element.push_back(std::move(x));
              b->parent.push_back(i);
              b->gen.push_back(g);
              b->sign.push_back(sign);
              b->dist.push_back(r);
              if (b->element.size() >= budget_.max_ball) {
                full = true;
                break;
              }
            }
          }
        }
        if (full) {
          break;
        }
        b->radius   = r;
        layer_start = layer_end;
        if (layer_start == b->element.size()) {
          break;
        }
      }
      ball_ = std::move(b);
    });
    return *ball_;
  }

  Witness Subgroup::ball_path(std::size_t i) const {
    Ball const& b = *ball_;
    Witness     out;
    for (; b.parent[i] != SIZE_MAX; i = b.parent[i]) {
      out.emplace_back(generators_[b.gen[i]], b.sign[i]);
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  Verdict Subgroup::member_bounded(Word const& w) const {
    Ball const& b = ball();
    Word        x = normal_form(ambient_, w);
    if (auto it = b.index.find(x); it != b.index.end()) {
      return Verdict::yes(ball_path(it->second));
    }
    std::size_t probe = std::min<std::size_t>(
        {budget_.depth > b.radius ? budget_.depth - b.radius : 0, b.radius, 2});
    for (std::size_t i = 1; i < b.element.size() && b.dist[i] <= probe; ++i) {
      Word z  = normal_form(ambient_, b.element[i].inverse() * x);
      auto it = b.index.find(z);
      if (it == b.index.end()) {
        continue;
      }
      Witness wit  = ball_path(i);
      Witness tail = ball_path(it->second);
      wit.insert(wit.end(), tail.begin(), tail.end());
      if (is_trivial(ambient_, evaluate(wit) * w.inverse()).is_yes()) {
        return Verdict::yes(std::move(wit));
      }
    }
    return Verdict::unknown("no witness within " + std::to_string(b.radius + probe)
                            + " generator steps");
  }

  ////////////////////////////////////////////////////////////////////////
  // Splits
  ////////////////////////////////////////////////////////////////////////

  Split Subgroup::split(Word const& x) const {
    if (strategy_ == Strategy::StallingsFree) {
      Word r = automaton_->coset_rep(x);
      return {x * r.inverse(), r, r.is_identity(), true};
    }
    if (trivial_) {
      Word nf = normal_form(ambient_, x);
      return {Word(), nf, nf.is_identity(), true};
    }
    if (strategy_ == Strategy::Factor) {
      return split_factor(x);
    }
    auto v = member(x);
    if (v.is_unknown()) {
      throw UnsupportedMembership("membership in '" + name_ + "' undecided for " + x.str());
    }
    if (v.is_yes()) {
      return {x, Word(), true, false};
    }
    return {Word(), normal_form(ambient_, x), false, false};
  }

  ////////////////////////////////////////////////////////////////////////
  // Free functions
  ////////////////////////////////////////////////////////////////////////

  bool verify_compatibility(SubgroupPtr const&         gprime,
                            NodePtr const&             hnn,
                            std::vector<Symbol> const& letters,
                            std::size_t                k) {
    if (hnn->kind() != NodeKind::Hnn) {
      throw InvalidScheme("'" + hnn->name() + "' is not an hnn node");
    }
    if (!hnn->base()->is_free()) {
      throw UnsupportedMembership("compatibility needs a free base");
    }
    if (gprime->ambient() != hnn->base()) {
      throw AmbientMismatch("subgroup does not live in the base of '" + hnn->name() + "'");
    }
    auto trunc = gprime->truncation(k);
    for (auto const& l : hnn->letters()) {
      if (!letters.empty() && std::find(letters.begin(), letters.end(), l.stable) == letters.end()) {
        continue;
      }
      if (!l.assoc->automaton() || !l.image->automaton()) {
        throw UnsupportedMembership("associated subgroups of '" + std::string(l.stable.name())
                                    + "' have no automata");
      }
      auto ap = stallings::intersect(trunc, *l.assoc->automaton());
      auto bp = stallings::intersect(trunc, *l.image->automaton());
      for (auto const& a : ap.basis()) {
        if (!gprime->member(l.phi ? l.phi->apply(a) : a).is_yes()) {
          return false;
        }
      }
      for (auto const& b : bp.basis()) {
        if (!gprime->member(l.phi ? l.phi->apply_inverse(b) : b).is_yes()) {
          return false;
        }
      }
    }
    return true;
  }

  SubgroupPtr join(std::vector<SubgroupPtr> const& handles, std::string name) {
    if (handles.empty()) {
      throw InvalidScheme("join of no subgroups");
    }
    NodePtr           ambient = handles[0]->ambient();
    std::vector<Word> gens;
    for (auto const& h : handles) {
      if (h->ambient() != ambient) {
        throw AmbientMismatch("join: subgroups of different groups");
      }
      if (!h->finitely_generated()) {
        throw InvalidScheme("join: '" + h->name() + "' is not finitely generated");
      }
      gens.insert(gens.end(), h->generators().begin(), h->generators().end());
    }
    if (ambient->is_free()) {
      return Subgroup::free(ambient, std::move(gens), std::move(name));
    }
    return Subgroup::bounded(ambient, std::move(gens), {}, std::move(name));
  }

  SubgroupPtr conjugate(SubgroupPtr const& h, Word const& by, std::string name) {
    if (h->ambient()->is_free() && h->finitely_generated()) {
      std::vector<Word> gens;
      for (auto const& g : h->generators()) {
        gens.push_back(g.conjugate(by));
      }
      return Subgroup::free(h->ambient(), std::move(gens), std::move(name));
    }
    return Subgroup::conjugate(h, by, std::move(name));
  }

  std::optional<Witness> express_over(Alphabet const&          ambient,
                                      std::vector<Word> const& generators,
                                      Word const&              w) {
    if (!w.uses_only(ambient)) {
      return std::nullopt;
    }
    stallings::KeyedGraph g(generators, false);
    auto                  bw = g.trace(w);
    if (!bw) {
      return std::nullopt;
    }
    Witness out;
    for (auto const& [i, e] : *bw) {
      out.emplace_back(generators[i], e);
    }
    return out;
  }

}  // namespace fcw
