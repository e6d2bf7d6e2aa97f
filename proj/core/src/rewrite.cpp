#include "fcw/rewrite.hpp"

#include <deque>

namespace fcw {

  namespace {

    void check_alphabet(Node const& s, Word const& w) {
      for (auto const& syl : w.syllables()) {
        if (!s.alphabet().contains(syl.symbol)) {
          throw UnknownSymbol(std::string(syl.symbol.name()));
        }
      }
    }

    // Carries an element of the amalgamated subgroup of side `from` across
    // to the other side.
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
      // t^-1 a t = phi(a): crossing t^-1 leftwards applies phi
      return eps < 0 ? l.phi->apply(u) : l.phi->apply_inverse(u);
    }

  }  // namespace

  Word HnnNormalForm::expand() const {
    Word w = head;
    for (auto const& e : tail) {
      w.append(e.stable, e.eps);
      w *= e.l;
    }
    return w;
  }

  std::string HnnNormalForm::str() const {
    std::string out;
    if (!head.is_identity() || tail.empty()) {
      out = head.str();
    }
    for (auto const& e : tail) {
      if (!out.empty()) {
        out += ' ';
      }
      out += '[';
      out += Word::letter(e.stable, e.eps).str();
      if (!e.l.is_identity()) {
        out += " | " + e.l.str();
      }
      out += ']';
    }
    return out;
  }

  Word AmalgamNormalForm::expand() const {
    Word w = head;
    for (auto const& e : tail) {
      w *= e.l;
    }
    return w;
  }

  std::string AmalgamNormalForm::str() const {
    std::string out;
    if (!head.is_identity() || tail.empty()) {
      out = head.str();
    }
    for (auto const& e : tail) {
      if (!out.empty()) {
        out += ' ';
      }
      out += (e.side == 0 ? "[L: " : "[R: ") + e.l.str() + "]";
    }
    return out;
  }

  HnnNormalForm britton_reduce(NodePtr const& hnn, Word const& w) {
    if (hnn->kind() != NodeKind::Hnn) {
      throw InvalidScheme("britton_reduce: '" + hnn->name() + "' is not an hnn node");
    }
    check_alphabet(*hnn, w);
    auto const&                      letters = hnn->letters();
    Word                             h;
    std::deque<HnnNormalForm::Entry> tail;

    auto cross = [&](std::size_t i, int eps) {
      auto const& l     = letters[i];
      auto const& sub   = eps < 0 ? l.assoc : l.image;
      Split       sp    = sub->split(h);
      Word        moved = apply_letter(l, eps, sp.u);
      if (sp.member && !tail.empty() && tail.front().letter == i && tail.front().eps == -eps) {
        h = moved * tail.front().l;
        tail.pop_front();
        return;
      }
      tail.push_front({i, l.stable, eps, sp.l});
      h = std::move(moved);
    };

    auto const& syl = w.syllables();
    for (auto it = syl.rbegin(); it != syl.rend(); ++it) {
      auto idx = hnn->letter_index(it->symbol);
      if (!idx) {
        h = Word::letter(it->symbol, it->exponent) * h;
        continue;
      }
      int          eps = it->exponent < 0 ? -1 : 1;
      std::int64_t n   = it->exponent * eps;
      for (std::int64_t k = 0; k < n; ++k) {
        cross(*idx, eps);
      }
    }
    HnnNormalForm nf;
    nf.head = normal_form(hnn->base(), h);
    nf.tail.assign(tail.begin(), tail.end());
    return nf;
  }

  std::vector<AmalgamNormalForm::Entry> factor_chunks(NodePtr const& amalgam, Word const& w) {
    if (amalgam->kind() != NodeKind::Amalgam) {
      throw InvalidScheme("factor_chunks: '" + amalgam->name() + "' is not an amalgam");
    }
    check_alphabet(*amalgam, w);
    auto side_of = [&](Symbol x) {
      bool l = amalgam->left()->alphabet().contains(x);
      bool r = amalgam->right()->alphabet().contains(x);
      return l && r ? -1 : (l ? 0 : 1);
    };
    int first = 0;
    for (auto const& s : w.syllables()) {
      if (int side = side_of(s.symbol); side >= 0) {
        first = side;
        break;
      }
    }
    std::vector<AmalgamNormalForm::Entry> out;
    for (auto const& s : w.syllables()) {
      int side = side_of(s.symbol);
      if (side < 0) {
        side = out.empty() ? first : out.back().side;
      }
      if (out.empty() || out.back().side != side) {
        out.push_back({side, Word()});
      }
      out.back().l.append(s.symbol, s.exponent);
    }
    return out;
  }

  AmalgamNormalForm amalgam_reduce(NodePtr const&                               amalgam,
                                   std::vector<AmalgamNormalForm::Entry> const& factors) {
    if (amalgam->kind() != NodeKind::Amalgam) {
      throw InvalidScheme("amalgam_reduce: '" + amalgam->name() + "' is not an amalgam");
    }
    Node const& s   = *amalgam;
    auto        sub = [&](int side) -> Subgroup const& {
      return side == 0 ? *s.left_sub() : *s.right_sub();
    };
    for (auto const& f : factors) {
      NodePtr const& n = f.side == 0 ? s.left() : s.right();
      check_alphabet(*n, f.l);
    }

    std::deque<AmalgamNormalForm::Entry> tail;
    Word                                 p;
    int                                  side = -1;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
      if (side < 0) {
        p    = it->l;
        side = it->side;
        continue;
      }
      if (it->side == side) {
        p = it->l * p;
        continue;
      }
      Split sp    = sub(side).split(p);
      Word  moved = across(s, side, sp.u);
      if (!sp.member) {
        tail.push_front({side, sp.l});
        p = it->l * moved;
      } else if (!tail.empty() && tail.front().side == it->side) {
        p = it->l * moved * tail.front().l;
        tail.pop_front();
      } else {
        p = it->l * moved;
      }
      side = it->side;
    }

    AmalgamNormalForm nf;
    if (side >= 0) {
      Split sp = sub(side).split(p);
      if (!sp.member) {
        tail.push_front({side, sp.l});
      }
      nf.head = side == 0 ? sp.u : across(s, 1, sp.u);
    }
    nf.head = normal_form(s.left(), nf.head);
    nf.tail.assign(tail.begin(), tail.end());
    return nf;
  }

  AmalgamNormalForm amalgam_reduce(NodePtr const& amalgam, Word const& w) {
    return amalgam_reduce(amalgam, factor_chunks(amalgam, w));
  }

  Word normal_form(NodePtr const& s, Word const& w) {
    switch (s->kind()) {
      case NodeKind::Free: check_alphabet(*s, w); return w;
      case NodeKind::Hnn: return britton_reduce(s, w).expand();
      case NodeKind::Amalgam: return amalgam_reduce(s, w).expand();
      case NodeKind::Star: check_alphabet(*s, w); return normal_form(s->expanded(), w);
    }
    return w;
  }

  Verdict is_trivial(NodePtr const& s, Word const& w) {
    try {
      return normal_form(s, w).is_identity() ? Verdict::yes() : Verdict::no();
    } catch (UnsupportedMembership const& e) {
      return Verdict::unknown(e.what());
    }
  }

  Verdict equal(NodePtr const& s, Word const& x, Word const& y) {
    return is_trivial(s, x * y.inverse());
  }

  std::string describe_normal_form(NodePtr const& s, Word const& w) {
    switch (s->kind()) {
      case NodeKind::Free: check_alphabet(*s, w); return w.str();
      case NodeKind::Hnn: return britton_reduce(s, w).str();
      case NodeKind::Amalgam: return amalgam_reduce(s, w).str();
      case NodeKind::Star: check_alphabet(*s, w); return describe_normal_form(s->expanded(), w);
    }
    return w.str();
  }

}  // namespace fcw
