#include "fcw/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <unordered_map>

#include "fcw/gadgets.hpp"

namespace fcw {

  ////////////////////////////////////////////////////////////////////////
  // Parsing
  ////////////////////////////////////////////////////////////////////////

  class DeclParser {
   public:
    DeclParser(Workspace& ws, std::string_view line, std::size_t lineno)
        : ws_(ws), text_(line), line_(lineno) {}

    void run() {
      skip_ws();
      if (pos_ == text_.size()) {
        return;
      }
      std::size_t start = pos_;
      std::string kw    = ident("a declaration");
      try {
        if (kw == "group") {
          group();
        } else if (kw == "sub") {
          sub();
        } else if (kw == "iso") {
          iso();
        } else {
          fail_at(start, "expected 'group', 'sub' or 'iso'");
        }
      } catch (ParseError const&) {
        throw;
      } catch (Error const& e) {
        fail_at(start, e.what());
      }
      skip_ws();
      if (pos_ != text_.size()) {
        fail("unexpected trailing text");
      }
    }

   private:
    // declarations

    void group() {
      auto [name, at] = fresh_name();
      expect('=');
      std::size_t kw_at = (skip_ws(), pos_);
      std::string kind  = ident("a group constructor");
      expect('(');
      NodePtr n;
      if (kind == "free") {
        std::vector<std::string> gens;
        skip_ws();
        if (peek() != ')') {
          do {
            gens.push_back(ident("a generator"));
          } while (accept(','));
        }
        n = make_free(name, gens);
      } else if (kind == "hnn") {
        n = hnn(name);
      } else if (kind == "amalgam") {
        n = amalgam(name);
      } else if (kind == "star") {
        n = star(name);
      } else {
        fail_at(kw_at, "unknown group constructor '" + kind + "'");
      }
      expect(')');
      (void)at;
      ws_.groups_[name] = n;
      ws_.group_order_.push_back(name);
    }

    NodePtr hnn(std::string const& name) {
      NodePtr                base = group_ref();
      std::vector<HnnLetter> letters;
      expect(';');
      do {
        std::size_t at = (skip_ws(), pos_);
        std::string t  = ident("a stable letter");
        skip_ws();
        if (accept_word("fixes")) {
          auto a = sub_ref();
          letters.push_back({Symbol::intern(t), a, a, std::nullopt});
        } else if (accept(':')) {
          auto a = sub_ref();
          expect_arrow();
          auto                               b = sub_ref();
          std::optional<stallings::Morphism> phi;
          if (accept_word("by")) {
            phi = iso_ref();
          }
          letters.push_back({Symbol::intern(t), a, b, phi});
        } else {
          fail("expected 'fixes' or ':'");
        }
        (void)at;
      } while (accept(','));
      return make_hnn(name, base, std::move(letters));
    }

    NodePtr amalgam(std::string const& name) {
      NodePtr left = group_ref();
      expect(',');
      NodePtr right = group_ref();
      if (!accept(';')) {
        return make_free_product(name, left, right);
      }
      if (!accept_word("over")) {
        fail("expected 'over'");
      }
      auto a = sub_ref();
      expect('~');
      auto                               b = sub_ref();
      std::optional<stallings::Morphism> phi;
      if (accept_word("by")) {
        phi = iso_ref();
      }
      return make_amalgam(name, left, right, a, b, phi);
    }

    NodePtr star(std::string const& name) {
      NodePtr               m = group_ref();
      std::vector<StarPart> parts;
      expect(';');
      do {
        expect('(');
        NodePtr k = group_ref();
        expect(',');
        auto l = sub_ref();
        expect(',');
        std::string t = ident("a stable letter");
        expect(')');
        parts.push_back({k, l, Symbol::intern(t)});
      } while (accept(','));
      return make_star(name, m, std::move(parts));
    }

    void sub() {
      auto [name, at] = fresh_name();
      expect('=');
      std::size_t kw_at = (skip_ws(), pos_);
      std::string kind  = ident("a subgroup constructor");
      expect('(');
      SubgroupPtr h;
      if (kind == "subgroup" || kind == "bounded") {
        NodePtr g = group_ref();
        expect(';');
        auto gens = words(g->alphabet(), ")");
        h = kind == "subgroup" ? Subgroup::automatic(g, gens, name)
                               : Subgroup::bounded(g, gens, {}, name);
      } else if (kind == "tail") {
        NodePtr g = group_ref();
        expect(';');
        std::int64_t m = integer();
        expect(',');
        std::size_t dir_at = (skip_ws(), pos_);
        std::string dir    = ident("'up' or 'down'");
        if (dir != "up" && dir != "down") {
          fail_at(dir_at, "expected 'up' or 'down'");
        }
        auto s = gadgets::tail_stream(m, dir == "up" ? gadgets::Direction::Up : gadgets::Direction::Down);
        h      = Subgroup::stream(g, std::move(s), name);
      } else if (kind == "closure") {
        NodePtr g = group_ref();
        expect(';');
        if (g->kind() == NodeKind::Amalgam) {
          auto l = sub_ref();
          expect(',');
          auto r = sub_ref();
          h      = Subgroup::amalgam_closure(g, l, r, name);
        } else {
          auto                gp = sub_ref();
          std::vector<Symbol> letters;
          if (accept(';') || accept(',')) {
            do {
              std::size_t t_at = (skip_ws(), pos_);
              std::string t    = ident("a stable letter");
              auto        s    = Symbol::find(t);
              if (!s || !g->alphabet().contains(*s)) {
                fail_at(t_at, "unknown stable letter '" + t + "'");
              }
              letters.push_back(*s);
            } while (accept(','));
          }
          h = Subgroup::stable_closure(g, gp, letters, {}, name);
        }
      } else if (kind == "conjugate") {
        auto inner = sub_ref();
        expect(';');
        auto by = words(inner->ambient()->alphabet(), ")");
        if (by.size() != 1) {
          fail("expected one conjugating word");
        }
        h = conjugate(inner, by[0], name);
      } else if (kind == "join") {
        std::vector<SubgroupPtr> parts;
        do {
          parts.push_back(sub_ref());
        } while (accept(','));
        h = join(parts, name);
      } else {
        fail_at(kw_at, "unknown subgroup constructor '" + kind + "'");
      }
      expect(')');
      (void)at;
      ws_.subgroups_[name] = h;
      ws_.sub_order_.push_back(name);
    }

    void iso() {
      auto [name, at] = fresh_name();
      expect(':');
      std::string dom_at_name = peek_ident();
      auto        a           = sub_ref();
      expect_arrow();
      std::string cod_name = peek_ident();
      auto        b        = sub_ref();
      if (!accept_word("on")) {
        fail("expected 'on'");
      }
      expect('{');
      std::vector<Word> keys, images;
      skip_ws();
      if (peek() != '}') {
        do {
          keys.push_back(word(a->ambient()->alphabet(), "-"));
          expect_arrow();
          images.push_back(word(b->ambient()->alphabet(), ",}"));
        } while (accept(','));
      }
      expect('}');
      Alphabet amb = a->ambient()->alphabet();
      amb.insert(b->ambient()->alphabet().begin(), b->ambient()->alphabet().end());
      (void)at;
      ws_.isos_.insert_or_assign(name, stallings::Morphism(amb, keys, images));
      ws_.iso_domain_[name]   = dom_at_name;
      ws_.iso_codomain_[name] = cod_name;
    }

    // references

    std::pair<std::string, std::size_t> fresh_name() {
      skip_ws();
      std::size_t at   = pos_;
      std::string name = ident("a name");
      if (ws_.groups_.contains(name) || ws_.subgroups_.contains(name) || ws_.isos_.contains(name)) {
        fail_at(at, "name '" + name + "' is already declared");
      }
      return {name, at};
    }

    NodePtr group_ref() {
      skip_ws();
      std::size_t at   = pos_;
      std::string name = ident("a group name");
      auto        it   = ws_.groups_.find(name);
      if (it == ws_.groups_.end()) {
        fail_at(at, "unknown group '" + name + "'");
      }
      return it->second;
    }

    SubgroupPtr sub_ref() {
      skip_ws();
      std::size_t at   = pos_;
      std::string name = ident("a subgroup name");
      auto        it   = ws_.subgroups_.find(name);
      if (it == ws_.subgroups_.end()) {
        fail_at(at, "unknown subgroup '" + name + "'");
      }
      return it->second;
    }

    stallings::Morphism iso_ref() {
      skip_ws();
      std::size_t at   = pos_;
      std::string name = ident("an isomorphism name");
      auto        it   = ws_.isos_.find(name);
      if (it == ws_.isos_.end()) {
        fail_at(at, "unknown isomorphism '" + name + "'");
      }
      return it->second;
    }

    // words

    // Reads a word up to a top-level ',' or ')' (or a character of `stop`)
    // and parses it over `alphabet`.
    Word word(Alphabet const& alphabet, std::string_view stop) {
      skip_ws();
      std::size_t start = pos_;
      int         depth = 0;
      while (pos_ < text_.size()) {
        char c = text_[pos_];
        if (c == '(') {
          ++depth;
        } else if (c == ')') {
          if (depth == 0) {
            break;
          }
          --depth;
        } else if (depth == 0 && (c == ',' || stop.find(c) != std::string_view::npos)) {
          if (c != '-' || (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>')) {
            break;
          }
        }
        ++pos_;
      }
      std::string_view raw = text_.substr(start, pos_ - start);
      while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) {
        raw.remove_suffix(1);
      }
      if (raw.empty()) {
        fail_at(start, "expected a word");
      }
      try {
        return parse_word(raw, alphabet);
      } catch (ParseError const& e) {
        fail_at(start + e.column() - 1, e.detail());
      } catch (UnknownSymbol const& e) {
        fail_at(start, e.what());
      }
    }

    std::vector<Word> words(Alphabet const& alphabet, std::string_view stop) {
      std::vector<Word> out;
      skip_ws();
      if (peek() == ')') {
        return out;
      }
      do {
        out.push_back(word(alphabet, stop));
      } while (accept(','));
      return out;
    }

    // tokens

    char peek() const {
      return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void skip_ws() {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
    }

    bool accept(char c) {
      skip_ws();
      if (peek() == c) {
        ++pos_;
        return true;
      }
      return false;
    }

    void expect(char c) {
      if (!accept(c)) {
        fail(std::string("expected '") + c + "'");
      }
    }

    void expect_arrow() {
      skip_ws();
      if (text_.substr(pos_, 2) != "->") {
        fail("expected '->'");
      }
      pos_ += 2;
    }

    bool accept_word(std::string_view kw) {
      skip_ws();
      std::size_t save = pos_;
      if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) {
        std::size_t end = pos_;
        while (end < text_.size()
               && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'
                   || text_[end] == '\'')) {
          ++end;
        }
        if (text_.substr(pos_, end - pos_) == kw) {
          pos_ = end;
          return true;
        }
      }
      pos_ = save;
      return false;
    }

    std::string peek_ident() {
      std::size_t save = pos_;
      skip_ws();
      std::string out;
      while (pos_ < text_.size()
             && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'
                 || text_[pos_] == '\'')) {
        out += text_[pos_++];
      }
      pos_ = save;
      return out;
    }

    std::string ident(std::string_view what) {
      skip_ws();
      std::size_t start = pos_;
      if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) {
        while (pos_ < text_.size()
               && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'
                   || text_[pos_] == '\'')) {
          ++pos_;
        }
      }
      if (start == pos_) {
        fail("expected " + std::string(what));
      }
      return std::string(text_.substr(start, pos_ - start));
    }

    std::int64_t integer() {
      skip_ws();
      std::size_t start = pos_;
      if (peek() == '-' || peek() == '+') {
        ++pos_;
      }
      std::size_t digits = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      if (digits == pos_) {
        fail_at(start, "expected an integer");
      }
      return std::stoll(std::string(text_.substr(start, pos_ - start)));
    }

    [[noreturn]] void fail(std::string const& msg) const {
      fail_at(pos_, msg);
    }

    [[noreturn]] void fail_at(std::size_t at, std::string const& msg) const {
      throw ParseError(msg, line_, at + 1);
    }

    Workspace&       ws_;
    std::string_view text_;
    std::size_t      line_;
    std::size_t      pos_ = 0;
  };

  void Workspace::load(std::string_view text) {
    std::size_t lineno = 0;
    std::size_t start  = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) {
        end = text.size();
      }
      std::string_view line = text.substr(start, end - start);
      ++lineno;
      if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
      }
      if (auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      DeclParser(*this, line, lineno).run();
      if (end == text.size()) {
        break;
      }
      start = end + 1;
    }
  }

  NodePtr Workspace::group(std::string const& name) const {
    auto it = groups_.find(name);
    if (it == groups_.end()) {
      throw Error("unknown group '" + name + "'");
    }
    return it->second;
  }

  SubgroupPtr Workspace::subgroup(std::string const& name) const {
    auto it = subgroups_.find(name);
    if (it == subgroups_.end()) {
      throw Error("unknown subgroup '" + name + "'");
    }
    return it->second;
  }

  std::vector<Diagnostic> Workspace::check() const {
    std::vector<Diagnostic> out;
    std::set<std::string>   seen;
    for (auto const& name : group_order_) {
      for (auto& d : validate(groups_.at(name))) {
        if (seen.insert(d.str()).second) {
          out.push_back(std::move(d));
        }
      }
    }
    return out;
  }

  Workspace parse_workspace(std::string_view text) {
    Workspace ws;
    ws.load(text);
    return ws;
  }

  ////////////////////////////////////////////////////////////////////////
  // Emission
  ////////////////////////////////////////////////////////////////////////

  namespace {

    std::string join_words(std::vector<Word> const& ws) {
      std::string out;
      for (std::size_t i = 0; i < ws.size(); ++i) {
        out += (i ? ", " : "") + ws[i].str();
      }
      return out;
    }

    class Emitter {
     public:
      std::string out;

      std::string node(NodePtr const& n) {
        if (auto it = node_names_.find(n.get()); it != node_names_.end()) {
          return it->second;
        }
        std::string decl;
        switch (n->kind()) {
          case NodeKind::Free: {
            decl = "free(";
            for (std::size_t i = 0; i < n->symbols().size(); ++i) {
              decl += (i ? ", " : "") + std::string(n->symbols()[i].name());
            }
            decl += ")";
            break;
          }
          case NodeKind::Hnn: {
            std::string base = node(n->base());
            decl             = "hnn(" + base + ";";
            for (std::size_t i = 0; i < n->letters().size(); ++i) {
              auto const& l = n->letters()[i];
              std::string t(l.stable.name());
              decl += i ? ", " : " ";
              if (!l.phi && l.assoc == l.image) {
                decl += t + " fixes " + sub(l.assoc);
                continue;
              }
              std::string a = sub(l.assoc);
              std::string b = sub(l.image);
              decl += t + " : " + a + " -> " + b;
              if (l.phi) {
                decl += " by " + iso(*l.phi, a, b, "phi_" + t);
              }
            }
            decl += ")";
            break;
          }
          case NodeKind::Amalgam: {
            std::string l = node(n->left());
            std::string r = node(n->right());
            decl          = "amalgam(" + l + ", " + r;
            if (n->phi() || !n->left_sub()->is_trivial_subgroup()
                || !n->right_sub()->is_trivial_subgroup()) {
              std::string a = sub(n->left_sub());
              std::string b = sub(n->right_sub());
              decl += "; over " + a + " ~ " + b;
              if (n->phi()) {
                decl += " by " + iso(*n->phi(), a, b, "psi");
              }
            }
            decl += ")";
            break;
          }
          case NodeKind::Star: {
            std::string m = node(n->shared());
            decl          = "star(" + m + ";";
            for (std::size_t i = 0; i < n->parts().size(); ++i) {
              auto const& p = n->parts()[i];
              std::string k = node(p.k);
              std::string l = sub(p.l);
              decl += std::string(i ? ", " : " ") + "(" + k + ", " + l + ", "
                      + std::string(p.t.name()) + ")";
            }
            decl += ")";
            break;
          }
        }
        std::string name       = fresh(n->name(), "G");
        node_names_[n.get()]   = name;
        out += "group " + name + " = " + decl + "\n";
        return name;
      }

      std::string sub(SubgroupPtr const& h) {
        if (auto it = sub_names_.find(h.get()); it != sub_names_.end()) {
          return it->second;
        }
        std::string amb = node(h->ambient());
        std::string decl;
        switch (h->strategy()) {
          case Strategy::StallingsFree:
          case Strategy::Factor:
            decl = "subgroup(" + amb + "; " + join_words(h->generators()) + ")";
            break;
          case Strategy::BoundedSearch:
            decl = (h->is_trivial_subgroup() ? "subgroup(" : "bounded(") + amb + "; "
                   + join_words(h->generators()) + ")";
            break;
          case Strategy::Stream: {
            auto const& s = *h->stream_data();
            if (!s.fixed.empty() || s.rays.size() != 1 || s.description.rfind("tail(", 0) != 0) {
              throw Error("stream '" + h->name() + "' has no textual form");
            }
            auto const& r = s.rays[0];
            decl = "tail(" + amb + "; "
                   + (r.direction > 0 ? std::to_string(r.start) + ", up"
                                      : std::to_string(r.start + 1) + ", down")
                   + ")";
            break;
          }
          case Strategy::StableClosure: {
            std::string inner = sub(h->inner());
            decl              = "closure(" + amb + "; " + inner;
            for (std::size_t i = 0; i < h->letters().size(); ++i) {
              decl += (i ? ", " : "; ") + std::string(h->letters()[i].name());
            }
            decl += ")";
            break;
          }
          case Strategy::AmalgamClosure: {
            std::string l = sub(h->left_part());
            std::string r = sub(h->right_part());
            decl          = "closure(" + amb + "; " + l + ", " + r + ")";
            break;
          }
          case Strategy::Conjugate: {
            std::string inner = sub(h->inner());
            decl              = "conjugate(" + inner + "; " + h->conjugator().str() + ")";
            break;
          }
        }
        std::string name    = fresh(h->name(), "S");
        sub_names_[h.get()] = name;
        out += "sub " + name + " = " + decl + "\n";
        return name;
      }

     private:
      std::string iso(stallings::Morphism const& phi,
                      std::string const&         a,
                      std::string const&         b,
                      std::string const&         hint) {
        std::string name = fresh(hint, "phi");
        std::string decl = "iso " + name + " : " + a + " -> " + b + " on {";
        for (std::size_t i = 0; i < phi.keys().size(); ++i) {
          decl += std::string(i ? ", " : " ") + phi.keys()[i].str() + " -> " + phi.images()[i].str();
        }
        out += decl + " }\n";
        return name;
      }

      std::string fresh(std::string const& hint, std::string const& fallback) {
        std::string base;
        for (char c : hint) {
          if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            base += c;
          } else if (c == '\'') {
            base += "p";
          }
        }
        if (base.empty() || std::isdigit(static_cast<unsigned char>(base[0]))) {
          base = fallback + base;
        }
        std::string name = base;
        for (int k = 2; used_.contains(name) || is_keyword(name); ++k) {
          name = base + "_" + std::to_string(k);
        }
        used_.insert(name);
        return name;
      }

      static bool is_keyword(std::string const& s) {
        static std::set<std::string> const kw{"group", "sub", "iso", "fixes", "by", "over", "on"};
        return kw.contains(s);
      }

      std::unordered_map<Node const*, std::string>     node_names_;
      std::unordered_map<Subgroup const*, std::string> sub_names_;
      std::set<std::string>                            used_;
    };

  }  // namespace

  std::string emit_dsl(NodePtr const& root, std::vector<SubgroupPtr> const& extra) {
    Emitter e;
    e.node(root);
    for (auto const& h : extra) {
      e.sub(h);
    }
    return e.out;
  }

}  // namespace fcw
