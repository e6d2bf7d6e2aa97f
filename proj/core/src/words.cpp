#include "fcw/words.hpp"

#include <cctype>
#include <cstdlib>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace fcw {

  namespace {

    class SymbolTable {
     public:
      SymbolTable() {
        names_.emplace_back();
        ids_.emplace(std::string(), 0);
      }

      std::uint32_t intern(std::string_view name) {
        {
          std::shared_lock lock(mtx_);
          auto             it = ids_.find(std::string(name));
          if (it != ids_.end()) {
            return it->second;
          }
        }
        std::unique_lock lock(mtx_);
        auto [it, inserted] = ids_.emplace(
            std::string(name), static_cast<std::uint32_t>(names_.size()));
        if (inserted) {
          names_.emplace_back(name);
        }
        return it->second;
      }

      std::optional<std::uint32_t> find(std::string_view name) const {
        std::shared_lock lock(mtx_);
        auto             it = ids_.find(std::string(name));
        if (it == ids_.end()) {
          return std::nullopt;
        }
        return it->second;
      }

      std::string_view name(std::uint32_t id) const {
        std::shared_lock lock(mtx_);
        // deque never relocates its elements
        return names_[id];
      }

     private:
      mutable std::shared_mutex                      mtx_;
      std::deque<std::string>                        names_;
      std::unordered_map<std::string, std::uint32_t> ids_;
    };

    SymbolTable& table() {
      static SymbolTable t;
      return t;
    }

  }  // namespace

  Symbol Symbol::intern(std::string_view name) {
    return Symbol(table().intern(name));
  }

  std::optional<Symbol> Symbol::find(std::string_view name) {
    auto id = table().find(name);
    if (!id) {
      return std::nullopt;
    }
    return Symbol(*id);
  }

  std::string_view Symbol::name() const {
    return table().name(id_);
  }

  ////////////////////////////////////////////////////////////////////////
  // Word
  ////////////////////////////////////////////////////////////////////////

  Word Word::letter(Symbol s, std::int64_t exponent) {
    Word w;
    w.append(s, exponent);
    return w;
  }

  Word Word::reduce(std::span<Syllable const> raw) {
    Word w;
    for (auto const& s : raw) {
      w.append(s.symbol, s.exponent);
    }
    return w;
  }

  Word Word::reduce(std::span<Syllable const> raw, Alphabet const& alphabet) {
    for (auto const& s : raw) {
      if (!alphabet.contains(s.symbol)) {
        throw UnknownSymbol(std::string(s.symbol.name()));
      }
    }
    return reduce(raw);
  }

  void Word::append(Symbol x, std::int64_t k) {
    if (k == 0) {
      return;
    }
    if (!syl_.empty() && syl_.back().symbol == x) {
      syl_.back().exponent += k;
      if (syl_.back().exponent == 0) {
        syl_.pop_back();
      }
      return;
    }
    syl_.push_back({x, k});
  }

  Word& Word::operator*=(Word const& other) {
    if (this == &other) {
      Word copy = other;
      return *this *= copy;
    }
    auto it = other.syl_.begin();
    // cancel across the seam, then append the remainder
    while (it != other.syl_.end() && !syl_.empty()
           && syl_.back().symbol == it->symbol) {
      syl_.back().exponent += it->exponent;
      ++it;
      if (syl_.back().exponent != 0) {
        break;
      }
      syl_.pop_back();
    }
    syl_.insert(syl_.end(), it, other.syl_.end());
    return *this;
  }

  std::size_t Word::length() const noexcept {
    std::size_t n = 0;
    for (auto const& s : syl_) {
      n += static_cast<std::size_t>(s.exponent < 0 ? -s.exponent
                                                   : s.exponent);
    }
    return n;
  }

  Word Word::inverse() const {
    Word w;
    w.syl_.reserve(syl_.size());
    for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) {
      w.syl_.push_back({it->symbol, -it->exponent});
    }
    return w;
  }

  Word Word::pow(std::int64_t k) const {
    if (k == 0 || syl_.empty()) {
      return {};
    }
    if (syl_.size() == 1) {
      return letter(syl_[0].symbol, syl_[0].exponent * k);
    }
    Word base = k < 0 ? inverse() : *this;
    Word out;
    for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) {
      out *= base;
    }
    return out;
  }

  Word Word::conjugate(Word const& by) const {
    return by.inverse() * *this * by;
  }

  std::vector<Syllable> Word::letters() const {
    std::vector<Syllable> out;
    out.reserve(length());
    for (auto const& s : syl_) {
      std::int64_t sign = s.exponent < 0 ? -1 : 1;
      for (std::int64_t i = 0; i < s.exponent * sign; ++i) {
        out.push_back({s.symbol, sign});
      }
    }
    return out;
  }

  Alphabet Word::symbols() const {
    Alphabet out;
    for (auto const& s : syl_) {
      out.insert(s.symbol);
    }
    return out;
  }

  bool Word::uses_only(Alphabet const& alphabet) const {
    for (auto const& s : syl_) {
      if (!alphabet.contains(s.symbol)) {
        return false;
      }
    }
    return true;
  }

  bool Word::uses_any(Alphabet const& alphabet) const {
    for (auto const& s : syl_) {
      if (alphabet.contains(s.symbol)) {
        return true;
      }
    }
    return false;
  }

  std::int64_t Word::exponent_sum(Symbol x) const {
    std::int64_t n = 0;
    for (auto const& s : syl_) {
      if (s.symbol == x) {
        n += s.exponent;
      }
    }
    return n;
  }

  std::string Word::str() const {
    if (syl_.empty()) {
      return "1";
    }
    std::string out;
    for (auto const& s : syl_) {
      if (!out.empty()) {
        out += ' ';
      }
      out += s.symbol.name();
      if (s.exponent != 1) {
        out += '^';
        out += std::to_string(s.exponent);
      }
    }
    return out;
  }

  Word mul(Word const& x, Word const& y) {
    return x * y;
  }

  Word inv(Word const& x) {
    return x.inverse();
  }

  Word conj(Word const& x, Word const& by) {
    return x.conjugate(by);
  }

  ////////////////////////////////////////////////////////////////////////
  // Parsing
  ////////////////////////////////////////////////////////////////////////

  namespace {

    bool ident_start(char c) {
      return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }

    bool ident_char(char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_'
             || c == '\'';
    }

    class WordParser {
     public:
      WordParser(std::string_view text, Alphabet const* alphabet)
          : text_(text), alphabet_(alphabet) {}

      Word parse() {
        Word w = word();
        skip_ws();
        if (pos_ != text_.size()) {
          fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return w;
      }

     private:
      Word word() {
        Word w;
        bool any = false;
        while (true) {
          skip_ws();
          if (pos_ >= text_.size() || text_[pos_] == ')') {
            break;
          }
          w *= term();
          any = true;
        }
        if (!any) {
          fail("expected a word");
        }
        return w;
      }

      Word term() {
        Word base;
        char c = text_[pos_];
        if (c == '(') {
          ++pos_;
          base = word();
          expect(')');
        } else if (c == '1'
                   && (pos_ + 1 == text_.size()
                       || !ident_char(text_[pos_ + 1]))) {
          ++pos_;
        } else if (ident_start(c)) {
          base = Word::letter(symbol());
        } else {
          fail("unexpected '" + std::string(1, c) + "'");
        }
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '^') {
          ++pos_;
          skip_ws();
          if (pos_ < text_.size() && text_[pos_] == '(') {
            ++pos_;
            Word by = word();
            expect(')');
            return base.conjugate(by);
          }
          return base.pow(integer());
        }
        return base;
      }

      Symbol symbol() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) {
          ++pos_;
        }
        auto name = text_.substr(start, pos_ - start);
        if (alphabet_ != nullptr) {
          auto s = Symbol::find(name);
          if (!s || !alphabet_->contains(*s)) {
            throw UnknownSymbol(std::string(name));
          }
          return *s;
        }
        return Symbol::intern(name);
      }

      std::int64_t integer() {
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
          ++pos_;
        }
        std::size_t digits = pos_;
        while (pos_ < text_.size()
               && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
        if (digits == pos_) {
          fail("expected an integer exponent");
        }
        return std::stoll(std::string(text_.substr(start, pos_ - start)));
      }

      void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c) {
          fail(std::string("expected '") + c + "'");
        }
        ++pos_;
      }

      void skip_ws() {
        while (pos_ < text_.size()
               && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
      }

      [[noreturn]] void fail(std::string const& msg) const {
        throw ParseError(msg, 1, pos_ + 1);
      }

      std::string_view text_;
      Alphabet const*  alphabet_;
      std::size_t      pos_ = 0;
    };

  }  // namespace

  Word parse_word(std::string_view text) {
    return WordParser(text, nullptr).parse();
  }

  Word parse_word(std::string_view text, Alphabet const& alphabet) {
    return WordParser(text, &alphabet).parse();
  }

  bool is_identifier(std::string_view name) {
    if (name.empty() || !ident_start(name[0])) {
      return false;
    }
    for (char c : name) {
      if (!ident_char(c)) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // FinSupportSeq
  ////////////////////////////////////////////////////////////////////////

  FinSupportSeq FinSupportSeq::normalize(std::span<std::int64_t const> values,
                                         std::int64_t offset) {
    FinSupportSeq f;
    for (std::size_t k = 0; k < values.size(); ++k) {
      f.set(offset + static_cast<std::int64_t>(k), values[k]);
    }
    return f;
  }

  std::int64_t FinSupportSeq::at(std::int64_t i) const {
    auto it = entries_.find(i);
    return it == entries_.end() ? 0 : it->second;
  }

  void FinSupportSeq::set(std::int64_t i, std::int64_t value) {
    if (value == 0) {
      entries_.erase(i);
    } else {
      entries_[i] = value;
    }
  }

}  // namespace fcw

std::size_t std::hash<fcw::Word>::operator()(
    fcw::Word const& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto const& s : w.syllables()) {
    h ^= s.symbol.id() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(s.exponent) + 0x9e3779b97f4a7c15ULL
         + (h << 6) + (h >> 2);
  }
  return h;
}
