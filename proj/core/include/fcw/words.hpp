#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fcw/error.hpp"

namespace fcw {

  //! Interned generator name.
  //!
  //! Symbols compare by interning order, which is stable within one process
  //! but not across runs; anything that must be reproducible (printing, DOT
  //! export, basis order) sorts by name() instead.
  class Symbol {
   public:
    Symbol() = default;

    static Symbol intern(std::string_view name);
    static std::optional<Symbol> find(std::string_view name);

    std::string_view name() const;
    std::uint32_t    id() const noexcept {
      return id_;
    }

    friend bool operator==(Symbol, Symbol) = default;
    friend auto operator<=>(Symbol, Symbol) = default;

   private:
    explicit Symbol(std::uint32_t id) : id_(id) {}
    std::uint32_t id_ = 0;
  };

  using Alphabet = std::set<Symbol>;

  //! Orders symbols by printable name.
  struct ByName {
    bool operator()(Symbol x, Symbol y) const {
      return x.name() < y.name();
    }
  };

  struct Syllable {
    Symbol       symbol;
    std::int64_t exponent = 1;

    friend bool operator==(Syllable const&, Syllable const&) = default;
    friend auto operator<=>(Syllable const&, Syllable const&) = default;
  };

  //! A freely reduced word, stored run-length as syllables x^k with k != 0
  //! and adjacent syllables on distinct symbols. The empty word is the
  //! identity.
  class Word {
   public:
    Word() = default;

    static Word letter(Symbol s, std::int64_t exponent = 1);
    static Word letter(std::string_view name, std::int64_t exponent = 1) {
      return letter(Symbol::intern(name), exponent);
    }

    //! Freely reduces an arbitrary syllable list.
    static Word reduce(std::span<Syllable const> raw);
    //! As above, rejecting symbols outside `alphabet`.
    static Word reduce(std::span<Syllable const> raw, Alphabet const& alphabet);

    std::vector<Syllable> const& syllables() const noexcept {
      return syl_;
    }
    std::size_t syllable_count() const noexcept {
      return syl_.size();
    }
    bool is_identity() const noexcept {
      return syl_.empty();
    }
    //! Number of letters, i.e. the sum of |exponent|.
    std::size_t length() const noexcept;

    Word inverse() const;
    Word pow(std::int64_t k) const;
    //! by^-1 * this * by
    Word conjugate(Word const& by) const;

    //! Multiplies on the right by x^k, cancelling as needed.
    void append(Symbol x, std::int64_t k);
    Word& operator*=(Word const& other);

    friend Word operator*(Word lhs, Word const& rhs) {
      lhs *= rhs;
      return lhs;
    }

    //! Letter-by-letter expansion as (symbol, +1/-1) pairs.
    std::vector<Syllable> letters() const;

    Alphabet symbols() const;
    bool     uses_only(Alphabet const& alphabet) const;
    bool     uses_any(Alphabet const& alphabet) const;

    //! Exponent sum of `s` over the word.
    std::int64_t exponent_sum(Symbol s) const;

    std::string str() const;

    friend bool operator==(Word const&, Word const&) = default;
    friend auto operator<=>(Word const&, Word const&) = default;

   private:
    std::vector<Syllable> syl_;
  };

  Word mul(Word const& x, Word const& y);
  Word inv(Word const& x);
  Word conj(Word const& x, Word const& by);

  //! Parses `word := term { term }`, `term := symbol [ '^' sexpr ]`,
  //! `sexpr := integer | '(' word ')'`. `x^(w)` expands to `w^-1 x w`; "1"
  //! denotes the identity.
  Word parse_word(std::string_view text);
  Word parse_word(std::string_view text, Alphabet const& alphabet);

  //! True iff `name` is a legal symbol identifier.
  bool is_identifier(std::string_view name);

  //! A finitely supported integer sequence Z -> Z. Zero entries are never
  //! stored, so zero padding on either side does not affect equality.
  class FinSupportSeq {
   public:
    FinSupportSeq() = default;

    //! Builds f with f(offset + k) = values[k].
    static FinSupportSeq normalize(std::span<std::int64_t const> values,
                                   std::int64_t                  offset = 0);
    static FinSupportSeq normalize(std::initializer_list<std::int64_t> values,
                                   std::int64_t offset = 0) {
      std::vector<std::int64_t> v(values);
      return normalize(v, offset);
    }

    std::int64_t at(std::int64_t i) const;
    void         set(std::int64_t i, std::int64_t value);

    std::map<std::int64_t, std::int64_t> const& entries() const noexcept {
      return entries_;
    }
    bool empty() const noexcept {
      return entries_.empty();
    }

    friend bool operator==(FinSupportSeq const&, FinSupportSeq const&)
        = default;

   private:
    std::map<std::int64_t, std::int64_t> entries_;
  };

}  // namespace fcw

template <>
struct std::hash<fcw::Word> {
  std::size_t operator()(fcw::Word const& w) const noexcept;
};
