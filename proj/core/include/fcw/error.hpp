#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fcw {

  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class ParseError : public Error {
   public:
    ParseError(std::string const& what, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": "
                + what),
          detail_(what),
          line_(line),
          column_(column) {}

    //! The message without its position prefix.
    std::string const& detail() const noexcept {
      return detail_;
    }

    std::size_t line() const noexcept {
      return line_;
    }
    std::size_t column() const noexcept {
      return column_;
    }

   private:
    std::string detail_;
    std::size_t line_;
    std::size_t column_;
  };

  class UnknownSymbol : public Error {
   public:
    explicit UnknownSymbol(std::string const& name)
        : Error("unknown symbol '" + name + "'") {}
  };

  class AmbientMismatch : public Error {
   public:
    using Error::Error;
  };

  class NotAMember : public Error {
   public:
    using Error::Error;
  };

  class InvalidScheme : public Error {
   public:
    using Error::Error;
  };

  // A pinch or coset test could not be decided by the strategy in use.
  class UnsupportedMembership : public Error {
   public:
    using Error::Error;
  };

}  // namespace fcw
