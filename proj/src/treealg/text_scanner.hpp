#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "kpzlab/treealg/exact.hpp"

namespace kpzlab::treealg::detail {

// Cursor over a text with the token shapes shared by the tree, polynomial
// and table parsers.
class TextScanner {
 public:
  explicit TextScanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool consume(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool consume(std::string_view word) {
    skip_space();
    if (text_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }
  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }
  void expect_end() {
    if (!at_end()) fail("unexpected trailing text");
  }

  bool at_number() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
  bool at_identifier() {
    const char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
  }

  unsigned read_unsigned() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
  }
  int read_int() {
    const bool negative = consume('-');
    const int value = static_cast<int>(read_unsigned());
    return negative ? -value : value;
  }

  // Unsigned rational "p" or "p/q".
  Rational read_rational() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (start == pos_) fail("expected a number");
    return parse_rational(text_.substr(start, pos_ - start));
  }

  std::string read_identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected an identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  // Reads up to (not including) the closing delimiter.
  std::string read_until(char close) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != close) ++pos_;
    if (pos_ >= text_.size()) fail(std::string("missing '") + close + "'");
    std::string out(text_.substr(start, pos_ - start));
    ++pos_;
    return out;
  }

  std::size_t position() const { return pos_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument(what + " at offset " + std::to_string(pos_) + " in '" +
                                std::string(text_) + "'");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace kpzlab::treealg::detail
