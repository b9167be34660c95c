#pragma once

// Ring expressions accepted on the command line:
//
//   spec := "rat" | "grassmann:" INT | "full:" INT | "u3star(" spec ")"
//
// "poly" is accepted as an alias of "rat" (a rational ring whose generic
// elements already carry polynomial coefficients). Integer bounds are checked
// after parsing. Error columns are 0-based offsets into the input.

#include "chtrace/errors.hpp"
#include "chtrace/ring.hpp"

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace chtrace {

struct AlgebraSpec {
  RingKind kind = RingKind::rat;
  unsigned parameter = 0;                     // generators or matrix size
  std::shared_ptr<const AlgebraSpec> inner;  // u3star only

  std::string render() const {
    switch (kind) {
      case RingKind::rat: return "rat";
      case RingKind::grassmann: return "grassmann:" + std::to_string(parameter);
      case RingKind::full: return "full:" + std::to_string(parameter);
      case RingKind::u3star: return "u3star(" + inner->render() + ")";
    }
    return "?";
  }

  std::size_t dim() const {
    switch (kind) {
      case RingKind::rat: return 1;
      case RingKind::grassmann: return parameter < 32 ? std::size_t{1} << parameter : 0;
      case RingKind::full: return std::size_t{parameter} * parameter;
      case RingKind::u3star: return 4 * inner->dim();
    }
    return 0;
  }

  friend bool operator==(const AlgebraSpec& a, const AlgebraSpec& b) { return a.render() == b.render(); }
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t column, std::vector<std::string> expected)
      : Error(message), column_(column), expected_(std::move(expected)) {}
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t column_;
  std::vector<std::string> expected_;
};

namespace detail {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  AlgebraSpec parse() {
    AlgebraSpec s = spec();
    if (pos_ != text_.size()) fail("unexpected trailing input", {"end of input"});
    return s;
  }

  const std::vector<std::string>& bound_notes() const { return notes_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string> notes_;

  bool accept(std::string_view word) {
    if (text_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }

  [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) {
    std::string msg = what + " at column " + std::to_string(pos_) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? " or " : "") + expected[i];
    for (const auto& n : notes_) msg += "; also " + n;
    throw ParseError(msg, pos_, std::move(expected));
  }

  unsigned integer(std::string_view ctor) {
    std::size_t start = pos_;
    unsigned long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<unsigned>(text_[pos_] - '0');
      if (v > 1000000) v = 1000000;
      ++pos_;
    }
    if (pos_ == start) fail("missing integer", {"decimal integer"});
    auto value = static_cast<unsigned>(v);
    if (ctor == "grassmann" && (value < 1 || value > kMaxGrassmannGenerators))
      notes_.push_back("r=" + std::to_string(value) + " exceeds bound [1," +
                       std::to_string(kMaxGrassmannGenerators) + "]");
    if (ctor == "full" && (value < 2 || value > 4))
      notes_.push_back("n=" + std::to_string(value) + " exceeds bound [2,4]");
    return value;
  }

  AlgebraSpec spec() {
    AlgebraSpec s;
    if (accept("rat") || accept("poly")) {
      s.kind = RingKind::rat;
    } else if (accept("grassmann:")) {
      s.kind = RingKind::grassmann;
      s.parameter = integer("grassmann");
    } else if (accept("full:")) {
      s.kind = RingKind::full;
      s.parameter = integer("full");
    } else if (accept("u3star(")) {
      s.kind = RingKind::u3star;
      s.inner = std::make_shared<AlgebraSpec>(spec());
      if (!accept(")")) fail("unbalanced parenthesis", {"')'"});
      if (s.dim() > kMaxU3starDim)
        notes_.push_back(s.render() + " has dimension " + std::to_string(s.dim()) + " > " +
                         std::to_string(kMaxU3starDim));
    } else {
      fail("unknown algebra", {"'rat'", "'grassmann:'", "'full:'", "'u3star('"});
    }
    return s;
  }
};

}  // namespace detail

// Parses and bound-checks. Syntax errors raise ParseError, bound violations
// BoundError.
inline AlgebraSpec parse_algebra_spec(std::string_view text) {
  detail::SpecParser parser(text);
  AlgebraSpec s = parser.parse();
  if (!parser.bound_notes().empty()) {
    std::string msg = "algebra '" + std::string(text) + "' out of bounds: " + parser.bound_notes()[0];
    for (std::size_t i = 1; i < parser.bound_notes().size(); ++i) msg += "; " + parser.bound_notes()[i];
    throw BoundError(msg);
  }
  return s;
}

inline Ring build_ring(const AlgebraSpec& s) {
  switch (s.kind) {
    case RingKind::rat: return make_rat();
    case RingKind::grassmann: return make_grassmann(s.parameter);
    case RingKind::full: return make_full(s.parameter);
    case RingKind::u3star: return make_u3star(build_ring(*s.inner));
  }
  throw Error("unknown algebra kind");
}

inline Ring parse_ring(std::string_view text) { return build_ring(parse_algebra_spec(text)); }

}  // namespace chtrace
