#include "bethe/parse.hpp"

#include <cctype>
#include <limits>
#include <string>

#include "bethe/errors.hpp"

namespace bethe {

namespace {

class Parser {
 public:
  Parser(std::string_view s, bool poly_only) : s_(s), poly_only_(poly_only) {}

  RationalFunction run() {
    RationalFunction r = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  std::string_view s_;
  bool poly_only_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RationalFunction sum() {
    RationalFunction r = product();
    for (;;) {
      if (eat('+')) r = r + product();
      else if (eat('-')) r = r - product();
      else return r;
    }
  }

  RationalFunction product() {
    RationalFunction r = unary();
    for (;;) {
      if (eat('*')) {
        r = r * unary();
      } else if (eat('/')) {
        std::size_t at = pos_;
        RationalFunction d = unary();
        if (d.is_zero()) throw SyntaxError("division by zero", at);
        r = r / d;
      } else {
        return r;
      }
    }
  }

  RationalFunction unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  RationalFunction power() {
    RationalFunction base = atom();
    if (!eat('^')) return base;
    skip();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    skip();
    std::size_t at = pos_;
    Int e = integer();
    if (e > 4096) throw SyntaxError("exponent too large", at);
    long n = e.get_si();
    RationalFunction out(1);
    for (long i = 0; i < n; ++i) out = out * base;
    if (neg && poly_only_) throw NonPolynomial("negative exponent at position " + std::to_string(at));
    if (neg) {
      if (out.is_zero()) throw SyntaxError("negative power of zero", at);
      out = out.inverse();
    }
    return out;
  }

  Int integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected integer");
    return Int(std::string(s_.substr(start, pos_ - start)));
  }

  RationalFunction atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RationalFunction r = sum();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (c == 'x') {
      ++pos_;
      return Poly::x();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Rat(integer());
    fail("unexpected character '" + std::string(1, c) + "'");
  }
};

}  // namespace

RationalFunction parse_ratfunc(std::string_view text) { return Parser(text, false).run(); }

Poly parse_poly(std::string_view text) {
  RationalFunction r = Parser(text, true).run();
  if (!r.is_polynomial()) throw NonPolynomial("non-polynomial expression " + std::string(text));
  return r.num() * (1 / r.den().lc());
}

}  // namespace bethe
