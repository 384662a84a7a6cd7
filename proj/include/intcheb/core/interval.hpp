#pragma once

#include <string>
#include <string_view>

#include "intcheb/core/numbers.hpp"

namespace intcheb {

/// Closed real segment [a, b] with rational endpoints, a < b.
class Interval {
 public:
  Interval(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
    if (!(a_ < b_))
      throw PreconditionError("invalid_interval",
                              "interval requires a < b, got [" + to_string(a_) + "," + to_string(b_) + "]");
  }

  /// The length-4 segment [c-2, c+2].
  static Interval centered4(const Rational& c) { return Interval(c - 2, c + 2); }

  /// Parses "a,b" with rational or decimal tokens ("1/3,1/2", "-1,1").
  static Interval parse(std::string_view text) {
    auto comma = text.find(',');
    if (comma == std::string_view::npos)
      throw PreconditionError("invalid_interval", "interval must be written as a,b");
    return Interval(parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1)));
  }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  Rational length() const { return b_ - a_; }
  Rational midpoint() const { return (a_ + b_) / 2; }
  bool contains(const Rational& x) const { return a_ <= x && x <= b_; }

  std::string str() const { return to_string(a_) + "," + to_string(b_); }

  friend bool operator==(const Interval& l, const Interval& r) { return l.a_ == r.a_ && l.b_ == r.b_; }

 private:
  Rational a_, b_;
};

}  // namespace intcheb
