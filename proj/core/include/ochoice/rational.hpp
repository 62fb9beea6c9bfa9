#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace ochoice {

// Arbitrary-precision rational, always in lowest terms with positive
// denominator. Every probability, copula value and LP coefficient in this
// library is one of these; nothing is ever rounded.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}
  Rational(int n) : v_(n) {}
  Rational(long num, long den);

  // Accepts "3", "-7", "a/b" and decimal strings ("0.35" -> 7/20).
  static Rational parse(std::string_view text);

  // Canonical form: "a/b", or just "a" when the denominator is 1.
  std::string str() const;

  // Fixed-point decimal rendering for display only (round half to even).
  std::string decimal(int digits) const;

  double to_double() const { return v_.get_d(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
  friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
  friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
  friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
  friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend Rational abs(const Rational& a) { Rational r; r.v_ = ::abs(a.v_); return r; }
  friend Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
  friend Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
  mpq_class v_;
};

} // namespace ochoice
