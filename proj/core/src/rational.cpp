#include "ochoice/rational.hpp"

#include <cctype>
#include <ostream>

#include "ochoice/error.hpp"

namespace ochoice {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidOrder: return "invalid-order";
    case Errc::InvalidMass: return "invalid-mass";
    case Errc::UnknownAlternative: return "unknown-alternative";
    case Errc::ArityMismatch: return "arity-mismatch";
    case Errc::OutOfUnitInterval: return "out-of-unit-interval";
    case Errc::EmptyGrid: return "empty-grid";
    case Errc::NotARepresentation: return "not-a-representation";
    case Errc::NotOneMistake: return "not-one-mistake";
    case Errc::TooLarge: return "too-large";
    case Errc::ParseError: return "parse-error";
    case Errc::Internal: return "internal";
  }
  return "unknown";
}

Rational::Rational(long num, long den) : v_(num, den) {
  if (den == 0) fail(Errc::ParseError, "rational with zero denominator");
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) fail(Errc::Internal, "rational division by zero");
  v_ /= o.v_;
  return *this;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

} // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.remove_prefix(1);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
  if (body.empty()) fail(Errc::ParseError, "empty rational literal");

  bool negative = false;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.empty()) fail(Errc::ParseError, "sign without digits in rational literal");

  Rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      fail(Errc::ParseError, "malformed rational '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) fail(Errc::ParseError, "zero denominator in '" + std::string(text) + "'");
    out.v_ = mpq_class(n) / mpq_class(d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty())
      fail(Errc::ParseError, "malformed decimal '" + std::string(text) + "'");
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
      fail(Errc::ParseError, "malformed decimal '" + std::string(text) + "'");
    mpz_class digits(std::string(whole) + std::string(frac), 10);
    mpz_class scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    out.v_ = mpq_class(digits) / mpq_class(scale);
  } else {
    if (!all_digits(body))
      fail(Errc::ParseError, "malformed rational '" + std::string(text) + "'");
    out.v_ = mpq_class(std::string(body), 10);
  }
  out.v_.canonicalize();
  if (negative) out.v_ = -out.v_;
  return out;
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::decimal(int digits) const {
  if (digits < 0) digits = 0;
  mpz_class scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  mpq_class scaled = v_ * scale;
  // round half to even on the scaled value
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_num().get_mpz_t(),
              scaled.get_den().get_mpz_t());
  mpq_class frac(r, scaled.get_den());
  frac.canonicalize();
  if (frac * 2 > 1 || (frac * 2 == 1 && mpz_odd_p(q.get_mpz_t()))) q += 1;

  bool neg = q < 0;
  mpz_class mag = neg ? mpz_class(-q) : q;
  std::string s = mag.get_str();
  if (digits == 0) return (neg ? "-" : "") + s;
  if (s.size() <= static_cast<size_t>(digits))
    s.insert(0, static_cast<size_t>(digits) + 1 - s.size(), '0');
  s.insert(s.size() - static_cast<size_t>(digits), ".");
  return (neg ? "-" : "") + s;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

} // namespace ochoice
