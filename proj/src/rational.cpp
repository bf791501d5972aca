#include "reclab/rational.hpp"

#include <cctype>

#include "reclab/error.hpp"

namespace reclab {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  std::string buf(s);
  if (!buf.empty() && buf[0] == '+') buf.erase(0, 1);
  return mpz_class(buf, 10);
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw Error(ErrorCode::ParseError, "not an exact rational: '" + std::string(text) + "'");
  }
  mpz_class d = parse_integer(den);
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  mpq_class q(parse_integer(num), d);
  q.canonicalize();
  return Rational(q);
}

Rational Rational::from_decimal(std::string_view text) {
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return parse(text);
  std::string whole(text.substr(0, dot));
  std::string frac(text.substr(dot + 1));
  if (whole.empty()) whole = "0";
  if (!is_integer_literal(whole) || (!frac.empty() && !is_integer_literal(frac)) ||
      (!frac.empty() && (frac[0] == '-' || frac[0] == '+'))) {
    throw Error(ErrorCode::ParseError, "not a decimal: '" + std::string(text) + "'");
  }
  bool negative = whole[0] == '-';
  mpz_class scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  mpz_class w = parse_integer(whole);
  if (negative) w = -w;
  mpz_class f = frac.empty() ? mpz_class(0) : parse_integer(frac);
  mpq_class q(w * scale + f, scale);
  q.canonicalize();
  if (negative) q = -q;
  return Rational(q);
}

std::string Rational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::uint64_t Rational::scaled_floor(unsigned bits) const {
  if (sgn(q_) <= 0) return 0;
  mpz_class scaled = q_.get_num();
  scaled <<= bits;
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), scaled.get_mpz_t(), q_.get_den().get_mpz_t());
  mpz_class cap = mpz_class(1) << bits;
  if (out > cap) out = cap;
  return static_cast<std::uint64_t>(out.get_ui());
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
  q_ /= o.q_;
  return *this;
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational pow(const Rational& base, unsigned exponent) {
  mpq_class out(1);
  mpq_class b = base.raw();
  for (unsigned i = 0; i < exponent; ++i) out *= b;
  return Rational(out);
}

}  // namespace reclab
