#include "reclab/interval.hpp"

#include <vector>

#include "reclab/error.hpp"

namespace reclab {

Interval::Interval() {
  mpfr_init2(lo_, kPrecision);
  mpfr_init2(hi_, kPrecision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& exact) {
  mpfr_init2(lo_, kPrecision);
  mpfr_init2(hi_, kPrecision);
  mpfr_set_q(lo_, exact.raw().get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, exact.raw().get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& other) {
  mpfr_init2(lo_, kPrecision);
  mpfr_init2(hi_, kPrecision);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

double Interval::lo() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi() const { return mpfr_get_d(hi_, MPFR_RNDU); }

namespace {
std::string render(const mpfr_t x, int digits, mpfr_rnd_t rnd) {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  const std::string fmt = "%." + std::to_string(digits) + "R*g";
  mpfr_snprintf(buf.data(), buf.size(), fmt.c_str(), rnd, x);
  return buf.data();
}
}  // namespace

std::string Interval::lo_str(int digits) const { return render(lo_, digits, MPFR_RNDD); }
std::string Interval::hi_str(int digits) const { return render(hi_, digits, MPFR_RNDU); }

bool Interval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.raw().get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.raw().get_mpq_t()) >= 0;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r;
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  Interval r;
  mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_mul(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (mpfr_sgn(b.lo_) <= 0) throw Error(ErrorCode::InvalidArgument, "interval division by a non-positive interval");
  Interval r;
  mpfr_div(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_div(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval saturate(const Interval& x) {
  Interval r;
  mpfr_t t;
  mpfr_init2(t, Interval::kPrecision);
  mpfr_add_ui(t, x.lo_, 1, MPFR_RNDU);
  mpfr_div(r.lo_, x.lo_, t, MPFR_RNDD);
  mpfr_add_ui(t, x.hi_, 1, MPFR_RNDD);
  mpfr_div(r.hi_, x.hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

}  // namespace reclab
