#include "zpl/real.hpp"

#include "zpl/errors.hpp"

#include <cstring>
#include <utility>
#include <vector>

namespace zpl {

// A moved-from Real has a null limb pointer; the destructor skips it.
Real::Real(mpfr_prec_t prec)
{
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

Real::Real(double value, mpfr_prec_t prec)
{
  mpfr_init2(value_, prec);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(const Real& other)
{
  mpfr_init2(value_, other.prec());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept
{
  std::memcpy(value_, other.value_, sizeof(mpfr_t));
  other.value_->_mpfr_d = nullptr;
}

Real& Real::operator=(const Real& other)
{
  if (this != &other) {
    if (value_->_mpfr_d == nullptr) {
      mpfr_init2(value_, other.prec());
    } else if (prec() != other.prec()) {
      mpfr_set_prec(value_, other.prec());
    }
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept
{
  if (this != &other) {
    if (value_->_mpfr_d != nullptr) mpfr_clear(value_);
    std::memcpy(value_, other.value_, sizeof(mpfr_t));
    other.value_->_mpfr_d = nullptr;
  }
  return *this;
}

Real::~Real()
{
  if (value_->_mpfr_d != nullptr) mpfr_clear(value_);
}

Real Real::from_rational(const Rational& q, mpfr_prec_t prec, bool* exact)
{
  Real r(prec);
  int t = mpfr_set_q(r.value_, q.get_mpq_t(), MPFR_RNDN);
  if (exact != nullptr) *exact = (t == 0);
  return r;
}

Real Real::from_string(std::string_view text, mpfr_prec_t prec, bool* exact)
{
  Real r(prec);
  std::string s(text);
  char* end = nullptr;
  int t = mpfr_strtofr(r.value_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0') throw Error(ErrorCode::ParseError, "bad real '" + s + "'");
  if (exact != nullptr) *exact = (t == 0);
  return r;
}

Rational Real::to_rational() const
{
  if (!is_finite()) throw Error(ErrorCode::Overflow, "non-finite value has no rational form");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), value_);
  return q;
}

std::string Real::to_string(int digits) const
{
  std::string fmt = "%." + std::to_string(digits) + "Rg";
  int n = mpfr_snprintf(nullptr, 0, fmt.c_str(), value_);
  std::vector<char> buf(static_cast<std::size_t>(n) + 1);
  mpfr_snprintf(buf.data(), buf.size(), fmt.c_str(), value_);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

}  // namespace zpl
