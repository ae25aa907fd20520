#include "zpl/rational.hpp"

#include "zpl/errors.hpp"

#include <cctype>
#include <cstdio>
#include <cmath>
#include <string>

namespace zpl {

namespace {

mpz_class pow10(unsigned long e)
{
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

// floor(a / b) for b > 0
mpz_class floor_div(const mpz_class& a, const mpz_class& b)
{
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

mpz_class ceil_div(const mpz_class& a, const mpz_class& b)
{
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// round(|a| / b) half away from zero, b > 0, a >= 0
mpz_class round_div_nonneg(const mpz_class& a, const mpz_class& b)
{
  mpz_class twice = 2 * a + b;
  return floor_div(twice, 2 * b);
}

}  // namespace

Rational parse_rational(std::string_view text)
{
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty number");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) {
      throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
    }
    q.canonicalize();
    return q;
  }

  bool negative = false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw Error(ErrorCode::ParseError, "bad number '" + s + "'");
    ++i;
    std::string exp_text = s.substr(i);
    if (exp_text.empty()) throw Error(ErrorCode::ParseError, "bad exponent in '" + s + "'");
    std::size_t used = 0;
    try {
      exponent = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad exponent in '" + s + "'");
    }
    if (used != exp_text.size()) throw Error(ErrorCode::ParseError, "bad exponent in '" + s + "'");
  }
  if (!any_digit) throw Error(ErrorCode::ParseError, "bad number '" + s + "'");

  mpz_class mant(digits, 10);
  long shift = exponent - frac_digits;
  Rational q;
  if (shift >= 0) {
    q = Rational(mant * pow10(static_cast<unsigned long>(shift)));
  } else {
    q = Rational(mant, pow10(static_cast<unsigned long>(-shift)));
  }
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

Rational rational_from_double(double x)
{
  if (!std::isfinite(x)) throw Error(ErrorCode::ParseError, "non-finite double");
  Rational q(x);
  q.canonicalize();
  return q;
}

Rational pow2(int e)
{
  mpz_class one = 1;
  if (e >= 0) {
    mpz_class r;
    mpz_mul_2exp(r.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    return Rational(r);
  }
  mpz_class d;
  mpz_mul_2exp(d.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  return Rational(mpz_class(1), d);
}

Rational floor_to_dyadic(const Rational& x, int bits)
{
  Rational scaled = x * pow2(bits);
  mpz_class f = floor_div(scaled.get_num(), scaled.get_den());
  Rational r = Rational(f) * pow2(-bits);
  r.canonicalize();
  return r;
}

Rational ceil_to_dyadic(const Rational& x, int bits)
{
  Rational scaled = x * pow2(bits);
  mpz_class c = ceil_div(scaled.get_num(), scaled.get_den());
  Rational r = Rational(c) * pow2(-bits);
  r.canonicalize();
  return r;
}

Rational round_to_dyadic(const Rational& x, int bits)
{
  Rational scaled = abs(x) * pow2(bits);
  mpz_class n = round_div_nonneg(scaled.get_num(), scaled.get_den());
  Rational r = Rational(n) * pow2(-bits);
  r.canonicalize();
  return sgn(x) < 0 ? Rational(-r) : r;
}

std::string exact_string(const Rational& x)
{
  mpz_class den = x.get_den();
  unsigned long twos = 0;
  unsigned long fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return x.get_str(10);
  const unsigned long decimals = std::max(twos, fives);
  if (decimals == 0) return x.get_num().get_str(10);
  std::string s = fixed_string(x, static_cast<int>(decimals));
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

std::string fixed_string(const Rational& x, int decimals)
{
  Rational scaled = abs(x) * Rational(pow10(static_cast<unsigned long>(decimals)));
  mpz_class n = round_div_nonneg(scaled.get_num(), scaled.get_den());
  std::string digits = n.get_str(10);
  if (decimals > 0) {
    if (digits.size() <= static_cast<std::size_t>(decimals)) {
      digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
  }
  if (sgn(x) < 0 && n != 0) digits.insert(0, "-");
  return digits;
}

std::string scientific_string_up(const Rational& x, int sig)
{
  if (sgn(x) == 0) {
    std::string s = "0.";
    s.append(static_cast<std::size_t>(sig - 1), '0');
    return s + "e+00";
  }
  const bool negative = sgn(x) < 0;
  Rational a = abs(x);
  // exponent e with 10^e <= a < 10^(e+1)
  const double approx = to_double(a);
  long e = approx > 0.0 && std::isfinite(approx)
               ? static_cast<long>(std::floor(std::log10(approx)))
               : static_cast<long>((static_cast<double>(mpz_sizeinbase(a.get_num_mpz_t(), 2)) -
                                    static_cast<double>(mpz_sizeinbase(a.get_den_mpz_t(), 2))) *
                                   0.30103);
  auto scale = [&](long k) {
    return k >= 0 ? Rational(pow10(static_cast<unsigned long>(k))) : Rational(1, pow10(static_cast<unsigned long>(-k)));
  };
  while (a >= scale(e + 1)) ++e;
  while (a < scale(e)) --e;
  Rational scaled = a / scale(e - (sig - 1));
  mpz_class n = negative ? floor_div(scaled.get_num(), scaled.get_den())
                         : ceil_div(scaled.get_num(), scaled.get_den());
  if (n == pow10(static_cast<unsigned long>(sig))) {
    n = pow10(static_cast<unsigned long>(sig - 1));
    ++e;
  }
  std::string digits = n.get_str(10);
  std::string mant = digits.substr(0, 1);
  if (sig > 1) mant += "." + digits.substr(1);
  char buf[32];
  std::snprintf(buf, sizeof buf, "e%c%02ld", e < 0 ? '-' : '+', e < 0 ? -e : e);
  return (negative ? "-" : "") + mant + buf;
}

double to_double(const Rational& x) { return x.get_d(); }

}  // namespace zpl
