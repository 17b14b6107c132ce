#include "carpet/rational.hpp"

#include <cmath>
#include <numbers>

#include "carpet/error.hpp"

namespace carpet {

Integer power(long base, unsigned long exponent) {
  Integer result;
  Integer b = base;
  mpz_pow_ui(result.get_mpz_t(), b.get_mpz_t(), exponent);
  return result;
}

Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational power_of(long base, long exponent) {
  if (exponent >= 0) {
    return Rational(power(base, static_cast<unsigned long>(exponent)));
  }
  Rational r(Integer(1), power(base, static_cast<unsigned long>(-exponent)));
  r.canonicalize();
  return r;
}

double log_of(const Integer& value) {
  if (value <= 0) {
    throw std::domain_error("log_of: non-positive argument");
  }
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2;
}

double log_of(const Rational& value) {
  return log_of(Integer(value.get_num())) - log_of(Integer(value.get_den()));
}

Integer floor_of(const Rational& value) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Integer ceil_of(const Rational& value) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) {
    throw Error(ErrorCode::ConfigError, "empty rational literal");
  }
  try {
    const auto dot = s.find('.');
    if (dot != std::string::npos && s.find('/') == std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      const auto scale = s.size() - dot - 1;
      Rational r(Integer(digits, 10), power(10, scale));
      r.canonicalize();
      return r;
    }
    Rational r(s, 10);
    if (r.get_den() == 0) {
      throw Error(ErrorCode::ConfigError, "zero denominator in '" + s + "'");
    }
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::ConfigError, "not a rational: '" + s + "'");
  }
}

std::string to_string(const Rational& value) { return value.get_str(); }

}  // namespace carpet
