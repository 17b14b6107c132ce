#include "carpet/log_monomial.hpp"

#include <cmath>
#include <stdexcept>

#include "carpet/error.hpp"
#include "carpet/rational.hpp"

namespace carpet {

namespace {

// Doubles decide the sign when the value clears this relative margin.
constexpr double kExactFallback = 1e-9;

}  // namespace

LogMonomial LogMonomial::log_of(long value, long multiplicity) {
  if (value < 1) throw std::invalid_argument("log of a non-positive integer");
  LogMonomial m;
  if (multiplicity == 0) return m;
  for (long p = 2; p * p <= value; ++p) {
    long e = 0;
    while (value % p == 0) {
      value /= p;
      ++e;
    }
    if (e) m.add(p, e * multiplicity);
  }
  if (value > 1) m.add(value, multiplicity);
  return m;
}

void LogMonomial::add(long prime, long exponent) {
  if (exponent == 0) return;
  auto [it, inserted] = exponents_.try_emplace(prime, exponent);
  if (!inserted) {
    it->second += exponent;
    if (it->second == 0) exponents_.erase(it);
  }
}

LogMonomial& LogMonomial::operator+=(const LogMonomial& other) {
  for (const auto& [p, e] : other.exponents_) add(p, e);
  return *this;
}

LogMonomial& LogMonomial::operator-=(const LogMonomial& other) {
  for (const auto& [p, e] : other.exponents_) add(p, -e);
  return *this;
}

LogMonomial& LogMonomial::operator*=(long factor) {
  if (factor == 0) {
    exponents_.clear();
    return *this;
  }
  for (auto& [p, e] : exponents_) e *= factor;
  return *this;
}

double LogMonomial::value() const {
  double sum = 0.0;
  for (const auto& [p, e] : exponents_) sum += static_cast<double>(e) * std::log(static_cast<double>(p));
  return sum;
}

int LogMonomial::sign() const {
  if (exponents_.empty()) return 0;
  double sum = 0.0;
  double scale = 0.0;
  for (const auto& [p, e] : exponents_) {
    const double term = static_cast<double>(e) * std::log(static_cast<double>(p));
    sum += term;
    scale += std::fabs(term);
  }
  if (std::fabs(sum) > kExactFallback * scale) return sum > 0 ? 1 : -1;
  // Nonzero exponent vector, so the product is not 1; compare the two sides.
  Integer up = 1, down = 1;
  for (const auto& [p, e] : exponents_) {
    if (e > 0) {
      up *= power(p, static_cast<unsigned long>(e));
    } else {
      down *= power(p, static_cast<unsigned long>(-e));
    }
  }
  return up > down ? 1 : -1;
}

int compare(const LogMonomial& a, const LogMonomial& b) { return (a - b).sign(); }

int compare_ratio(const LogMonomial& a_num, long a_den, const LogMonomial& b_num, long b_den) {
  return (a_num * b_den - b_num * a_den).sign();
}

LogMonomial row_weight(const GridIFS& ifs, const RowCounts& counts) {
  LogMonomial total;
  for (std::size_t a = 0; a < counts.size(); ++a) {
    if (counts[a] == 0) continue;
    const int size = ifs.row_count(static_cast<int>(a));
    if (size == 0) {
      throw Error(ErrorCode::EmptyMn, "row " + std::to_string(a) + " is empty but was counted");
    }
    total += LogMonomial::log_of(size, counts[a]);
  }
  return total;
}

}  // namespace carpet
