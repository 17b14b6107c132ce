#pragma once

#include <map>
#include <vector>

#include "carpet/ifs.hpp"

namespace carpet {

// sum_p e_p log p over primes p with integer exponents: the logarithm of a
// positive rational, kept symbolic so that signs and ties are decided
// exactly. Doubles are used only when the sign is far from zero.
class LogMonomial {
 public:
  LogMonomial() = default;
  // multiplicity * log(value), value >= 1.
  static LogMonomial log_of(long value, long multiplicity = 1);

  LogMonomial& operator+=(const LogMonomial& other);
  LogMonomial& operator-=(const LogMonomial& other);
  LogMonomial& operator*=(long factor);
  friend LogMonomial operator+(LogMonomial a, const LogMonomial& b) { return a += b; }
  friend LogMonomial operator-(LogMonomial a, const LogMonomial& b) { return a -= b; }
  friend LogMonomial operator*(LogMonomial a, long k) { return a *= k; }

  double value() const;
  bool is_zero() const noexcept { return exponents_.empty(); }
  // -1, 0 or 1; exact.
  int sign() const;
  const std::map<long, long>& exponents() const noexcept { return exponents_; }

  friend bool operator==(const LogMonomial&, const LogMonomial&) = default;

 private:
  void add(long prime, long exponent);
  std::map<long, long> exponents_;
};

// -1, 0, 1 as a < b, a == b, a > b.
int compare(const LogMonomial& a, const LogMonomial& b);

// Compares a_num / a_den with b_num / b_den for positive denominators.
int compare_ratio(const LogMonomial& a_num, long a_den, const LogMonomial& b_num, long b_den);

// Occurrence counts of each row digit in a stretch of a word.
using RowCounts = std::vector<long>;

// sum_a counts[a] log |J2(a)|. Counts on empty rows are rejected.
LogMonomial row_weight(const GridIFS& ifs, const RowCounts& counts);

}  // namespace carpet
