#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "carpet/rational.hpp"

namespace carpet {

// One map f(x,y) = ((x+u)/b, (y+v)/b) of the grid system: column u, row v.
struct DigitPair {
  int u = 0;
  int v = 0;

  friend auto operator<=>(const DigitPair&, const DigitPair&) = default;
};

std::string to_string(DigitPair pair);

// A b x b grid iterated function system given by a proper digit-pair subset J.
// Only constructed through validate_ifs, so every instance satisfies
// 2 <= |J| < b^2 with all digits in range and no duplicates.
class GridIFS {
 public:
  int base() const noexcept { return base_; }
  std::span<const DigitPair> digits() const noexcept { return digits_; }
  int size() const noexcept { return static_cast<int>(digits_.size()); }

  bool contains(DigitPair pair) const noexcept;
  bool contains(int u, int v) const noexcept { return contains(DigitPair{u, v}); }

  // |J2(a)|: number of maps in row a.
  int row_count(int a) const;
  // |J1(a)|: number of maps in column a.
  int column_count(int a) const;
  int max_row_count() const noexcept { return max_row_count_; }
  // Smallest row digit attaining max_row_count().
  int fullest_row() const noexcept { return fullest_row_; }

  friend bool operator==(const GridIFS&, const GridIFS&) = default;

 private:
  friend GridIFS validate_ifs(int base, std::span<const DigitPair> pairs);

  int base_ = 0;
  std::vector<DigitPair> digits_;
  std::vector<char> member_;
  std::vector<int> rows_;
  std::vector<int> columns_;
  int max_row_count_ = 0;
  int fullest_row_ = 0;
};

GridIFS validate_ifs(int base, std::span<const DigitPair> pairs);

// J2(a) and J1(a).
std::vector<DigitPair> row_set(const GridIFS& ifs, int a);
std::vector<DigitPair> column_set(const GridIFS& ifs, int a);

// log|J| / log b.
double attractor_dimension(const GridIFS& ifs);

// The cross fractal: b = 3, J = {(0,0),(2,0),(0,2),(1,1),(2,2)}.
GridIFS vicsek_ifs();
// b = 3, J = {(0,0),(2,0),(0,2)}: rows of sizes 2, 0, 1.
GridIFS corner_ifs();

// Closed b-adic square [kx, kx+1] x [ky, ky+1] scaled by b^-level.
struct DyadicBox {
  int base = 2;
  int level = 0;
  Integer kx = 0;
  Integer ky = 0;

  Rational side() const { return power_of(base, -level); }
  Rational corner_x() const { return Rational(kx) * side(); }
  Rational corner_y() const { return Rational(ky) * side(); }

  friend bool operator==(const DyadicBox& a, const DyadicBox& b) {
    return a.base == b.base && a.level == b.level && a.kx == b.kx && a.ky == b.ky;
  }
  friend bool operator<(const DyadicBox& a, const DyadicBox& b) {
    if (a.level != b.level) return a.level < b.level;
    if (a.kx != b.kx) return a.kx < b.kx;
    return a.ky < b.ky;
  }
};

// Square of all points whose coding starts with prefix. Throws
// InadmissiblePair when a pair is not in J.
DyadicBox project_prefix(const GridIFS& ifs, std::span<const DigitPair> prefix);

}  // namespace carpet
