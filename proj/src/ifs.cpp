#include "carpet/ifs.hpp"

#include <algorithm>
#include <cmath>

#include "carpet/error.hpp"

namespace carpet {

std::string to_string(DigitPair pair) {
  return "(" + std::to_string(pair.u) + "," + std::to_string(pair.v) + ")";
}

bool GridIFS::contains(DigitPair pair) const noexcept {
  if (pair.u < 0 || pair.v < 0 || pair.u >= base_ || pair.v >= base_) return false;
  return member_[static_cast<size_t>(pair.v * base_ + pair.u)] != 0;
}

int GridIFS::row_count(int a) const {
  if (a < 0 || a >= base_) {
    throw Error(ErrorCode::DigitOutOfRange, "row digit " + std::to_string(a));
  }
  return rows_[static_cast<size_t>(a)];
}

int GridIFS::column_count(int a) const {
  if (a < 0 || a >= base_) {
    throw Error(ErrorCode::DigitOutOfRange, "column digit " + std::to_string(a));
  }
  return columns_[static_cast<size_t>(a)];
}

GridIFS validate_ifs(int base, std::span<const DigitPair> pairs) {
  if (base < 2) {
    throw Error(ErrorCode::BaseTooSmall, "base must be at least 2, got " + std::to_string(base));
  }
  GridIFS ifs;
  ifs.base_ = base;
  ifs.member_.assign(static_cast<size_t>(base * base), 0);
  ifs.rows_.assign(static_cast<size_t>(base), 0);
  ifs.columns_.assign(static_cast<size_t>(base), 0);
  for (const DigitPair p : pairs) {
    if (p.u < 0 || p.v < 0 || p.u >= base || p.v >= base) {
      throw Error(ErrorCode::DigitOutOfRange, "pair " + to_string(p) + " outside the grid");
    }
    auto& slot = ifs.member_[static_cast<size_t>(p.v * base + p.u)];
    if (slot != 0) {
      throw Error(ErrorCode::DuplicatePair, "pair " + to_string(p) + " listed twice");
    }
    slot = 1;
    ifs.digits_.push_back(p);
    ++ifs.rows_[static_cast<size_t>(p.v)];
    ++ifs.columns_[static_cast<size_t>(p.u)];
  }
  if (ifs.digits_.size() == static_cast<size_t>(base * base)) {
    throw Error(ErrorCode::NotProperSubset, "J must be a proper subset of the grid");
  }
  if (ifs.digits_.size() < 2) {
    throw Error(ErrorCode::TooFewMaps, "J needs at least two maps");
  }
  std::sort(ifs.digits_.begin(), ifs.digits_.end());
  for (int a = 0; a < base; ++a) {
    if (ifs.rows_[static_cast<size_t>(a)] > ifs.max_row_count_) {
      ifs.max_row_count_ = ifs.rows_[static_cast<size_t>(a)];
      ifs.fullest_row_ = a;
    }
  }
  return ifs;
}

std::vector<DigitPair> row_set(const GridIFS& ifs, int a) {
  ifs.row_count(a);
  std::vector<DigitPair> out;
  for (const DigitPair p : ifs.digits()) {
    if (p.v == a) out.push_back(p);
  }
  return out;
}

std::vector<DigitPair> column_set(const GridIFS& ifs, int a) {
  ifs.column_count(a);
  std::vector<DigitPair> out;
  for (const DigitPair p : ifs.digits()) {
    if (p.u == a) out.push_back(p);
  }
  return out;
}

double attractor_dimension(const GridIFS& ifs) {
  return std::log(static_cast<double>(ifs.size())) / std::log(static_cast<double>(ifs.base()));
}

GridIFS vicsek_ifs() {
  const DigitPair pairs[] = {{0, 0}, {2, 0}, {0, 2}, {1, 1}, {2, 2}};
  return validate_ifs(3, pairs);
}

GridIFS corner_ifs() {
  const DigitPair pairs[] = {{0, 0}, {2, 0}, {0, 2}};
  return validate_ifs(3, pairs);
}

DyadicBox project_prefix(const GridIFS& ifs, std::span<const DigitPair> prefix) {
  DyadicBox box;
  box.base = ifs.base();
  box.level = static_cast<int>(prefix.size());
  for (const DigitPair p : prefix) {
    if (!ifs.contains(p)) {
      throw Error(ErrorCode::InadmissiblePair, "pair " + to_string(p) + " is not in J");
    }
    box.kx = box.kx * ifs.base() + p.u;
    box.ky = box.ky * ifs.base() + p.v;
  }
  return box;
}

}  // namespace carpet
