#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pascal_ecpp/numtheory.hpp"

namespace pascal_ecpp {

// Digit base a0 a1 ... a_{m-1} of a generalized Pascal triangle. Row n holds
// the coefficients of (a0 x^{m-1} + a1 x^{m-2} + ... + a_{m-1})^n, so row
// sums are (a0+...+a_{m-1})^n and evaluating the row at powers of 10 gives
// the n-th power of the base read as a decimal number.
class TriangleBase {
public:
  explicit TriangleBase(const std::string& digit_string);
  explicit TriangleBase(std::vector<int> digits);
  int length() const { return static_cast<int>(digits_.size()); }
  const std::vector<int>& digits() const { return digits_; }
  int digit_sum() const;
  Int as_integer() const;

private:
  std::vector<int> digits_;
};

struct TriangleRow {
  long n = 0;
  std::vector<Int> coeffs;  // E_{0,n} ... E_{(m-1)n, n}
};

TriangleRow triangle_row0();
TriangleRow next_row(const TriangleBase& base, const TriangleRow& row);
std::vector<TriangleRow> triangle_rows(const TriangleBase& base, long max_row);

// Center element E_{n,n} of a 3-digit base, by binary powering of the row
// polynomial (full products, reading off the middle coefficient).
Int center(const TriangleBase& base, long n);

// Same value through the row recurrence; kept as an independent route.
Int center_by_recurrence(const TriangleBase& base, long n);

struct CenterPrime {
  long row;
  long digit_count;
  Int value;
};

// Rows 2..max_row whose center element is a probable prime (rows 0 and 1
// are trivial and excluded).
std::vector<CenterPrime> hunt_center_primes(const TriangleBase& base,
                                            long max_row, int prp_bases = 20);

// Smallest row n <= max_row where p divides an element at position k >= 2
// (positions 0 and 1 of every row are excluded). Works mod p throughout.
std::optional<long> first_factor_row(const TriangleBase& base, const Int& p,
                                     long max_row);

// bounded_factor of the center element.
FactoredInteger easy_factor_center(const TriangleBase& base, long n,
                                   std::uint32_t bound, int effort = 1);

struct DivisorStat {
  Int divisor;
  long hits;
  long rows;  // rows counted: n in [1, max_row]
};

// For each divisor d, how many centers E_{n,n}, 1 <= n <= max_row, are
// divisible by d. Computed mod d.
std::vector<DivisorStat> center_divisibility_stats(
    const TriangleBase& base, long max_row, const std::vector<Int>& divisors);

}  // namespace pascal_ecpp
