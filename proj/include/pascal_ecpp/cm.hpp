#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pascal_ecpp/ecurve.hpp"
#include "pascal_ecpp/numtheory.hpp"

namespace pascal_ecpp {

// A fundamental discriminant d < 0 with the factorization of |d| and its
// Hilbert class polynomial (monic, exact integer coefficients, ascending).
struct DiscriminantRecord {
  Int d;
  std::vector<std::pair<Int, int>> abs_factors;
  int class_number = 0;
  std::vector<Int> class_poly;
};

// d fundamental in the sense used here: d <= -7, d = 0 or 1 (mod 4), and
// d/k^2 is not a fundamental discriminant for any k > 1. -3 and -4 are
// deliberately out so that curve construction never meets j = 0 or 1728.
bool is_fundamental(const Int& d);

// Immutable, |d|-ascending list of discriminant records.
class DiscriminantTable {
public:
  static DiscriminantTable load(const std::string& path);
  static DiscriminantTable from_records(std::vector<DiscriminantRecord> recs);
  void save(const std::string& path) const;

  size_t size() const { return records_.size(); }
  const DiscriminantRecord& at(size_t i) const { return records_.at(i); }
  Int max_abs_d() const;

  // Indices of records whose |d| has no prime factor above s_limit
  // (s_limit <= 0 disables the filter). This is the per-proof S filter.
  std::vector<size_t> admissible(long s_limit) const;

private:
  std::vector<DiscriminantRecord> records_;
};

// Per-consumer enumeration cursor over a filtered view of the table.
struct DiscriminantCursor {
  size_t pos = 0;
};

// Next discriminant (by increasing |d|) with (d|n) = 1 and |d| <= abs_limit.
// Advances the cursor past consumed and Jacobi-rejected entries; leaves it
// in place on a limit stop so a raised limit can resume. nullopt = exhausted
// at this limit (or out of table).
std::optional<size_t> next_d(const DiscriminantTable& table,
                             const std::vector<size_t>& view,
                             DiscriminantCursor& cursor, const Int& n,
                             const Int& abs_limit);

// One root of the record's class polynomial mod n, by gcd with x^n - x and
// equal-degree splitting; deterministic for a fixed rng seed (the smallest
// root found is returned). nullopt when the polynomial has no root mod n.
std::optional<Int> hilbert_root(const Int& n, const DiscriminantRecord& rec,
                                Rng& rng);

class degenerate_j : public std::runtime_error {
public:
  explicit degenerate_j(const Int& x0);
};

// CM curve and quadratic twist for Hilbert root x0 and Cornacchia trace u:
// y^2 = x^3 + 3kx + 2k and y^2 = x^3 + 3kc^2 x + 2kc^3 with (c|n) = -1,
// k = x0/(1728 - x0). One of the pair has order n+1-u, the other n+1+u.
struct CurvePair {
  Int k;
  Int c;
  CurveSpec curve;
  CurveSpec twist;
  Int order_minus;
  Int order_plus;
};

CurvePair curve_pair(const Int& n, const Int& x0, const Int& u, Rng& rng);

}  // namespace pascal_ecpp
