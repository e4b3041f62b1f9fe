#include "pascal_ecpp/triangle.hpp"

#include <algorithm>

namespace pascal_ecpp {

TriangleBase::TriangleBase(const std::string& digit_string) {
  for (char ch : digit_string) {
    if (ch < '0' || ch > '9')
      throw std::invalid_argument("TriangleBase: digits must be 0-9");
    digits_.push_back(ch - '0');
  }
  if (digits_.size() < 2)
    throw std::invalid_argument("TriangleBase: need at least two digits");
  if (digits_[0] == 0)
    throw std::invalid_argument("TriangleBase: leading digit must be nonzero");
}

TriangleBase::TriangleBase(std::vector<int> digits) : digits_(std::move(digits)) {
  if (digits_.size() < 2)
    throw std::invalid_argument("TriangleBase: need at least two digits");
  for (int d : digits_)
    if (d < 0 || d > 9)
      throw std::invalid_argument("TriangleBase: digits must be 0-9");
  if (digits_[0] == 0)
    throw std::invalid_argument("TriangleBase: leading digit must be nonzero");
}

int TriangleBase::digit_sum() const {
  int s = 0;
  for (int d : digits_) s += d;
  return s;
}

Int TriangleBase::as_integer() const {
  Int v = 0;
  for (int d : digits_) v = v * 10 + d;
  return v;
}

TriangleRow triangle_row0() { return TriangleRow{0, {Int(1)}}; }

TriangleRow next_row(const TriangleBase& base, const TriangleRow& row) {
  const int m = base.length();
  const auto& a = base.digits();
  TriangleRow out;
  out.n = row.n + 1;
  out.coeffs.assign(static_cast<size_t>(m - 1) * out.n + 1, Int(0));
  // E_{k,n+1} = sum_j a_j * E_{k-j, n}, out-of-range terms are zero.
  for (size_t k = 0; k < out.coeffs.size(); ++k) {
    Int acc = 0;
    for (int j = 0; j < m; ++j) {
      long src = static_cast<long>(k) - j;
      if (src < 0 || src >= static_cast<long>(row.coeffs.size())) continue;
      if (a[j] == 0) continue;
      acc += a[j] * row.coeffs[src];
    }
    out.coeffs[k] = std::move(acc);
  }
  return out;
}

std::vector<TriangleRow> triangle_rows(const TriangleBase& base, long max_row) {
  std::vector<TriangleRow> rows;
  rows.reserve(max_row + 1);
  rows.push_back(triangle_row0());
  for (long n = 1; n <= max_row; ++n) rows.push_back(next_row(base, rows.back()));
  return rows;
}

namespace {

// Coefficients ascending; plain schoolbook product.
std::vector<Int> poly_mul(const std::vector<Int>& x, const std::vector<Int>& y) {
  std::vector<Int> out(x.size() + y.size() - 1, Int(0));
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < y.size(); ++j)
      mpz_addmul(out[i + j].get_mpz_t(), x[i].get_mpz_t(), y[j].get_mpz_t());
  }
  return out;
}

std::vector<Int> poly_pow(std::vector<Int> base, long e) {
  std::vector<Int> result{Int(1)};
  while (e > 0) {
    if (e & 1) result = poly_mul(result, base);
    e >>= 1;
    if (e) base = poly_mul(base, base);
  }
  return result;
}

void require_center_base(const TriangleBase& base) {
  if (base.length() != 3)
    throw std::invalid_argument("center element needs a 3-digit base");
}

}  // namespace

Int center(const TriangleBase& base, long n) {
  require_center_base(base);
  if (n < 0) throw std::invalid_argument("center: row must be >= 0");
  if (n == 0) return 1;
  const auto& a = base.digits();
  std::vector<Int> poly{Int(a[2]), Int(a[1]), Int(a[0])};
  std::vector<Int> power = poly_pow(std::move(poly), n);
  return power[static_cast<size_t>(n)];
}

Int center_by_recurrence(const TriangleBase& base, long n) {
  require_center_base(base);
  if (n < 0) throw std::invalid_argument("center: row must be >= 0");
  TriangleRow row = triangle_row0();
  for (long i = 0; i < n; ++i) row = next_row(base, row);
  return row.coeffs[static_cast<size_t>(n)];
}

std::vector<CenterPrime> hunt_center_primes(const TriangleBase& base,
                                            long max_row, int prp_bases) {
  require_center_base(base);
  std::vector<CenterPrime> hits;
  Rng rng(0x4e7u);
  TriangleRow row = triangle_row0();
  for (long n = 1; n <= max_row; ++n) {
    row = next_row(base, row);
    if (n < 2) continue;
    const Int& c = row.coeffs[static_cast<size_t>(n)];
    if (is_probable_prime(c, prp_bases, rng))
      hits.push_back({n, decimal_digits(c), c});
  }
  return hits;
}

namespace {

// Row of residues mod p, advanced by the same recurrence. p must fit well
// under 2^59 so a 3-term digit-weighted sum cannot overflow.
std::vector<std::uint64_t> next_row_mod(const TriangleBase& base,
                                        const std::vector<std::uint64_t>& row,
                                        long n_next, std::uint64_t p) {
  const int m = base.length();
  const auto& a = base.digits();
  std::vector<std::uint64_t> out(static_cast<size_t>(m - 1) * n_next + 1, 0);
  for (size_t k = 0; k < out.size(); ++k) {
    std::uint64_t acc = 0;
    for (int j = 0; j < m; ++j) {
      long src = static_cast<long>(k) - j;
      if (src < 0 || src >= static_cast<long>(row.size())) continue;
      acc += static_cast<std::uint64_t>(a[j]) * row[src];
    }
    out[k] = acc % p;
  }
  return out;
}

std::uint64_t to_u64_modulus(const Int& p) {
  if (p < 2 || !p.fits_ulong_p() || p >= (Int(1) << 59))
    throw std::invalid_argument("modulus must be in [2, 2^59)");
  return mpz_get_ui(p.get_mpz_t());
}

}  // namespace

std::optional<long> first_factor_row(const TriangleBase& base, const Int& p,
                                     long max_row) {
  const std::uint64_t pu = to_u64_modulus(p);
  std::vector<std::uint64_t> row{1 % pu};
  for (long n = 1; n <= max_row; ++n) {
    row = next_row_mod(base, row, n, pu);
    for (size_t k = 2; k < row.size(); ++k)
      if (row[k] == 0) return n;
  }
  return std::nullopt;
}

FactoredInteger easy_factor_center(const TriangleBase& base, long n,
                                   std::uint32_t bound, int effort) {
  return bounded_factor(center(base, n), bound, effort);
}

std::vector<DivisorStat> center_divisibility_stats(
    const TriangleBase& base, long max_row, const std::vector<Int>& divisors) {
  require_center_base(base);
  std::vector<DivisorStat> stats;
  for (const Int& d : divisors) {
    const std::uint64_t du = to_u64_modulus(d);
    long hits = 0;
    std::vector<std::uint64_t> row{1 % du};
    for (long n = 1; n <= max_row; ++n) {
      row = next_row_mod(base, row, n, du);
      if (row[static_cast<size_t>(n)] == 0) ++hits;
    }
    stats.push_back({d, hits, max_row});
  }
  return stats;
}

}  // namespace pascal_ecpp
