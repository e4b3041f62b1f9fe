#include "pascal_ecpp/numtheory.hpp"

#include <algorithm>
#include <cmath>

namespace pascal_ecpp {

composite_modulus::composite_modulus(Int m, Int w)
    : std::runtime_error("composite modulus " + m.get_str() +
                         " (witness " + w.get_str() + ")"),
      modulus(std::move(m)),
      witness(std::move(w)) {}

int jacobi(const Int& a, const Int& n) {
  if (n <= 0 || mpz_even_p(n.get_mpz_t()))
    throw std::invalid_argument("jacobi: n must be odd and positive");
  return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(static_cast<size_t>(limit) + 1, false);
  for (std::uint64_t p = 2; p * p <= limit; ++p)
    if (!composite[p])
      for (std::uint64_t q = p * p; q <= limit; q += p) composite[q] = true;
  for (std::uint32_t p = 2; p <= limit; ++p)
    if (!composite[p]) out.push_back(p);
  return out;
}

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> table = primes_up_to(1u << 16);
  return table;
}

bool trial_division_prime(const Int& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (mpz_even_p(n.get_mpz_t())) return false;
  if (mpz_divisible_ui_p(n.get_mpz_t(), 3)) return n == 3;
  Int root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  for (Int d = 5; d <= root; d += 6) {
    if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) return false;
    Int d2 = d + 2;
    if (mpz_divisible_p(n.get_mpz_t(), d2.get_mpz_t())) return false;
  }
  return true;
}

namespace {

// One Miller-Rabin round. n odd >= 5, base in [2, n-2].
// Returns true when the base does not witness compositeness.
bool miller_rabin_round(const Int& n, const Int& base, const Int& n_minus_1,
                        const Int& odd_part, unsigned long two_exp) {
  Int x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), odd_part.get_mpz_t(),
           n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long i = 1; i < two_exp; ++i) {
    x = (x * x) % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;  // nontrivial sqrt of 1
  }
  return false;
}

std::optional<Int> small_factor_by_trial_division(const Int& n) {
  for (std::uint32_t p : small_primes()) {
    if (Int(p) * p > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return Int(p);
  }
  return std::nullopt;
}

}  // namespace

std::optional<Int> prp_witness(const Int& n, int bases, Rng& rng) {
  if (n < 2) return Int(0);  // trivially not prime
  if (n < (1 << 16)) return small_factor_by_trial_division(n);
  if (mpz_even_p(n.get_mpz_t())) return Int(2);
  const Int n_minus_1 = n - 1;
  Int odd_part = n_minus_1;
  unsigned long two_exp = mpz_scan1(n_minus_1.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(odd_part.get_mpz_t(), n_minus_1.get_mpz_t(), two_exp);
  for (int i = 0; i < bases; ++i) {
    Int a = rng.in_range(2, n - 2);
    if (!miller_rabin_round(n, a, n_minus_1, odd_part, two_exp)) return a;
  }
  return std::nullopt;
}

bool is_probable_prime(const Int& n, int bases, Rng& rng) {
  return !prp_witness(n, bases, rng).has_value();
}

bool is_probable_prime(const Int& n, int bases) {
  // Fixed internal stream: the default-rng overload is deterministic.
  Rng rng(0x5eedu);
  return is_probable_prime(n, bases, rng);
}

std::optional<Int> sqrt_mod_prime(const Int& a, const Int& p) {
  if (p < 3 || mpz_even_p(p.get_mpz_t()))
    throw std::invalid_argument("sqrt_mod_prime: p must be odd and >= 3");
  Int r = a % p;
  if (r < 0) r += p;
  if (r == 0) return Int(0);

  Int g;
  mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
  if (g != 1) throw composite_modulus(p, g);
  if (mpz_jacobi(r.get_mpz_t(), p.get_mpz_t()) == -1) return std::nullopt;

  Int root;
  if (p % 4 == 3) {
    Int e = (p + 1) / 4;
    mpz_powm(root.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  } else {
    // Tonelli-Shanks. p-1 = q * 2^s with q odd.
    Int q = p - 1;
    unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), s);

    Int z = 2;
    int scanned = 0;
    while (mpz_jacobi(z.get_mpz_t(), p.get_mpz_t()) != -1) {
      ++z;
      if (++scanned > 10000) throw composite_modulus(p, z);
    }

    Int c, t, m(s);
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    Int e = (q + 1) / 2;
    mpz_powm(root.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    while (t != 1) {
      Int t2 = t;
      unsigned long i = 0;
      while (t2 != 1) {
        t2 = (t2 * t2) % p;
        if (++i >= mpz_get_ui(m.get_mpz_t())) throw composite_modulus(p, t);
      }
      Int b = c;
      for (unsigned long j = 0; j + i + 1 < mpz_get_ui(m.get_mpz_t()); ++j)
        b = (b * b) % p;
      m = Int(i);
      c = (b * b) % p;
      t = (t * c) % p;
      root = (root * b) % p;
    }
  }

  if ((root * root) % p != r) throw composite_modulus(p, root);
  Int other = p - root;
  return root <= other ? root : other;
}

namespace {

// Resolve one cache key (a positive or negative radicand) to a root mod n.
Int cached_root(const Int& key, const Int& n, SqrtCache& cache) {
  auto it = cache.roots.find(key);
  if (it != cache.roots.end()) return it->second;
  Int reduced = key % n;
  if (reduced < 0) reduced += n;
  ++cache.tonelli_calls;
  auto r = sqrt_mod_prime(reduced, n);
  if (!r)
    throw std::invalid_argument(
        "sqrt_of_discriminant: non-residue component; (d|n) != 1?");
  cache.roots.emplace(key, *r);
  return *r;
}

}  // namespace

Int sqrt_of_discriminant(const Int& d,
                         const std::vector<std::pair<Int, int>>& abs_factors,
                         const Int& n, SqrtCache& cache) {
  if (d >= 0) throw std::invalid_argument("sqrt_of_discriminant: d must be < 0");
  if (cache.modulus == 0) cache.modulus = n;
  if (cache.modulus != n)
    throw std::invalid_argument("sqrt_of_discriminant: cache bound to another modulus");

  Int check = 1;
  Int result = 1;
  std::vector<Int> odd_residue, odd_nonresidue;
  for (const auto& [q, e] : abs_factors) {
    for (int i = 0; i < e; ++i) check *= q;
    // Even part of the exponent needs no square root at all.
    for (int i = 0; i < e / 2; ++i) result = (result * q) % n;
    if (e % 2 == 0) continue;
    if (q % n == 0)  // q prime, so this forces q == n: then (d|n) = 0
      throw std::invalid_argument("sqrt_of_discriminant: n divides d");
    int chi = jacobi(q, n);
    if (chi == 0) {
      Int g;
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      throw composite_modulus(n, g);
    }
    (chi == 1 ? odd_residue : odd_nonresidue).push_back(q);
  }
  if (check != -d)
    throw std::invalid_argument("sqrt_of_discriminant: factors do not match |d|");

  for (const Int& q : odd_residue) result = (result * cached_root(q, n, cache)) % n;
  // Non-residue factors pair up so each product is a residue; the leftover
  // pairs with -1 (whose character must then be -1 for (d|n)=1 to hold).
  size_t i = 0;
  for (; i + 1 < odd_nonresidue.size(); i += 2) {
    Int key = odd_nonresidue[i] * odd_nonresidue[i + 1];
    result = (result * cached_root(key, n, cache)) % n;
  }
  if (i < odd_nonresidue.size()) {
    Int key = -odd_nonresidue[i];
    result = (result * cached_root(key, n, cache)) % n;
  } else {
    result = (result * cached_root(Int(-1), n, cache)) % n;
  }
  return result;
}

std::optional<std::pair<Int, Int>> cornacchia(const Int& d, const Int& n,
                                              const Int& sqrt_d) {
  if (d >= 0) throw std::invalid_argument("cornacchia: d must be < 0");
  const Int abs_d = -d;
  if (n == 2) {
    Int t = d + 8;
    if (t < 1 || !mpz_perfect_square_p(t.get_mpz_t())) return std::nullopt;
    Int u;
    mpz_sqrt(u.get_mpz_t(), t.get_mpz_t());
    if (u < 1) return std::nullopt;
    return std::make_pair(u, Int(1));
  }
  if (n < 2 || mpz_even_p(n.get_mpz_t())) return std::nullopt;
  if (abs_d >= 4 * n) return std::nullopt;

  Int x0 = sqrt_d % n;
  if (x0 < 0) x0 += n;
  if ((x0 * x0 - d) % n != 0)
    throw std::invalid_argument("cornacchia: sqrt_d^2 != d (mod n)");
  // Lift to x0^2 = d (mod 4n): x0 must match d's parity.
  if (mpz_odd_p(x0.get_mpz_t()) != mpz_odd_p(d.get_mpz_t())) x0 = n - x0;

  Int a = 2 * n, b = x0, c;
  Int four_n = 4 * n;
  mpz_sqrt(c.get_mpz_t(), four_n.get_mpz_t());
  while (b > c) {
    Int r = a % b;
    a = b;
    b = r;
  }
  Int t = 4 * n - b * b;
  if (t % abs_d != 0) return std::nullopt;
  Int w = t / abs_d;
  if (!mpz_perfect_square_p(w.get_mpz_t())) return std::nullopt;
  Int v;
  mpz_sqrt(v.get_mpz_t(), w.get_mpz_t());
  if (b < 1 || v < 1) return std::nullopt;
  return std::make_pair(b, v);
}

std::optional<std::pair<Int, Int>> cornacchia(const Int& d, const Int& n) {
  if (d >= 0) throw std::invalid_argument("cornacchia: d must be < 0");
  if (n == 2) return cornacchia(d, n, Int(0));
  if (n < 2 || mpz_even_p(n.get_mpz_t())) return std::nullopt;
  Int r = d % n;
  if (r < 0) r += n;
  if (r == 0) return std::nullopt;
  auto root = sqrt_mod_prime(r, n);
  if (!root) return std::nullopt;
  return cornacchia(d, n, *root);
}

Int FactoredInteger::reassemble() const {
  Int prod = cofactor;
  for (const auto& [p, e] : factors)
    for (int i = 0; i < e; ++i) prod *= p;
  return prod;
}

bool FactoredInteger::operator==(const FactoredInteger& other) const {
  return value == other.value && factors == other.factors &&
         cofactor == other.cofactor && cofactor_is_prp == other.cofactor_is_prp;
}

namespace {

// Brent's cycle-finding rho with batched gcds. Deterministic: the polynomial
// constant starts at 1 and increments on each failed cycle. Returns a
// nontrivial factor of n or nullopt once the iteration budget is spent.
std::optional<Int> brent_rho(const Int& n, long& budget) {
  for (unsigned long c = 1; budget > 0; ++c) {
    Int y = 2, q = 1, g = 1, x, ys;
    long r = 1;
    const long batch = 128;
    while (g == 1 && budget > 0) {
      x = y;
      for (long i = 0; i < r; ++i) y = (y * y + c) % n;
      long k = 0;
      while (k < r && g == 1 && budget > 0) {
        ys = y;
        long steps = std::min(batch, r - k);
        for (long i = 0; i < steps && budget > 0; ++i) {
          y = (y * y + c) % n;
          Int diff = x - y;
          if (diff < 0) diff = -diff;
          if (diff == 0) continue;
          q = (q * diff) % n;
          --budget;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += steps;
      }
      r *= 2;
    }
    if (g == n) {
      // Backtrack one step at a time from the last saved point.
      do {
        ys = (ys * ys + c) % n;
        Int diff = x - ys;
        if (diff < 0) diff = -diff;
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
  }
  return std::nullopt;
}

// Replace a perfect power by its base, repeated. Returns multiplicity.
int strip_perfect_power(Int& m) {
  int mult = 1;
  while (mpz_perfect_power_p(m.get_mpz_t())) {
    bool reduced = false;
    for (unsigned long k = 2; k <= mpz_sizeinbase(m.get_mpz_t(), 2); ++k) {
      Int root;
      if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k) != 0) {
        m = root;
        mult *= static_cast<int>(k);
        reduced = true;
        break;
      }
    }
    if (!reduced) break;
  }
  return mult;
}

}  // namespace

FactoredInteger bounded_factor(const Int& m, std::uint32_t smooth_bound,
                               int effort) {
  if (m < 1) throw std::invalid_argument("bounded_factor: m must be >= 1");
  FactoredInteger out;
  out.value = m;
  if (m == 1) return out;

  Int work = m;
  std::map<Int, int> found;

  const std::vector<std::uint32_t>& base = small_primes();
  std::vector<std::uint32_t> extended;
  const std::vector<std::uint32_t>* primes = &base;
  if (smooth_bound > (1u << 16)) {
    extended = primes_up_to(smooth_bound);
    primes = &extended;
  }
  for (std::uint32_t p : *primes) {
    if (p > smooth_bound) break;
    if (Int(p) * p > work) break;
    while (mpz_divisible_ui_p(work.get_mpz_t(), p)) {
      work /= p;
      ++found[Int(p)];
    }
    if (work == 1) break;
  }
  // The p^2 > work early exit can leave one prime <= smooth_bound behind.
  if (work > 1 && work <= smooth_bound) {
    ++found[work];
    work = 1;
  }

  long budget = 0;
  if (effort == 1) budget = 100000;
  if (effort >= 2) budget = 10000000;

  Rng prp_rng(0xfac7u);
  std::vector<Int> pending, prp_pieces, residual;
  if (work > 1) pending.push_back(work);
  while (!pending.empty()) {
    Int piece = pending.back();
    pending.pop_back();
    if (is_probable_prime(piece, 20, prp_rng)) {
      prp_pieces.push_back(piece);
      continue;
    }
    int mult = strip_perfect_power(piece);
    if (mult > 1) {
      for (int i = 0; i < mult; ++i) pending.push_back(piece);
      continue;
    }
    auto g = budget > 0 ? brent_rho(piece, budget) : std::nullopt;
    if (g) {
      pending.push_back(*g);
      pending.push_back(piece / *g);
    } else {
      residual.push_back(piece);
    }
  }

  std::sort(prp_pieces.begin(), prp_pieces.end());
  if (residual.empty() && !prp_pieces.empty()) {
    // Largest probable-prime piece stays as the flagged cofactor.
    out.cofactor = prp_pieces.back();
    out.cofactor_is_prp = true;
    prp_pieces.pop_back();
  } else {
    out.cofactor = 1;
    for (const Int& r : residual) out.cofactor *= r;
    out.cofactor_is_prp = false;
  }
  for (const Int& p : prp_pieces) ++found[p];
  for (auto& [p, e] : found) out.factors.emplace_back(p, e);
  return out;
}

Int fourth_root_bound(const Int& m) {
  if (m < 0) throw std::invalid_argument("fourth_root_bound: m must be >= 0");
  Int r, q;
  mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
  mpz_sqrt(q.get_mpz_t(), r.get_mpz_t());
  if (q * q * q * q < m) ++q;  // ceil of the fourth root
  return (q + 1) * (q + 1);
}

long decimal_digits(const Int& n) {
  Int a = n >= 0 ? n : Int(-n);
  long est = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 10));
  if (est <= 1) return 1;
  // sizeinbase may report one high; check against 10^(est-1).
  Int low;
  mpz_ui_pow_ui(low.get_mpz_t(), 10, static_cast<unsigned long>(est - 1));
  return a < low ? est - 1 : est;
}

}  // namespace pascal_ecpp
