#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "pascal_ecpp/numtheory.hpp"

using namespace pascal_ecpp;

namespace {

// Independent oracle: solutions of u^2 + |d| v^2 = 4n by plain enumeration.
std::optional<std::pair<Int, Int>> cornacchia_brute(long d, long n) {
  for (long v = 1; static_cast<long double>(-d) * v * v <= 4.0L * n; ++v) {
    long rest = 4 * n + d * v * v;  // d < 0
    if (rest < 1) break;
    long u = static_cast<long>(std::sqrt(static_cast<double>(rest)));
    while (u * u > rest) --u;
    while ((u + 1) * (u + 1) <= rest) ++u;
    if (u >= 1 && u * u == rest) return std::make_pair(Int(u), Int(v));
  }
  return std::nullopt;
}

bool naive_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("jacobi basic values") {
  CHECK(jacobi(1, 9) == 1);
  CHECK(jacobi(2, 15) == 1);
  CHECK(jacobi(-7, 11) == 1);
  CHECK(jacobi(0, 9) == 0);
  CHECK_THROWS_AS(jacobi(3, 10), std::invalid_argument);
  CHECK_THROWS_AS(jacobi(3, -5), std::invalid_argument);
}

TEST_CASE("jacobi matches the Euler criterion on odd primes") {
  Rng rng(1);
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 101u, 997u, 65537u}) {
    for (int i = 0; i < 50; ++i) {
      Int a = rng.below(Int(p));
      Int e = Int(p - 1) / 2;
      Int chi;
      mpz_powm(chi.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(),
               Int(p).get_mpz_t());
      int expected = chi == 0 ? 0 : (chi == 1 ? 1 : -1);
      CHECK(jacobi(a, p) == expected);
    }
  }
}

TEST_CASE("jacobi is multiplicative in both arguments") {
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    Int n = 2 * rng.below(500000) + 3;
    Int a = rng.below(1000000) - 500000;
    Int b = rng.below(1000000) - 500000;
    CHECK(jacobi(a * b, n) == jacobi(a, n) * jacobi(b, n));
  }
  for (int i = 0; i < 100; ++i) {
    Int n1 = 2 * rng.below(1000) + 3;
    Int n2 = 2 * rng.below(1000) + 3;
    Int a = rng.below(10000);
    CHECK(jacobi(a, n1 * n2) == jacobi(a, n1) * jacobi(a, n2));
  }
}

TEST_CASE("probable prime anchors") {
  CHECK(is_probable_prime(2));
  CHECK(is_probable_prime(3));
  CHECK_FALSE(is_probable_prime(1));
  CHECK_FALSE(is_probable_prime(561));   // Carmichael
  CHECK(is_probable_prime(Int("9232029156001")));
  CHECK(is_probable_prime(65537));
  CHECK_FALSE(is_probable_prime(Int("9232029156003")));
}

TEST_CASE("probable prime agrees with trial division below 10^6") {
  Rng rng(3);
  long mismatches = 0;
  for (std::uint64_t n = 3; n < 1000000; n += 2)
    if (is_probable_prime(Int(n), 20, rng) != naive_prime(n)) ++mismatches;
  CHECK(mismatches == 0);
}

TEST_CASE("prp_witness reports usable witnesses") {
  Rng rng(4);
  auto w561 = prp_witness(561, 20, rng);
  REQUIRE(w561.has_value());
  CHECK(561 % *w561 == 0);  // small range resolves by trial division
  CHECK_FALSE(prp_witness(Int("9232029156001"), 20, rng).has_value());
}

TEST_CASE("sqrt_mod_prime examples and determinism") {
  CHECK(sqrt_mod_prime(2, 7) == Int(3));
  CHECK(sqrt_mod_prime(10, 13) == Int(6));
  CHECK_FALSE(sqrt_mod_prime(3, 7).has_value());
  CHECK(sqrt_mod_prime(0, 13) == Int(0));
  CHECK_THROWS_AS(sqrt_mod_prime(3, 10), std::invalid_argument);
}

TEST_CASE("sqrt_mod_prime squares back on random residues") {
  Rng rng(5);
  for (std::uint32_t p : {11u, 13u, 10007u, 65537u, 999983u}) {
    for (int i = 0; i < 40; ++i) {
      Int a = rng.below(Int(p));
      auto r = sqrt_mod_prime(a, p);
      if (!r) {
        CHECK(jacobi(a, p) == -1);
        continue;
      }
      CHECK((*r * *r) % p == a % p);
      CHECK(*r <= Int(p) - *r);  // canonical smaller root
    }
  }
}

TEST_CASE("sqrt_mod_prime exposes a composite modulus") {
  // jacobi(2|15) = 1 but 2 is not a square mod 15.
  CHECK_THROWS_AS(sqrt_mod_prime(2, 15), composite_modulus);
}

TEST_CASE("sqrt_of_discriminant assembles roots from the cache") {
  SqrtCache cache;
  std::vector<std::pair<Int, int>> f7 = {{7, 1}};
  Int r = sqrt_of_discriminant(-7, f7, 11, cache);
  CHECK((r * r) % 11 == Int(-7) % 11 + 11);
  long calls = cache.tonelli_calls;
  CHECK(calls > 0);
  Int r2 = sqrt_of_discriminant(-7, f7, 11, cache);
  CHECK(r2 == r);
  CHECK(cache.tonelli_calls == calls);  // pure cache hit

  SqrtCache cache17;
  std::vector<std::pair<Int, int>> f8 = {{2, 3}};
  Int r8 = sqrt_of_discriminant(-8, f8, 17, cache17);
  CHECK((r8 * r8 - Int(-8)) % 17 == 0);
}

TEST_CASE("sqrt_of_discriminant pairs non-residue factors") {
  // (3|17) = (5|17) = -1, so -15 = -1 * (3*5) needs the paired root.
  SqrtCache cache;
  std::vector<std::pair<Int, int>> f15 = {{3, 1}, {5, 1}};
  Int r = sqrt_of_discriminant(-15, f15, 17, cache);
  CHECK((r * r - Int(-15)) % 17 == 0);
  CHECK(cache.roots.count(Int(15)) == 1);
  CHECK(cache.roots.count(Int(-1)) == 1);

  // (7|23) = -1 and 23 = 3 mod 4: the lone non-residue pairs with -1.
  SqrtCache cache23;
  std::vector<std::pair<Int, int>> f7 = {{7, 1}};
  Int r7 = sqrt_of_discriminant(-7, f7, 23, cache23);
  CHECK((r7 * r7 - Int(-7)) % 23 == 0);
  CHECK(cache23.roots.count(Int(-7)) == 1);
}

TEST_CASE("cornacchia anchors") {
  auto r2 = cornacchia(-7, 2);
  REQUIRE(r2.has_value());
  CHECK(r2->first == 1);
  CHECK(r2->second == 1);

  auto r11 = cornacchia(-7, 11);
  REQUIRE(r11.has_value());
  CHECK(r11->first == 4);
  CHECK(r11->second == 2);

  auto r29 = cornacchia(-7, 29);
  REQUIRE(r29.has_value());
  CHECK(r29->first == 2);
  CHECK(r29->second == 4);
}

TEST_CASE("cornacchia agrees with exhaustive search on small primes") {
  const long ds[] = {-7, -8, -11, -15, -19, -20, -23, -24, -43, -163};
  for (long n = 3; n < 2000; n += 2) {
    if (!naive_prime(n)) continue;
    for (long d : ds) {
      if (-d >= 4 * n) continue;
      auto mine = cornacchia(Int(d), Int(n));
      auto ref = cornacchia_brute(d, n);
      CHECK(mine.has_value() == ref.has_value());
      if (mine) {
        CHECK(mine->first * mine->first + Int(-d) * mine->second * mine->second ==
              4 * Int(n));
      }
    }
  }
}

TEST_CASE("cornacchia equation holds for larger random primes") {
  Rng rng(7);
  const long ds[] = {-7, -8, -11, -19, -43, -67, -163};
  int solved = 0;
  for (int i = 0; i < 60; ++i) {
    Int n = rng.below(Int("1000000000000")) + 1000000;
    while (!is_probable_prime(n, 20, rng)) ++n;
    for (long d : ds) {
      auto uv = cornacchia(Int(d), n);
      if (!uv) continue;
      ++solved;
      CHECK(uv->first * uv->first + Int(-d) * uv->second * uv->second == 4 * n);
    }
  }
  CHECK(solved > 20);  // representations are common across 7 class-1 fields
}

TEST_CASE("bounded_factor smooth case") {
  FactoredInteger f = bounded_factor(5040, 10, 0);
  REQUIRE(f.factors.size() == 4);
  CHECK(f.factors[0] == std::make_pair(Int(2), 4));
  CHECK(f.factors[1] == std::make_pair(Int(3), 2));
  CHECK(f.factors[2] == std::make_pair(Int(5), 1));
  CHECK(f.factors[3] == std::make_pair(Int(7), 1));
  CHECK(f.cofactor == 1);
  CHECK(f.fully_factored());
  CHECK(f.reassemble() == 5040);
}

TEST_CASE("bounded_factor unit and prp cofactor") {
  FactoredInteger unit = bounded_factor(1, 1000, 1);
  CHECK(unit.factors.empty());
  CHECK(unit.cofactor == 1);

  // 1047222 = 2 * 3^3 * 11 * 41 * 43; the 9-digit prime survives as the
  // flagged cofactor.
  Int m = Int("165490139") * Int("1047222");
  FactoredInteger f = bounded_factor(m, 1000000, 1);
  CHECK(f.cofactor == Int("165490139"));
  CHECK(f.cofactor_is_prp);
  Int small_part = 1;
  for (const auto& [p, e] : f.factors)
    for (int i = 0; i < e; ++i) small_part *= p;
  CHECK(small_part == 1047222);
  CHECK(f.reassemble() == m);
}

TEST_CASE("bounded_factor rho splits medium factors") {
  // 1485703 and 15485863 are primes above the bound.
  Int m = Int("1485703") * Int("15485863");
  FactoredInteger f = bounded_factor(m, 1000000, 1);
  CHECK(f.reassemble() == m);
  CHECK(f.fully_factored() == false);  // larger prime stays as prp cofactor
  REQUIRE(f.factors.size() == 1);
  CHECK(f.factors[0].first == Int("1485703"));
  CHECK(f.cofactor == Int("15485863"));
  CHECK(f.cofactor_is_prp);
}

TEST_CASE("bounded_factor effort 0 leaves the cofactor composite") {
  Int m = Int("1485703") * Int("15485863");
  FactoredInteger f = bounded_factor(m, 1000, 0);
  CHECK(f.cofactor == m);
  CHECK_FALSE(f.cofactor_is_prp);
  CHECK(f.reassemble() == m);
}

TEST_CASE("bounded_factor reassembles random inputs") {
  Rng rng(8);
  for (int i = 0; i < 80; ++i) {
    Int m = rng.below(Int("1000000000000000")) + 2;
    FactoredInteger f = bounded_factor(m, 10000, 1);
    CHECK(f.reassemble() == m);
    CHECK(f.value == m);
    Int prev = 1;
    for (const auto& [p, e] : f.factors) {
      CHECK(p > prev);
      CHECK(e >= 1);
      prev = p;
    }
  }
}

TEST_CASE("fourth_root_bound brackets the real fourth root") {
  CHECK(fourth_root_bound(29) == 16);    // ceil(29^(1/4)) = 3
  CHECK(fourth_root_bound(16) == 9);     // exact fourth power
  CHECK(fourth_root_bound(81) == 16);
  Int big = Int("9232029156001");
  Int b = fourth_root_bound(big);
  // (q+1)^2 with q = ceil(big^(1/4)); verify (q-1+1)^2 <= ... via squaring
  Int q;
  mpz_sqrt(q.get_mpz_t(), big.get_mpz_t());
  mpz_sqrt(q.get_mpz_t(), q.get_mpz_t());
  CHECK((b == (q + 1) * (q + 1) || b == (q + 2) * (q + 2)));
}

TEST_CASE("trial_division_prime and decimal_digits") {
  CHECK(trial_division_prime(2));
  CHECK(trial_division_prime(999983));
  CHECK_FALSE(trial_division_prime(999981));
  CHECK(trial_division_prime(Int("165490139")));
  CHECK(decimal_digits(0) == 1);
  CHECK(decimal_digits(9) == 1);
  CHECK(decimal_digits(10) == 2);
  CHECK(decimal_digits(Int("9232029156001")) == 13);
  Int p100 = 1;
  for (int i = 0; i < 100; ++i) p100 *= 10;
  CHECK(decimal_digits(p100) == 101);
  CHECK(decimal_digits(p100 - 1) == 100);
}

TEST_CASE("rng determinism and forking") {
  Rng a(42), b(42);
  for (int i = 0; i < 20; ++i) CHECK(a.below(1000000) == b.below(1000000));
  Rng c(42);
  CHECK(c.fork_seed(1) != c.fork_seed(2));
  Rng d1(c.fork_seed(7)), d2(c.fork_seed(7));
  CHECK(d1.below(Int("100000000000")) == d2.below(Int("100000000000")));
  CHECK_THROWS_AS(a.below(0), std::invalid_argument);
}
