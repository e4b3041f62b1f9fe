#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pascal_ecpp/rng.hpp"

namespace pascal_ecpp {

// Thrown when arithmetic that assumed a prime modulus ran into a
// contradiction. The modulus is certainly composite; `witness` is the value
// that exposed it (a nontrivial gcd or a failing square).
class composite_modulus : public std::runtime_error {
public:
  composite_modulus(Int modulus, Int witness);
  Int modulus;
  Int witness;
};

// Jacobi symbol (a|n) for odd n >= 1. Rejects even or nonpositive n.
int jacobi(const Int& a, const Int& n);

// All primes below 2^16, ascending.
const std::vector<std::uint32_t>& small_primes();

// Primes <= limit, ascending (sieved on demand).
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

// Exact primality by trial division. Intended for moduli up to ~2^50.
bool trial_division_prime(const Int& n);

// Miller-Rabin with `bases` random bases drawn from rng in [2, n-2].
// n < 2^16 is decided exactly by trial division. A false result is
// always correct; true means composite with probability < 4^-bases.
bool is_probable_prime(const Int& n, int bases, Rng& rng);
bool is_probable_prime(const Int& n, int bases = 20);

// Like is_probable_prime but reports a witness of compositeness
// (a small factor, or a Miller-Rabin base that failed). nullopt = probable
// prime.
std::optional<Int> prp_witness(const Int& n, int bases, Rng& rng);

// Square root of a mod an odd probable prime p. Returns the smaller of the
// two roots. nullopt when (a|p) = -1. Throws composite_modulus when the
// computation contradicts itself, which can happen only if p is composite.
std::optional<Int> sqrt_mod_prime(const Int& a, const Int& p);

// Per-modulus cache of square roots keyed by the radicand (a prime q, -q,
// -1, or a product of two primes). Single writer; see sqrt_of_discriminant.
struct SqrtCache {
  Int modulus;
  std::map<Int, Int> roots;
  long tonelli_calls = 0;  // cache misses resolved by a fresh Tonelli-Shanks
};

// Square root of a fundamental discriminant d (< 0) mod n, assembled as a
// product of cached per-prime roots. abs_factors is the factorization of
// |d|. Requires (d|n) = 1; throws std::invalid_argument otherwise and
// composite_modulus when n betrays itself.
Int sqrt_of_discriminant(const Int& d,
                         const std::vector<std::pair<Int, int>>& abs_factors,
                         const Int& n, SqrtCache& cache);

// Solve u^2 + |d|*v^2 = 4n for a fundamental discriminant d < 0 and probable
// prime n, u,v >= 1. nullopt when no representation exists. The overload
// taking sqrt_d skips the internal square root (pass a cached value with
// sqrt_d^2 = d mod n).
std::optional<std::pair<Int, Int>> cornacchia(const Int& d, const Int& n);
std::optional<std::pair<Int, Int>> cornacchia(const Int& d, const Int& n,
                                              const Int& sqrt_d);

// An integer together with as much of its factorization as was established.
// value = cofactor * prod(p^e); listed primes are strictly increasing and
// each either < 2^16 (trial-division prime) or a probable prime.
struct FactoredInteger {
  Int value = 1;
  std::vector<std::pair<Int, int>> factors;
  Int cofactor = 1;
  bool cofactor_is_prp = false;

  Int reassemble() const;
  bool fully_factored() const { return cofactor == 1; }
  bool operator==(const FactoredInteger& other) const;
};

// Pull all prime factors <= smooth_bound out of m by trial division; at
// effort >= 1 run Brent's rho on what is left (1e5 iterations, 1e7 at
// effort 2). Never fails: an unresolved remainder is returned in the
// cofactor, flagged as probable prime or not.
FactoredInteger bounded_factor(const Int& m, std::uint32_t smooth_bound,
                               int effort = 1);

// (ceil(m^(1/4)) + 1)^2: the threshold a certified factor must exceed for
// the curve-order argument to prove the modulus prime. Integer-exact and
// never below the real (m^(1/4)+1)^2.
Int fourth_root_bound(const Int& m);

// Exact number of decimal digits.
long decimal_digits(const Int& n);

}  // namespace pascal_ecpp
