#pragma once

#include <gmpxx.h>

namespace pascal_ecpp {

using Int = mpz_class;

// Deterministic random stream over GMP's Mersenne Twister. Every randomized
// routine in the library draws from an Rng, so a run is reproducible from a
// single root seed. fork_seed() derives the seed of an independent child
// stream without consuming state, which keeps parallel sections deterministic.
class Rng {
public:
  explicit Rng(unsigned long seed = 0);
  explicit Rng(const Int& seed);
  ~Rng();

  Rng(const Rng&) = delete;
  Rng& operator=(const Rng&) = delete;

  // Uniform in [0, bound); bound >= 1.
  Int below(const Int& bound);
  // Uniform in [lo, hi], inclusive; lo <= hi.
  Int in_range(const Int& lo, const Int& hi);

  Int fork_seed(unsigned long tag) const;
  const Int& seed() const { return seed_; }

private:
  gmp_randstate_t state_;
  Int seed_;
};

}  // namespace pascal_ecpp
