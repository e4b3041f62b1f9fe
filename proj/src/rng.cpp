#include "pascal_ecpp/rng.hpp"

#include <stdexcept>

namespace pascal_ecpp {

Rng::Rng(unsigned long seed) : seed_(seed) {
  gmp_randinit_mt(state_);
  gmp_randseed_ui(state_, seed);
}

Rng::Rng(const Int& seed) : seed_(seed) {
  gmp_randinit_mt(state_);
  gmp_randseed(state_, seed.get_mpz_t());
}

Rng::~Rng() { gmp_randclear(state_); }

Int Rng::below(const Int& bound) {
  if (bound <= 0) throw std::invalid_argument("Rng::below: bound must be >= 1");
  Int r;
  mpz_urandomm(r.get_mpz_t(), state_, bound.get_mpz_t());
  return r;
}

Int Rng::in_range(const Int& lo, const Int& hi) {
  if (lo > hi) throw std::invalid_argument("Rng::in_range: empty range");
  return lo + below(hi - lo + 1);
}

Int Rng::fork_seed(unsigned long tag) const {
  // Distinct odd multiplier keeps child seeds apart for adjacent tags.
  static const Int kMix("11400714819323198485");  // 2^64 / golden ratio
  return seed_ * kMix + Int(tag) * 2 + 1;
}

}  // namespace pascal_ecpp
