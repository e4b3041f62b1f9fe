#pragma once

#include <stdexcept>

#include "pascal_ecpp/numtheory.hpp"

namespace pascal_ecpp {

// A modular inversion failed with gcd g, 1 < g < modulus: the modulus is
// composite and g is a factor. In the curve-order proof this is exactly the
// "f*P is not defined" event.
class factor_found : public std::runtime_error {
public:
  factor_found(Int modulus, Int factor);
  Int modulus;
  Int factor;
};

// y^2 = x^3 + ax + b over Z/nZ, n odd and >= 5. Construction checks
// gcd(4a^3 + 27b^2, n) = 1; a gcd strictly between 1 and n throws
// factor_found, gcd = n (singular curve) is an argument error.
class CurveSpec {
public:
  CurveSpec(Int modulus, Int a, Int b);
  const Int& modulus() const { return n_; }
  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  bool operator==(const CurveSpec& o) const = default;

private:
  Int n_, a_, b_;
};

// Affine point or the point at infinity O (the group identity).
class CurvePoint {
public:
  static CurvePoint infinity();
  static CurvePoint affine(Int x, Int y);
  bool is_infinity() const { return infinity_; }
  const Int& x() const;
  const Int& y() const;
  bool operator==(const CurvePoint& o) const;

private:
  CurvePoint() = default;
  bool infinity_ = true;
  Int x_, y_;
};

bool on_curve(const CurvePoint& p, const CurveSpec& e);

// Chord-tangent group law in affine coordinates. Affine on purpose: failed
// inversions must surface as factor_found.
CurvePoint add(const CurvePoint& p, const CurvePoint& q, const CurveSpec& e);

// k*P by double-and-add, k >= 0.
CurvePoint scalar_mul(const Int& k, const CurvePoint& p, const CurveSpec& e);

// Uniform point: sample x until x^3+ax+b is a square, take the smaller root.
// Expects a probable-prime modulus; composite moduli surface as
// composite_modulus or factor_found.
CurvePoint random_point(const CurveSpec& e, Rng& rng);

struct ProofOutcome {
  enum class Kind { Yes, No, RetryLimit, Composite };
  Kind kind;
  CurvePoint witness = CurvePoint::infinity();  // set for Yes
  Int factor = 0;                               // set for Composite
};

// The point test of the curve-order primality argument, for m = f*s:
// sample P; a factor during f*P means composite; f*P = O resamples
// (at most retry_limit times); m*P != O is a No; otherwise Yes with the
// witness point P satisfying m*P = O, f*P != O.
ProofOutcome proof_step(const CurveSpec& e, const Int& m, const Int& f,
                        Rng& rng, int retry_limit = 32);

}  // namespace pascal_ecpp
