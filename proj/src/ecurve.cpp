#include "pascal_ecpp/ecurve.hpp"

namespace pascal_ecpp {

factor_found::factor_found(Int m, Int f)
    : std::runtime_error("factor " + f.get_str() + " of modulus " +
                         m.get_str() + " found"),
      modulus(std::move(m)),
      factor(std::move(f)) {}

namespace {

Int mod_reduce(const Int& v, const Int& n) {
  Int r = v % n;
  if (r < 0) r += n;
  return r;
}

// Inverse of v mod n; v's gcd with n is a factor witness when not 1.
Int mod_inverse(const Int& v, const Int& n) {
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t()) == 0) {
    Int g;
    mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    throw factor_found(n, g);
  }
  return inv;
}

}  // namespace

CurveSpec::CurveSpec(Int modulus, Int a, Int b)
    : n_(std::move(modulus)) {
  if (n_ < 5 || mpz_even_p(n_.get_mpz_t()))
    throw std::invalid_argument("CurveSpec: modulus must be odd and >= 5");
  a_ = mod_reduce(a, n_);
  b_ = mod_reduce(b, n_);
  Int disc = 4 * a_ * a_ * a_ + 27 * b_ * b_;
  Int g;
  mpz_gcd(g.get_mpz_t(), disc.get_mpz_t(), n_.get_mpz_t());
  if (g == n_) throw std::invalid_argument("CurveSpec: singular curve");
  if (g != 1) throw factor_found(n_, g);
}

CurvePoint CurvePoint::infinity() { return CurvePoint(); }

CurvePoint CurvePoint::affine(Int x, Int y) {
  CurvePoint p;
  p.infinity_ = false;
  p.x_ = std::move(x);
  p.y_ = std::move(y);
  return p;
}

const Int& CurvePoint::x() const {
  if (infinity_) throw std::logic_error("CurvePoint: x() of infinity");
  return x_;
}

const Int& CurvePoint::y() const {
  if (infinity_) throw std::logic_error("CurvePoint: y() of infinity");
  return y_;
}

bool CurvePoint::operator==(const CurvePoint& o) const {
  if (infinity_ || o.infinity_) return infinity_ == o.infinity_;
  return x_ == o.x_ && y_ == o.y_;
}

bool on_curve(const CurvePoint& p, const CurveSpec& e) {
  if (p.is_infinity()) return true;
  const Int& n = e.modulus();
  Int lhs = (p.y() * p.y()) % n;
  Int rhs = mod_reduce(p.x() * p.x() % n * p.x() + e.a() * p.x() + e.b(), n);
  return lhs == rhs;
}

CurvePoint add(const CurvePoint& p, const CurvePoint& q, const CurveSpec& e) {
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  const Int& n = e.modulus();

  Int lambda;
  if (p.x() == q.x()) {
    if ((p.y() + q.y()) % n == 0) return CurvePoint::infinity();
    if (p.y() != q.y()) {
      // Two distinct on-curve points share x but are not negatives: their
      // y's square to the same value, so gcd(y1 - y2, n) splits n.
      Int g;
      Int diff = p.y() - q.y();
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      throw factor_found(n, g);
    }
    Int num = mod_reduce(3 * p.x() * p.x() + e.a(), n);
    lambda = (num * mod_inverse(mod_reduce(2 * p.y(), n), n)) % n;
  } else {
    Int num = mod_reduce(q.y() - p.y(), n);
    Int den = mod_reduce(q.x() - p.x(), n);
    lambda = (num * mod_inverse(den, n)) % n;
  }

  Int x3 = mod_reduce(lambda * lambda - p.x() - q.x(), n);
  Int y3 = mod_reduce(lambda * (p.x() - x3) - p.y(), n);
  return CurvePoint::affine(std::move(x3), std::move(y3));
}

CurvePoint scalar_mul(const Int& k, const CurvePoint& p, const CurveSpec& e) {
  if (k < 0) throw std::invalid_argument("scalar_mul: k must be >= 0");
  if (k == 0 || p.is_infinity()) return CurvePoint::infinity();
  CurvePoint acc = CurvePoint::infinity();
  const unsigned long nbits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (long bit = static_cast<long>(nbits) - 1; bit >= 0; --bit) {
    acc = add(acc, acc, e);
    if (mpz_tstbit(k.get_mpz_t(), static_cast<unsigned long>(bit)))
      acc = add(acc, p, e);
  }
  return acc;
}

CurvePoint random_point(const CurveSpec& e, Rng& rng) {
  const Int& n = e.modulus();
  for (;;) {
    Int x = rng.below(n);
    Int rhs = mod_reduce(x * x % n * x + e.a() * x + e.b(), n);
    if (rhs == 0) return CurvePoint::affine(std::move(x), Int(0));
    int chi = jacobi(rhs, n);
    if (chi == -1) continue;
    if (chi == 0) {
      Int g;
      mpz_gcd(g.get_mpz_t(), rhs.get_mpz_t(), n.get_mpz_t());
      throw factor_found(n, g);
    }
    auto y = sqrt_mod_prime(rhs, n);
    if (!y) continue;  // jacobi said square; only possible if n composite
    return CurvePoint::affine(std::move(x), std::move(*y));
  }
}

ProofOutcome proof_step(const CurveSpec& e, const Int& m, const Int& f,
                        Rng& rng, int retry_limit) {
  if (f <= 0 || m <= 0 || m % f != 0)
    throw std::invalid_argument("proof_step: need m = f*s with f, s >= 1");
  const Int s = m / f;
  try {
    for (int attempt = 0; attempt < retry_limit; ++attempt) {
      CurvePoint p = random_point(e, rng);
      CurvePoint q = scalar_mul(f, p, e);
      if (q.is_infinity()) continue;  // resample
      CurvePoint r = scalar_mul(s, q, e);
      if (!r.is_infinity()) return {ProofOutcome::Kind::No};
      ProofOutcome out{ProofOutcome::Kind::Yes};
      out.witness = p;
      return out;
    }
  } catch (const factor_found& ff) {
    ProofOutcome out{ProofOutcome::Kind::Composite};
    out.factor = ff.factor;
    return out;
  } catch (const composite_modulus& cm) {
    ProofOutcome out{ProofOutcome::Kind::Composite};
    out.factor = cm.witness;
    return out;
  }
  return {ProofOutcome::Kind::RetryLimit};
}

}  // namespace pascal_ecpp
