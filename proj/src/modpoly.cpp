#include "pascal_ecpp/modpoly.hpp"

#include <algorithm>

namespace pascal_ecpp::modpoly {

namespace {

Int mod_inverse(const Int& a, const Int& n) {
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t()) == 0) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    throw composite_modulus(n, g);
  }
  return inv;
}

}  // namespace

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly reduce(const Poly& a, const Int& n) {
  Poly out(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] % n;
    if (out[i] < 0) out[i] += n;
  }
  return trim(std::move(out));
}

long degree(const Poly& a) { return static_cast<long>(a.size()) - 1; }

Poly add(const Poly& a, const Poly& b, const Int& n) {
  Poly out(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] = (out[i] + b[i]) % n;
  return trim(std::move(out));
}

Poly sub(const Poly& a, const Poly& b, const Int& n) {
  Poly out(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) {
    out[i] = (out[i] - b[i]) % n;
    if (out[i] < 0) out[i] += n;
  }
  return trim(std::move(out));
}

Poly mul(const Poly& a, const Poly& b, const Int& n) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  for (Int& c : out) c %= n;
  return trim(std::move(out));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, const Int& n) {
  if (b.empty())
    throw std::invalid_argument("modpoly::divmod: division by zero");
  Poly r = a;
  const long db = degree(b);
  if (degree(r) < db) return {Poly{}, std::move(r)};
  Poly quot(static_cast<size_t>(degree(r) - db) + 1, Int(0));
  const Int lead_inv = b.back() == 1 ? Int(1) : mod_inverse(b.back(), n);
  for (long i = degree(r); i >= db; --i) {
    if (r[i] == 0) continue;
    Int q = (r[i] * lead_inv) % n;
    quot[i - db] = q;
    for (long j = 0; j <= db; ++j) {
      r[i - db + j] = (r[i - db + j] - q * b[j]) % n;
      if (r[i - db + j] < 0) r[i - db + j] += n;
    }
  }
  return {trim(std::move(quot)), trim(std::move(r))};
}

Poly rem(const Poly& a, const Poly& b, const Int& n) {
  if (b.empty()) throw std::invalid_argument("modpoly::rem: division by zero");
  Poly r = a;
  const long db = degree(b);
  if (degree(r) < db) return r;
  const Int lead_inv = b.back() == 1 ? Int(1) : mod_inverse(b.back(), n);
  for (long i = degree(r); i >= db; --i) {
    if (r[i] == 0) continue;
    Int q = (r[i] * lead_inv) % n;
    for (long j = 0; j <= db; ++j) {
      r[i - db + j] = (r[i - db + j] - q * b[j]) % n;
      if (r[i - db + j] < 0) r[i - db + j] += n;
    }
  }
  return trim(std::move(r));
}

Poly gcd(Poly a, Poly b, const Int& n) {
  a = reduce(a, n);
  b = reduce(b, n);
  while (!b.empty()) {
    Poly r = rem(a, b, n);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  if (a.back() != 1) {
    Int inv = mod_inverse(a.back(), n);
    for (Int& c : a) c = (c * inv) % n;
  }
  return a;
}

Poly powmod(const Poly& base, const Int& e, const Poly& modpoly, const Int& n) {
  if (e < 0) throw std::invalid_argument("modpoly::powmod: negative exponent");
  Poly result{Int(1)};
  Poly acc = rem(reduce(base, n), modpoly, n);
  const unsigned long nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (long bit = static_cast<long>(nbits) - 1; bit >= 0; --bit) {
    result = rem(mul(result, result, n), modpoly, n);
    if (mpz_tstbit(e.get_mpz_t(), static_cast<unsigned long>(bit)))
      result = rem(mul(result, acc, n), modpoly, n);
  }
  return result;
}

Int eval(const Poly& a, const Int& x, const Int& n) {
  Int acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = (acc * x + *it) % n;
  if (acc < 0) acc += n;
  return acc;
}

}  // namespace pascal_ecpp::modpoly
