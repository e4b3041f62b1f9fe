#pragma once

#include <vector>

#include "pascal_ecpp/numtheory.hpp"

namespace pascal_ecpp::modpoly {

// Dense polynomial over Z/nZ, coefficients ascending, no trailing zeros.
// The zero polynomial is the empty vector.
using Poly = std::vector<Int>;

Poly trim(Poly a);
Poly reduce(const Poly& a, const Int& n);
long degree(const Poly& a);  // -1 for the zero polynomial

Poly add(const Poly& a, const Poly& b, const Int& n);
Poly sub(const Poly& a, const Poly& b, const Int& n);
Poly mul(const Poly& a, const Poly& b, const Int& n);

// Remainder of a mod b. b need not be monic; its leading coefficient is
// inverted mod n (composite_modulus if that fails nontrivially).
Poly rem(const Poly& a, const Poly& b, const Int& n);

// Quotient and remainder of a by b.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, const Int& n);

// Monic gcd. Throws composite_modulus if a required inversion fails.
Poly gcd(Poly a, Poly b, const Int& n);

// base^e mod (modpoly, n) by square and multiply.
Poly powmod(const Poly& base, const Int& e, const Poly& modpoly, const Int& n);

Int eval(const Poly& a, const Int& x, const Int& n);

}  // namespace pascal_ecpp::modpoly
