#pragma once

#include <string>
#include <vector>

#include "pascal_ecpp/numtheory.hpp"

namespace pascal_ecpp {

// One proof step: the curve y^2 = x^3 + ax + b over Z/MZ has a point (x, y)
// with (s*f)P = O and fP != O, where M is the NEXT step's s (or the
// certified n for the last step), s is prime by the previous step, and f is
// fully factored.
struct CertStep {
  int index = 0;
  Int s, a, b, x, y;
  FactoredInteger f;
  bool operator==(const CertStep& o) const;
};

// Steps in reverse downrun order: smallest s first, so verification starts
// at the trial-division base case and climbs to n.
struct Certificate {
  Int n;
  std::vector<CertStep> steps;
  bool operator==(const Certificate& o) const;
};

// Text format, byte-exact round trip with parse():
//   ECPP-CERT v1
//   N <n>
//   <i>;<s>;<a>;<b>;<x>;<y>;f=<value>=<p1>^<e1>*<p2>^<e2>*...
// All numbers decimal with no leading zeros; one step per line, indices
// sequential from 1. Throws std::invalid_argument on an empty or
// inconsistent certificate.
std::string emit(const Certificate& cert);

class cert_syntax_error : public std::runtime_error {
public:
  cert_syntax_error(int line, int column, const std::string& what);
  int line;
  int column;
};

class cert_invariant_error : public std::runtime_error {
public:
  cert_invariant_error(int line, const std::string& what);
  int line;
};

Certificate parse(const std::string& text);

struct VerifyOptions {
  int prp_bases = 20;
  // The base case is proved by trial division; a certificate whose smallest
  // prime exceeds this is rejected rather than verified slowly.
  Int base_prime_limit = Int(1) << 40;
};

struct VerifyResult {
  bool accepted = false;
  std::string reason;  // empty when accepted
  int step = 0;        // 1-based failing step, 0 = certificate-level failure
};

// Independent checker: trusts nothing about the producer, uses only modular
// arithmetic and the curve group law. Accepted implies n is prime,
// unconditionally.
VerifyResult verify(const Certificate& cert, const VerifyOptions& opts = {});

}  // namespace pascal_ecpp
