#include "pascal_ecpp/certificate.hpp"

#include <sstream>

#include "pascal_ecpp/ecurve.hpp"

namespace pascal_ecpp {

bool CertStep::operator==(const CertStep& o) const {
  return index == o.index && s == o.s && a == o.a && b == o.b && x == o.x &&
         y == o.y && f == o.f;
}

bool Certificate::operator==(const Certificate& o) const {
  return n == o.n && steps == o.steps;
}

namespace {

void validate_for_emit(const Certificate& cert) {
  if (cert.steps.empty())
    throw std::invalid_argument("emit: certificate has no steps");
  for (size_t i = 0; i < cert.steps.size(); ++i) {
    const CertStep& st = cert.steps[i];
    if (st.index != static_cast<int>(i) + 1)
      throw std::invalid_argument("emit: step indices must run 1..#L");
    if (st.f.cofactor != 1 || st.f.factors.empty())
      throw std::invalid_argument("emit: f must be fully factored");
    if (st.f.reassemble() != st.f.value)
      throw std::invalid_argument("emit: f factorization does not multiply out");
  }
}

}  // namespace

std::string emit(const Certificate& cert) {
  validate_for_emit(cert);
  std::ostringstream out;
  out << "ECPP-CERT v1\n";
  out << "N " << cert.n.get_str() << '\n';
  for (const CertStep& st : cert.steps) {
    out << st.index << ';' << st.s.get_str() << ';' << st.a.get_str() << ';'
        << st.b.get_str() << ';' << st.x.get_str() << ';' << st.y.get_str()
        << ";f=" << st.f.value.get_str() << '=';
    for (size_t i = 0; i < st.f.factors.size(); ++i) {
      if (i) out << '*';
      out << st.f.factors[i].first.get_str() << '^' << st.f.factors[i].second;
    }
    out << '\n';
  }
  return out.str();
}

cert_syntax_error::cert_syntax_error(int line_, int column_,
                                     const std::string& what_)
    : std::runtime_error("certificate syntax error at line " +
                         std::to_string(line_) + ", column " +
                         std::to_string(column_) + ": " + what_),
      line(line_),
      column(column_) {}

cert_invariant_error::cert_invariant_error(int line_, const std::string& what_)
    : std::runtime_error("certificate invariant violated at line " +
                         std::to_string(line_) + ": " + what_),
      line(line_) {}

namespace {

// Decimal with no leading zeros ("0" itself is fine).
Int parse_number(const std::string& tok, int line, int col_base) {
  if (tok.empty()) throw cert_syntax_error(line, col_base, "empty number");
  for (size_t i = 0; i < tok.size(); ++i)
    if (tok[i] < '0' || tok[i] > '9')
      throw cert_syntax_error(line, col_base + static_cast<int>(i),
                              "expected digit");
  if (tok.size() > 1 && tok[0] == '0')
    throw cert_syntax_error(line, col_base, "leading zero");
  return Int(tok);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

int column_of_field(const std::vector<std::string>& fields, size_t idx) {
  int col = 1;
  for (size_t i = 0; i < idx; ++i)
    col += static_cast<int>(fields[i].size()) + 1;
  return col;
}

}  // namespace

Certificate parse(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char ch : text) {
      if (ch == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    if (!cur.empty())
      throw cert_syntax_error(static_cast<int>(lines.size()) + 1,
                              static_cast<int>(cur.size()) + 1,
                              "missing final newline");
  }
  if (lines.empty()) throw cert_syntax_error(1, 1, "empty document");
  if (lines[0] != "ECPP-CERT v1")
    throw cert_syntax_error(1, 1, "bad header, expected ECPP-CERT v1");
  if (lines.size() < 2 || lines[1].substr(0, 2) != "N ")
    throw cert_syntax_error(2, 1, "expected N <value>");

  Certificate cert;
  cert.n = parse_number(lines[1].substr(2), 2, 3);

  for (size_t li = 2; li < lines.size(); ++li) {
    const int line = static_cast<int>(li) + 1;
    auto fields = split(lines[li], ';');
    if (fields.size() != 7)
      throw cert_syntax_error(line, static_cast<int>(lines[li].size()) + 1,
                              "expected 7 ;-separated fields");
    CertStep st;
    Int idx = parse_number(fields[0], line, 1);
    if (idx != static_cast<long>(li) - 1)
      throw cert_invariant_error(line, "step index out of sequence");
    st.index = static_cast<int>(idx.get_si());
    st.s = parse_number(fields[1], line, column_of_field(fields, 1));
    st.a = parse_number(fields[2], line, column_of_field(fields, 2));
    st.b = parse_number(fields[3], line, column_of_field(fields, 3));
    st.x = parse_number(fields[4], line, column_of_field(fields, 4));
    st.y = parse_number(fields[5], line, column_of_field(fields, 5));

    const std::string& ff = fields[6];
    const int fcol = column_of_field(fields, 6);
    if (ff.substr(0, 2) != "f=")
      throw cert_syntax_error(line, fcol, "expected f=<value>=<factors>");
    auto eq = ff.find('=', 2);
    if (eq == std::string::npos)
      throw cert_syntax_error(line, fcol + 2, "expected =<factors> after f value");
    st.f.value = parse_number(ff.substr(2, eq - 2), line, fcol + 2);
    std::string factors = ff.substr(eq + 1);
    if (factors.empty())
      throw cert_syntax_error(line, fcol + static_cast<int>(eq) + 2,
                              "empty factorization");
    Int last = 1;
    for (const std::string& part : split(factors, '*')) {
      auto caret = part.find('^');
      if (caret == std::string::npos || caret == 0 ||
          caret + 1 >= part.size())
        throw cert_syntax_error(line, fcol, "factor must be p^e");
      Int p = parse_number(part.substr(0, caret), line, fcol);
      Int e = parse_number(part.substr(caret + 1), line, fcol);
      if (p < 2) throw cert_invariant_error(line, "factor below 2");
      if (e < 1 || e > 100000)
        throw cert_invariant_error(line, "exponent out of range");
      if (p <= last)
        throw cert_invariant_error(line, "factors not strictly increasing");
      last = p;
      st.f.factors.emplace_back(p, static_cast<int>(e.get_si()));
    }
    st.f.cofactor = 1;
    if (st.f.reassemble() != st.f.value)
      throw cert_invariant_error(line, "f factor product mismatch");
    cert.steps.push_back(std::move(st));
  }
  if (cert.steps.empty())
    throw cert_invariant_error(static_cast<int>(lines.size()),
                               "certificate has no steps");
  return cert;
}

namespace {

VerifyResult reject(int step, const std::string& reason) {
  return VerifyResult{false, reason, step};
}

}  // namespace

VerifyResult verify(const Certificate& cert, const VerifyOptions& opts) {
  if (cert.steps.empty()) return reject(0, "no steps");
  const size_t count = cert.steps.size();
  Rng rng(0xcec7u);

  for (size_t i = 0; i < count; ++i) {
    const CertStep& st = cert.steps[i];
    const int stepno = static_cast<int>(i) + 1;
    const Int& modulus = (i + 1 < count) ? cert.steps[i + 1].s : cert.n;

    if (modulus < 5 || mpz_even_p(modulus.get_mpz_t()))
      return reject(stepno, "modulus not an odd number >= 5");
    if (st.s < 2) return reject(stepno, "s below 2");
    if (st.a < 0 || st.a >= modulus || st.b < 0 || st.b >= modulus ||
        st.x < 0 || st.x >= modulus || st.y < 0 || st.y >= modulus)
      return reject(stepno, "residue not reduced mod the step modulus");

    // (1) nonsingular curve, modulus coprime to the discriminant
    Int disc = 4 * st.a * st.a * st.a + 27 * st.b * st.b;
    Int g;
    mpz_gcd(g.get_mpz_t(), disc.get_mpz_t(), modulus.get_mpz_t());
    if (g != 1) return reject(stepno, "gcd(4a^3+27b^2, modulus) != 1");

    // (2) witness point on the curve
    Int lhs = (st.y * st.y) % modulus;
    Int rhs = (((st.x * st.x) % modulus * st.x) + st.a * st.x + st.b) % modulus;
    if (rhs < 0) rhs += modulus;
    if (lhs != rhs) return reject(stepno, "point not on curve");

    // (3) f fully factored: exact product, every listed factor prime
    if (st.f.cofactor != 1) return reject(stepno, "f not fully factored");
    if (st.f.value < 1) return reject(stepno, "f below 1");
    if (st.f.reassemble() != st.f.value)
      return reject(stepno, "f factor product mismatch");
    Int prev = 1;
    for (const auto& [p, e] : st.f.factors) {
      if (e < 1) return reject(stepno, "factor exponent below 1");
      if (p <= prev) return reject(stepno, "factors not strictly increasing");
      prev = p;
      bool prime = (p < (1 << 16)) ? trial_division_prime(p)
                                   : is_probable_prime(p, opts.prp_bases, rng);
      if (!prime) return reject(stepno, "listed factor of f not prime");
    }

    // (4) m*P = O and f*P != O on the curve, computed as s*(f*P);
    // any inversion failure is fatal
    try {
      CurveSpec curve(modulus, st.a, st.b);
      CurvePoint p = CurvePoint::affine(st.x, st.y);
      CurvePoint fp = scalar_mul(st.f.value, p, curve);
      if (fp.is_infinity()) return reject(stepno, "f*P is the identity");
      CurvePoint mp = scalar_mul(st.s, fp, curve);
      if (!mp.is_infinity()) return reject(stepno, "m*P not the identity");
    } catch (const factor_found& ff) {
      return reject(stepno,
                    "composite modulus (factor " + ff.factor.get_str() + ")");
    } catch (const std::invalid_argument&) {
      return reject(stepno, "curve construction failed");
    }

    // (5) s large enough for the order argument to carry
    if (st.s <= fourth_root_bound(modulus))
      return reject(stepno, "s not above (modulus^(1/4)+1)^2");
  }

  // (6) base case: smallest prime by trial division
  const Int& base = cert.steps.front().s;
  if (base > opts.base_prime_limit)
    return reject(1, "base prime too large to trial-divide");
  if (!trial_division_prime(base)) return reject(1, "base s not prime");

  return VerifyResult{true, "", 0};
}

}  // namespace pascal_ecpp
