#include "pascal_ecpp/cm.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "pascal_ecpp/modpoly.hpp"

namespace pascal_ecpp {

namespace {

// Squarefree test by stripping small primes; the leftover (no factor below
// 2^16) can only fail by being a perfect power. Fine through ~2^64.
bool squarefree(Int m) {
  for (std::uint32_t p : small_primes()) {
    if (Int(p) * p > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      if (mpz_divisible_ui_p(m.get_mpz_t(), p)) return false;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) m /= p;  // unreachable
    }
  }
  return m == 1 || !mpz_perfect_power_p(m.get_mpz_t());
}

int mod4(const Int& d) {
  Int r = d % 4;
  if (r < 0) r += 4;
  return static_cast<int>(r.get_si());
}

}  // namespace

bool is_fundamental(const Int& d) {
  if (d > -7) return false;
  int r = mod4(d);
  if (r == 1) return squarefree(-d);
  if (r != 0) return false;
  Int m = d / 4;
  int mr = mod4(m);
  if (mr != 2 && mr != 3) return false;
  return squarefree(-m);
}

DiscriminantTable DiscriminantTable::from_records(
    std::vector<DiscriminantRecord> recs) {
  for (const auto& rec : recs) {
    if (!is_fundamental(rec.d))
      throw std::invalid_argument("DiscriminantTable: non-fundamental d " +
                                  rec.d.get_str());
    Int prod = 1;
    for (const auto& [q, e] : rec.abs_factors)
      for (int i = 0; i < e; ++i) prod *= q;
    if (prod != -rec.d)
      throw std::invalid_argument("DiscriminantTable: bad factorization of " +
                                  rec.d.get_str());
    if (static_cast<int>(rec.class_poly.size()) != rec.class_number + 1 ||
        rec.class_poly.empty() || rec.class_poly.back() != 1)
      throw std::invalid_argument("DiscriminantTable: bad polynomial for " +
                                  rec.d.get_str());
  }
  std::sort(recs.begin(), recs.end(),
            [](const DiscriminantRecord& a, const DiscriminantRecord& b) {
              return -a.d < -b.d;
            });
  recs.erase(std::unique(recs.begin(), recs.end(),
                         [](const DiscriminantRecord& a,
                            const DiscriminantRecord& b) { return a.d == b.d; }),
             recs.end());
  DiscriminantTable t;
  t.records_ = std::move(recs);
  return t;
}

DiscriminantTable DiscriminantTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open discriminant table: " + path);
  std::vector<DiscriminantRecord> recs;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string d_str, fact_str, h_str, coeff_str;
    if (!std::getline(ls, d_str, ';') || !std::getline(ls, fact_str, ';') ||
        !std::getline(ls, h_str, ';') || !std::getline(ls, coeff_str))
      throw std::runtime_error("discriminant table line " +
                               std::to_string(lineno) + ": expected 4 fields");
    DiscriminantRecord rec;
    rec.d = Int(d_str);
    rec.class_number = std::stoi(h_str);
    std::istringstream fs(fact_str);
    std::string part;
    while (std::getline(fs, part, ',')) {
      auto caret = part.find('^');
      if (caret == std::string::npos)
        throw std::runtime_error("discriminant table line " +
                                 std::to_string(lineno) + ": bad factor " + part);
      rec.abs_factors.emplace_back(Int(part.substr(0, caret)),
                                   std::stoi(part.substr(caret + 1)));
    }
    // Coefficients are written most-significant first; stored ascending.
    std::istringstream cs(coeff_str);
    std::vector<Int> coeffs;
    while (std::getline(cs, part, ',')) coeffs.emplace_back(part);
    std::reverse(coeffs.begin(), coeffs.end());
    rec.class_poly = std::move(coeffs);
    recs.push_back(std::move(rec));
  }
  return from_records(std::move(recs));
}

void DiscriminantTable::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write discriminant table: " + path);
  out << "# fundamental discriminants with Hilbert class polynomials\n"
      << "# D;q1^e1,q2^e2,...;h;c_h,c_{h-1},...,c_0\n";
  for (const auto& rec : records_) {
    out << rec.d.get_str() << ';';
    for (size_t i = 0; i < rec.abs_factors.size(); ++i) {
      if (i) out << ',';
      out << rec.abs_factors[i].first.get_str() << '^'
          << rec.abs_factors[i].second;
    }
    out << ';' << rec.class_number << ';';
    for (size_t i = rec.class_poly.size(); i-- > 0;) {
      out << rec.class_poly[i].get_str();
      if (i) out << ',';
    }
    out << '\n';
  }
}

Int DiscriminantTable::max_abs_d() const {
  return records_.empty() ? Int(0) : Int(-records_.back().d);
}

std::vector<size_t> DiscriminantTable::admissible(long s_limit) const {
  std::vector<size_t> view;
  view.reserve(records_.size());
  for (size_t i = 0; i < records_.size(); ++i) {
    if (s_limit > 0) {
      bool ok = true;
      for (const auto& [q, e] : records_[i].abs_factors)
        if (q > s_limit) {
          ok = false;
          break;
        }
      if (!ok) continue;
    }
    view.push_back(i);
  }
  return view;
}

std::optional<size_t> next_d(const DiscriminantTable& table,
                             const std::vector<size_t>& view,
                             DiscriminantCursor& cursor, const Int& n,
                             const Int& abs_limit) {
  while (cursor.pos < view.size()) {
    const DiscriminantRecord& rec = table.at(view[cursor.pos]);
    if (-rec.d > abs_limit) return std::nullopt;  // resume here after a raise
    ++cursor.pos;
    if (jacobi(rec.d, n) == 1) return view[cursor.pos - 1];
  }
  return std::nullopt;
}

namespace {

using modpoly::Poly;

Int root_of_monic_linear(const Poly& f, const Int& n) {
  Int r = (n - f[0]) % n;
  if (r < 0) r += n;
  return r;
}

}  // namespace

std::optional<Int> hilbert_root(const Int& n, const DiscriminantRecord& rec,
                                Rng& rng) {
  if (n < 3 || mpz_even_p(n.get_mpz_t()))
    throw std::invalid_argument("hilbert_root: n must be odd and >= 3");
  Poly h = modpoly::reduce(rec.class_poly, n);
  // Monic, so reduction never drops the degree.
  if (rec.class_number == 1) return root_of_monic_linear(h, n);

  const Poly x{Int(0), Int(1)};
  Poly xn = modpoly::powmod(x, n, h, n);
  Poly g = modpoly::gcd(modpoly::sub(xn, x, n), h, n);
  if (modpoly::degree(g) < 1) return std::nullopt;

  // g is a product of distinct linear factors; split it fully and keep the
  // smallest root so the result is reproducible.
  std::vector<Int> roots;
  std::vector<Poly> stack{g};
  const Int half = (n - 1) / 2;
  while (!stack.empty()) {
    Poly f = std::move(stack.back());
    stack.pop_back();
    if (modpoly::degree(f) == 1) {
      roots.push_back(root_of_monic_linear(f, n));
      continue;
    }
    bool split = false;
    for (int tries = 0; tries < 64 && !split; ++tries) {
      Int delta = rng.below(n);
      Poly w = modpoly::powmod(Poly{delta, Int(1)}, half, f, n);
      w = modpoly::sub(w, Poly{Int(1)}, n);
      Poly part = modpoly::gcd(w, f, n);
      long dp = modpoly::degree(part);
      if (dp >= 1 && dp < modpoly::degree(f)) {
        auto qr = modpoly::divmod(f, part, n);
        stack.push_back(std::move(part));
        stack.push_back(std::move(qr.first));
        split = true;
      }
    }
    // A squarefree product of linears over a prime field splits with
    // probability >= 1/2 per try; consistent failure means n lied.
    if (!split) throw composite_modulus(n, n);
  }
  if (roots.empty()) return std::nullopt;
  return *std::min_element(roots.begin(), roots.end());
}

degenerate_j::degenerate_j(const Int& x0)
    : std::runtime_error("degenerate j-invariant " + x0.get_str()) {}

CurvePair curve_pair(const Int& n, const Int& x0_in, const Int& u, Rng& rng) {
  if (n < 5 || mpz_even_p(n.get_mpz_t()))
    throw std::invalid_argument("curve_pair: n must be odd and >= 5");
  Int x0 = x0_in % n;
  if (x0 < 0) x0 += n;
  Int seventeen28 = Int(1728) % n;
  if (x0 == 0 || x0 == seventeen28) throw degenerate_j(x0);

  Int den = (seventeen28 - x0) % n;
  if (den < 0) den += n;
  Int den_inv;
  if (mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), n.get_mpz_t()) == 0) {
    Int g;
    mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), n.get_mpz_t());
    throw factor_found(n, g);
  }
  Int k = (x0 * den_inv) % n;

  Int c;
  bool found = false;
  for (int tries = 0; tries < 256; ++tries) {
    c = rng.below(n);
    if (c == 0) continue;
    int chi = jacobi(c, n);
    if (chi == -1) {
      found = true;
      break;
    }
    if (chi == 0) {
      Int g;
      mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), n.get_mpz_t());
      throw factor_found(n, g);
    }
  }
  if (!found) throw composite_modulus(n, c);

  Int c2 = (c * c) % n;
  Int c3 = (c2 * c) % n;
  CurveSpec curve(n, (3 * k) % n, (2 * k) % n);
  CurveSpec twist(n, (3 * k) % n * c2 % n, (2 * k) % n * c3 % n);
  return CurvePair{k, c, curve, twist, n + 1 - u, n + 1 + u};
}

}  // namespace pascal_ecpp
