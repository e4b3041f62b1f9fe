#include "pascal_ecpp/classpoly.hpp"

#include <mpfr.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pascal_ecpp {

std::vector<QuadForm> reduced_forms(long d) {
  if (d >= 0) throw std::invalid_argument("reduced_forms: d must be < 0");
  int r = ((d % 4) + 4) % 4;
  if (r != 0 && r != 1)
    throw std::invalid_argument("reduced_forms: d must be 0 or 1 mod 4");
  std::vector<QuadForm> out;
  for (long a = 1; 3 * a * a <= -d; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      if (((b - d) % 2) != 0) continue;  // b must match d's parity
      long num = b * b - d;
      if (num % (4 * a) != 0) continue;
      long c = num / (4 * a);
      if (c < a) continue;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      if (a == c && b < 0) continue;  // |b| = a is already outside the range
      out.push_back({a, b, c});
    }
  }
  return out;
}

int class_number(long d) { return static_cast<int>(reduced_forms(d).size()); }

namespace {

constexpr mpfr_rnd_t R = MPFR_RNDN;

// Complex number over a pair of mpfr reals, fixed precision.
class CF {
public:
  explicit CF(mpfr_prec_t prec) {
    mpfr_init2(re_, prec);
    mpfr_init2(im_, prec);
    mpfr_set_zero(re_, 1);
    mpfr_set_zero(im_, 1);
  }
  CF(const CF& o) {
    mpfr_init2(re_, mpfr_get_prec(o.re_));
    mpfr_init2(im_, mpfr_get_prec(o.im_));
    mpfr_set(re_, o.re_, R);
    mpfr_set(im_, o.im_, R);
  }
  CF& operator=(const CF& o) {
    if (this != &o) {
      mpfr_set_prec(re_, mpfr_get_prec(o.re_));
      mpfr_set_prec(im_, mpfr_get_prec(o.im_));
      mpfr_set(re_, o.re_, R);
      mpfr_set(im_, o.im_, R);
    }
    return *this;
  }
  ~CF() {
    mpfr_clear(re_);
    mpfr_clear(im_);
  }
  mpfr_ptr re() { return re_; }
  mpfr_ptr im() { return im_; }
  mpfr_srcptr re() const { return re_; }
  mpfr_srcptr im() const { return im_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(re_); }

  void set_ui(unsigned long x) {
    mpfr_set_ui(re_, x, R);
    mpfr_set_zero(im_, 1);
  }

private:
  mpfr_t re_, im_;
};

CF cmul(const CF& a, const CF& b) {
  CF out(a.prec());
  mpfr_t t1, t2;
  mpfr_init2(t1, a.prec());
  mpfr_init2(t2, a.prec());
  mpfr_mul(t1, a.re(), b.re(), R);
  mpfr_mul(t2, a.im(), b.im(), R);
  mpfr_sub(out.re(), t1, t2, R);
  mpfr_mul(t1, a.re(), b.im(), R);
  mpfr_mul(t2, a.im(), b.re(), R);
  mpfr_add(out.im(), t1, t2, R);
  mpfr_clear(t1);
  mpfr_clear(t2);
  return out;
}

CF cadd(const CF& a, const CF& b) {
  CF out(a.prec());
  mpfr_add(out.re(), a.re(), b.re(), R);
  mpfr_add(out.im(), a.im(), b.im(), R);
  return out;
}

CF csub(const CF& a, const CF& b) {
  CF out(a.prec());
  mpfr_sub(out.re(), a.re(), b.re(), R);
  mpfr_sub(out.im(), a.im(), b.im(), R);
  return out;
}

CF cdiv(const CF& a, const CF& b) {
  CF out(a.prec());
  mpfr_t norm, t1, t2;
  mpfr_init2(norm, a.prec());
  mpfr_init2(t1, a.prec());
  mpfr_init2(t2, a.prec());
  mpfr_mul(t1, b.re(), b.re(), R);
  mpfr_mul(t2, b.im(), b.im(), R);
  mpfr_add(norm, t1, t2, R);
  // (a * conj b) / |b|^2
  mpfr_mul(t1, a.re(), b.re(), R);
  mpfr_mul(t2, a.im(), b.im(), R);
  mpfr_add(t1, t1, t2, R);
  mpfr_div(out.re(), t1, norm, R);
  mpfr_mul(t1, a.im(), b.re(), R);
  mpfr_mul(t2, a.re(), b.im(), R);
  mpfr_sub(t1, t1, t2, R);
  mpfr_div(out.im(), t1, norm, R);
  mpfr_clear(norm);
  mpfr_clear(t1);
  mpfr_clear(t2);
  return out;
}

CF cpow_ui(const CF& base, unsigned long e) {
  CF result(base.prec());
  result.set_ui(1);
  CF acc = base;
  while (e > 0) {
    if (e & 1) result = cmul(result, acc);
    acc = cmul(acc, acc);
    e >>= 1;
  }
  return result;
}

// j(tau) for the CM point of form (a, b, *): tau = (-b + sqrt(d)) / (2a),
// via j = E4^3 / Delta with q = exp(2*pi*i*tau).
CF eval_j(long a, long b, mpfr_srcptr pi, mpfr_srcptr sqrt_abs_d,
          mpfr_prec_t prec, long nterms) {
  mpfr_t mag, theta, qr, cs, sn;
  mpfr_init2(mag, prec);
  mpfr_init2(theta, prec);
  mpfr_init2(qr, prec);
  mpfr_init2(cs, prec);
  mpfr_init2(sn, prec);

  // |q| = exp(-pi*sqrt|d|/a), arg q = -pi*b/a
  mpfr_mul(mag, pi, sqrt_abs_d, R);
  mpfr_div_si(mag, mag, a, R);
  mpfr_neg(mag, mag, R);
  mpfr_exp(qr, mag, R);
  mpfr_mul_si(theta, pi, -b, R);
  mpfr_div_si(theta, theta, a, R);
  mpfr_sin_cos(sn, cs, theta, R);

  CF q(prec);
  mpfr_mul(q.re(), qr, cs, R);
  mpfr_mul(q.im(), qr, sn, R);

  CF qk = q;
  CF prod(prec), e4(prec), one(prec);
  prod.set_ui(1);
  e4.set_ui(1);
  one.set_ui(1);
  for (long k = 1; k <= nterms; ++k) {
    CF one_minus = csub(one, qk);
    prod = cmul(prod, one_minus);
    // 240 * k^3 * q^k / (1 - q^k)
    CF term = cdiv(qk, one_minus);
    unsigned long k3 = static_cast<unsigned long>(k) * k * k;
    mpfr_mul_ui(term.re(), term.re(), k3, R);
    mpfr_mul_ui(term.im(), term.im(), k3, R);
    mpfr_mul_ui(term.re(), term.re(), 240, R);
    mpfr_mul_ui(term.im(), term.im(), 240, R);
    e4 = cadd(e4, term);
    qk = cmul(qk, q);
  }
  CF delta = cmul(q, cpow_ui(prod, 24));
  CF j = cdiv(cpow_ui(e4, 3), delta);

  mpfr_clear(mag);
  mpfr_clear(theta);
  mpfr_clear(qr);
  mpfr_clear(cs);
  mpfr_clear(sn);
  return j;
}

// Round to the nearest integer; false when the distance is not clearly
// under 1/4 (ambiguous at this precision).
bool round_to_int(mpfr_srcptr v, Int& out) {
  mpfr_t diff;
  mpfr_init2(diff, mpfr_get_prec(v));
  mpfr_get_z(out.get_mpz_t(), v, R);
  mpfr_sub_z(diff, v, out.get_mpz_t(), R);
  mpfr_abs(diff, diff, R);
  bool ok = mpfr_cmp_d(diff, 0.25) < 0;
  mpfr_clear(diff);
  return ok;
}

}  // namespace

long class_polynomial_precision_estimate(long d) {
  auto forms = reduced_forms(d);
  double sum_inv_a = 0;
  for (const auto& f : forms) sum_inv_a += 1.0 / static_cast<double>(f.a);
  double digits = 3.1415926535898 * std::sqrt(static_cast<double>(-d)) *
                  sum_inv_a / std::log(10.0);
  return 20 + static_cast<long>(std::ceil(digits)) +
         static_cast<long>(forms.size());
}

std::optional<std::vector<Int>> compute_class_polynomial(long d,
                                                         long precision_digits) {
  auto forms = reduced_forms(d);
  if (forms.empty()) throw std::invalid_argument("compute_class_polynomial: no forms");
  const mpfr_prec_t prec =
      static_cast<mpfr_prec_t>(precision_digits * 3.3219281) + 64;

  mpfr_t pi, sqrt_abs_d;
  mpfr_init2(pi, prec);
  mpfr_init2(sqrt_abs_d, prec);
  mpfr_const_pi(pi, R);
  mpfr_sqrt_ui(sqrt_abs_d, static_cast<unsigned long>(-d), R);

  // Polynomial product prod (x - j_i), coefficients ascending.
  std::vector<CF> coeffs;
  coeffs.emplace_back(prec);
  coeffs.back().set_ui(1);
  const double log2_of_q_decay = 3.1415926535898 * std::sqrt(-(double)d) /
                                 std::log(2.0);
  for (const auto& form : forms) {
    long nterms = static_cast<long>((static_cast<double>(prec) + 64.0) *
                                    form.a / log2_of_q_decay) +
                  16;
    CF j = eval_j(form.a, form.b, pi, sqrt_abs_d, prec, nterms);
    std::vector<CF> next;
    next.reserve(coeffs.size() + 1);
    for (size_t k = 0; k <= coeffs.size(); ++k) {
      CF v(prec);
      if (k < coeffs.size()) v = cmul(j, coeffs[k]);
      mpfr_neg(v.re(), v.re(), R);
      mpfr_neg(v.im(), v.im(), R);
      if (k > 0) v = cadd(v, coeffs[k - 1]);
      next.push_back(v);
    }
    coeffs = std::move(next);
  }
  mpfr_clear(pi);
  mpfr_clear(sqrt_abs_d);

  std::vector<Int> out(coeffs.size());
  for (size_t k = 0; k < coeffs.size(); ++k) {
    mpfr_t imabs;
    mpfr_init2(imabs, prec);
    mpfr_abs(imabs, coeffs[k].im(), R);
    bool im_ok = mpfr_cmp_d(imabs, 0.25) < 0;
    mpfr_clear(imabs);
    if (!im_ok || !round_to_int(coeffs[k].re(), out[k])) return std::nullopt;
  }
  if (out.back() != 1) return std::nullopt;
  return out;
}

std::vector<Int> class_polynomial(long d) {
  long digits = class_polynomial_precision_estimate(d);
  for (int attempt = 0; attempt < 6; ++attempt) {
    auto poly = compute_class_polynomial(d, digits);
    if (poly) return *poly;
    digits *= 2;
  }
  throw std::runtime_error("class_polynomial: rounding failed for d = " +
                           std::to_string(d));
}

DiscriminantRecord make_record(long d) {
  DiscriminantRecord rec;
  rec.d = d;
  Int m = -Int(d);
  for (std::uint32_t p : small_primes()) {
    if (Int(p) * p > m) break;
    int e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      ++e;
    }
    if (e) rec.abs_factors.emplace_back(Int(p), e);
  }
  if (m > 1) rec.abs_factors.emplace_back(m, 1);
  rec.class_number = class_number(d);
  rec.class_poly = class_polynomial(d);
  return rec;
}

std::vector<DiscriminantRecord> generate_records(const TableGenOptions& opt,
                                                 void (*progress)(long d,
                                                                  int h)) {
  std::vector<DiscriminantRecord> recs;
  for (long d = -7; d >= -opt.dmax; --d) {
    if (!is_fundamental(Int(d))) continue;
    int h = class_number(d);
    bool keep = (-d <= opt.full_below) ? (h <= opt.hcap) : (h <= opt.hmax);
    if (!keep) continue;
    if (progress) progress(d, h);
    recs.push_back(make_record(d));
  }
  return recs;
}

}  // namespace pascal_ecpp
