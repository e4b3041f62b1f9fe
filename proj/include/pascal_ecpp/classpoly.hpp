#pragma once

#include <optional>
#include <vector>

#include "pascal_ecpp/cm.hpp"

namespace pascal_ecpp {

// Reduced primitive quadratic form (a, b, c), b^2 - 4ac = d.
struct QuadForm {
  long a, b, c;
};

std::vector<QuadForm> reduced_forms(long d);
int class_number(long d);

// Hilbert class polynomial by evaluating j at each form's CM point with the
// q-series (E4^3 / Delta) at the given working precision, expanding the
// product and rounding to integers. nullopt when rounding is ambiguous at
// that precision; the caller retries with more.
std::optional<std::vector<Int>> compute_class_polynomial(long d,
                                                         long precision_digits);

long class_polynomial_precision_estimate(long d);

// Auto-precision wrapper: estimate, then double until rounding is clean.
std::vector<Int> class_polynomial(long d);

// Full record: |d| factorization, class number, polynomial (ascending).
DiscriminantRecord make_record(long d);

struct TableGenOptions {
  long dmax = 20000;
  int hmax = 12;
  long full_below = 1200;  // bundle every fundamental d with |d| <= this
  int hcap = 50;           // absolute class-number cap
};

std::vector<DiscriminantRecord> generate_records(
    const TableGenOptions& opt, void (*progress)(long d, int h) = nullptr);

}  // namespace pascal_ecpp
