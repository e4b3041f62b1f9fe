#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "pascal_ecpp/ecpp.hpp"
#include "test_util.hpp"

using namespace pascal_ecpp;

namespace {

ProofConfig lowered_threshold_config(unsigned long seed = 0) {
  ProofConfig cfg;
  cfg.small_prime_threshold = Int(1) << 20;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("priority order: digits, then d_limit, then insertion") {
  NodePriority a{40, Int(5000), 0};
  NodePriority b{60, Int(5000), 1};
  CHECK(a < b);

  NodePriority c{40, Int(1000), 2};
  NodePriority d{40, Int(100000), 3};
  CHECK(c < d);

  NodePriority e{40, Int(5000), 4};
  NodePriority f{40, Int(5000), 5};
  CHECK(e < f);

  // raising the window demotes a node relative to an equal-digit sibling
  GraphNode n1;
  n1.digits = 40;
  n1.d_limit = 5000;
  n1.insert_index = 1;
  GraphNode n2 = n1;
  n2.insert_index = 0;
  CHECK(priority(n2) < priority(n1));
  n2.d_limit = 20000;
  CHECK(priority(n1) < priority(n2));
}

TEST_CASE("the line-7 bound rejects small cofactor primes") {
  // orders of 29 under d = -7: trace 2 gives {28, 32}; 28 = 2^2 * 7 and
  // 7 is far below (29^(1/4)+1)^2.
  auto uv = cornacchia(Int(-7), Int(29));
  REQUIRE(uv.has_value());
  CHECK(uv->first == 2);
  CHECK(Int(28) == 29 + 1 - uv->first);
  CHECK(Int(32) == 29 + 1 + uv->first);
  CHECK(fourth_root_bound(29) == 16);
  CHECK(Int(7) <= fourth_root_bound(29));
}

TEST_CASE("atkin_step refuses nodes at or below the threshold") {
  const DiscriminantTable& table = testutil::bundled_table();
  auto view = table.admissible(1000);
  ProofConfig cfg = lowered_threshold_config();
  GraphNode node;
  node.s = 29;
  node.digits = 2;
  node.d_limit = 5000;
  CHECK_THROWS_AS(atkin_step(node, cfg, table, view), std::invalid_argument);
}

TEST_CASE("atkin_step collects qualifying edges") {
  const DiscriminantTable& table = testutil::bundled_table();
  auto view = table.admissible(1000);
  ProofConfig cfg = lowered_threshold_config();
  GraphNode node;
  node.s = Int("9232029156001");
  node.digits = decimal_digits(node.s);
  node.d_limit = 5000;
  AtkinStepResult res = atkin_step(node, cfg, table, view);
  REQUIRE(res.kind == AtkinStepResult::Kind::Candidates);
  CHECK_FALSE(res.candidates.empty());
  const Int bound = fourth_root_bound(node.s);
  Int hasse;
  mpz_sqrt(hasse.get_mpz_t(), node.s.get_mpz_t());
  for (const CandidateEdge& e : res.candidates) {
    CHECK(e.m == e.f.value * e.s_prime);
    CHECK(e.s_prime > bound);
    CHECK(e.f.value >= 2);
    CHECK(e.f.reassemble() == e.f.value);
    CHECK(is_probable_prime(e.s_prime));
    Int diff = e.m - (node.s + 1);
    if (diff < 0) diff = -diff;
    CHECK(diff <= 2 * hasse);
    CHECK(jacobi(e.d, node.s) == 1);
  }
}

TEST_CASE("build_curves_and_prove turns an edge into a checkable step") {
  const DiscriminantTable& table = testutil::bundled_table();
  auto view = table.admissible(1000);
  ProofConfig cfg = lowered_threshold_config(3);
  GraphNode node;
  node.s = Int("9232029156001");
  node.digits = decimal_digits(node.s);
  node.d_limit = 5000;
  AtkinStepResult res = atkin_step(node, cfg, table, view);
  REQUIRE(res.kind == AtkinStepResult::Kind::Candidates);

  Rng rng(17);
  int built = 0;
  for (const CandidateEdge& edge : res.candidates) {
    BuildOutcome out = build_curves_and_prove(edge, node.s,
                                              table.at(edge.record_index), cfg,
                                              rng);
    if (out.kind != BuildOutcome::Kind::Step) continue;
    ++built;
    // the step's own data must satisfy the verifier-side point conditions
    CurveSpec curve(node.s, out.step.a, out.step.b);
    CurvePoint p = CurvePoint::affine(out.step.x, out.step.y);
    CHECK(on_curve(p, curve));
    CurvePoint fp = scalar_mul(out.step.f.value, p, curve);
    CHECK_FALSE(fp.is_infinity());
    CHECK(scalar_mul(out.step.s, fp, curve).is_infinity());
  }
  CHECK(built > 0);
}

TEST_CASE("prove validates its preconditions") {
  const DiscriminantTable& table = testutil::bundled_table();
  ProofConfig cfg;
  cfg.small_prime_threshold = 1000;  // below 2^20
  CHECK_THROWS_AS(prove(Int("9232029156001"), cfg, table),
                  std::invalid_argument);
  ProofConfig cfg2;
  CHECK_THROWS_AS(prove(7, cfg2, table), std::invalid_argument);
}

TEST_CASE("prove rejects composites via the probable-prime gate") {
  const DiscriminantTable& table = testutil::bundled_table();
  ProofConfig cfg;
  ProveResult res = prove(Int("9232029156001") + 2, cfg, table);
  CHECK(res.status == ProveResult::Status::Composite);
  CHECK(res.witness != 0);
}

TEST_CASE("prove produces a verifying certificate for the Fig 2 prime") {
  const DiscriminantTable& table = testutil::bundled_table();
  ProofConfig cfg;
  cfg.seed = 1;
  ProveResult res = prove(Int("9232029156001"), cfg, table);
  REQUIRE(res.status == ProveResult::Status::Proved);
  CHECK(res.cert.n == Int("9232029156001"));
  CHECK(res.cert.steps.front().s <= cfg.small_prime_threshold);
  CHECK(verify(res.cert).accepted);
}

TEST_CASE("certificates are byte-identical under a fixed seed") {
  const DiscriminantTable& table = testutil::bundled_table();
  Int n("10000000000000061");  // 17-digit prime
  ProofConfig cfg;
  cfg.seed = 12345;
  ProveResult a = prove(n, cfg, table);
  ProveResult b = prove(n, cfg, table);
  REQUIRE(a.status == ProveResult::Status::Proved);
  REQUIRE(b.status == ProveResult::Status::Proved);
  CHECK(emit(a.cert) == emit(b.cert));

  // a different seed still verifies
  ProofConfig cfg2;
  cfg2.seed = 999;
  ProveResult c = prove(n, cfg2, table);
  REQUIRE(c.status == ProveResult::Status::Proved);
  CHECK(verify(c.cert).accepted);

  // jobs > 1 must not change the bytes
  ProofConfig cfg_jobs = cfg;
  cfg_jobs.jobs = 4;
  ProveResult d = prove(n, cfg_jobs, table);
  REQUIRE(d.status == ProveResult::Status::Proved);
  CHECK(emit(d.cert) == emit(a.cert));
}

TEST_CASE("a slice of small primes just above 2^21 proves and verifies") {
  const DiscriminantTable& table = testutil::bundled_table();
  const long lo = 1 << 21;
  ProofConfig cfg = lowered_threshold_config(2);
  int proved = 0;
  for (long n = lo + 1; n < lo + 200; n += 2) {
    if (!trial_division_prime(Int(n))) continue;
    ProveResult res = prove(Int(n), cfg, table);
    REQUIRE_MESSAGE(res.status == ProveResult::Status::Proved, "n=", n);
    CHECK(verify(res.cert).accepted);
    ++proved;
  }
  CHECK(proved > 5);
}

TEST_CASE("exhaustion escalates and finally reports stuck") {
  const DiscriminantTable& table = testutil::bundled_table();
  ProofConfig cfg = lowered_threshold_config();
  cfg.discriminant_limit = 8;  // only -7 and -8 available
  cfg.initial_d_limit = 7;
  // With such a thin table most primes cannot be chained; accept either a
  // lucky proof or a stuck report, but never an exception or a bad cert.
  int stuck = 0, proved = 0;
  for (long n : {2097169L, 2097211L, 2097223L}) {
    ProveResult res = prove(Int(n), cfg, table);
    if (res.status == ProveResult::Status::Proved) {
      CHECK(verify(res.cert).accepted);
      ++proved;
    } else {
      CHECK(res.status == ProveResult::Status::Stuck);
      ++stuck;
    }
  }
  CHECK(stuck + proved == 3);
}
