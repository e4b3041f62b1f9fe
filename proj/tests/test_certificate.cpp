#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "pascal_ecpp/certificate.hpp"
#include "pascal_ecpp/ecpp.hpp"
#include "test_util.hpp"

using namespace pascal_ecpp;

namespace {

FactoredInteger factored(const Int& value,
                         std::vector<std::pair<Int, int>> factors) {
  FactoredInteger f;
  f.value = value;
  f.factors = std::move(factors);
  f.cofactor = 1;
  return f;
}

// A structurally valid certificate (the values are arbitrary residues; only
// emit/parse care about it).
Certificate sample_cert() {
  Certificate cert;
  cert.n = Int("9232029156001");
  CertStep st;
  st.index = 1;
  st.s = Int("1077139");
  st.a = Int("123456");
  st.b = Int("654321");
  st.x = Int("11111");
  st.y = Int("22222");
  st.f = factored(Int(12), {{Int(2), 2}, {Int(3), 1}});
  cert.steps.push_back(st);
  st.index = 2;
  st.s = Int("123457");
  st.f = factored(Int(1047222),
                  {{Int(2), 1}, {Int(3), 3}, {Int(11), 1}, {Int(41), 1}, {Int(43), 1}});
  cert.steps.push_back(st);
  return cert;
}

const ProveResult& proved_9232029156001() {
  static const ProveResult res = [] {
    ProofConfig cfg;
    cfg.seed = 5;
    return prove(Int("9232029156001"), cfg, testutil::bundled_table());
  }();
  return res;
}

}  // namespace

TEST_CASE("emit format and byte-exact round trip") {
  Certificate cert = sample_cert();
  std::string text = emit(cert);
  CHECK(text.substr(0, 13) == "ECPP-CERT v1\n");
  CHECK(text.find("N 9232029156001\n") != std::string::npos);
  CHECK(text.find("1;1077139;123456;654321;11111;22222;f=12=2^2*3^1\n") !=
        std::string::npos);
  Certificate back = parse(text);
  CHECK(back == cert);
  CHECK(emit(back) == text);
}

TEST_CASE("emit rejects degenerate certificates") {
  Certificate empty;
  empty.n = 17;
  CHECK_THROWS_AS(emit(empty), std::invalid_argument);

  Certificate bad = sample_cert();
  bad.steps[0].f.value = 13;  // product mismatch
  CHECK_THROWS_AS(emit(bad), std::invalid_argument);

  Certificate unordered = sample_cert();
  unordered.steps[1].index = 5;
  CHECK_THROWS_AS(emit(unordered), std::invalid_argument);
}

TEST_CASE("parse rejects malformed documents with positions") {
  CHECK_THROWS_AS(parse(""), cert_syntax_error);
  CHECK_THROWS_AS(parse("ECPP-CERT v2\n"), cert_syntax_error);
  CHECK_THROWS_AS(parse("ECPP-CERT v1\nN 17\n1;2;3;4;5;6\n"), cert_syntax_error);
  CHECK_THROWS_AS(parse("ECPP-CERT v1\nN 17"), cert_syntax_error);  // no newline
  CHECK_THROWS_AS(parse("ECPP-CERT v1\nN 017\n"), cert_syntax_error);
  // factor product mismatch is an invariant error, not a syntax error
  std::string bad =
      "ECPP-CERT v1\nN 17\n1;5;0;1;2;3;f=12=2^1*3^1\n";
  CHECK_THROWS_AS(parse(bad), cert_invariant_error);
  // truncated document: the step lines must parse as full records
  std::string truncated = "ECPP-CERT v1\nN 17\n1;5;0;1;2\n";
  CHECK_THROWS_AS(parse(truncated), cert_syntax_error);
  // out-of-order factors
  std::string unsorted =
      "ECPP-CERT v1\nN 17\n1;5;0;1;2;3;f=6=3^1*2^1\n";
  CHECK_THROWS_AS(parse(unsorted), cert_invariant_error);
}

TEST_CASE("a produced certificate verifies and survives a round trip") {
  const ProveResult& res = proved_9232029156001();
  REQUIRE(res.status == ProveResult::Status::Proved);
  VerifyResult v = verify(res.cert);
  CHECK(v.accepted);
  CHECK(v.reason.empty());

  std::string text = emit(res.cert);
  Certificate back = parse(text);
  CHECK(back == res.cert);
  CHECK(verify(back).accepted);

  // the chain decreases from n down to the trial-division base
  Int prev = res.cert.n;
  for (size_t i = res.cert.steps.size(); i-- > 0;) {
    CHECK(res.cert.steps[i].s < prev);
    prev = res.cert.steps[i].s;
  }
}

TEST_CASE("single-field tampering is caught") {
  const ProveResult& res = proved_9232029156001();
  REQUIRE(res.status == ProveResult::Status::Proved);

  Certificate c1 = res.cert;
  c1.steps[0].y += 1;
  VerifyResult v1 = verify(c1);
  CHECK_FALSE(v1.accepted);
  CHECK(v1.step == 1);
  CHECK(v1.reason == "point not on curve");

  Certificate c2 = res.cert;
  c2.steps[0].s += 2;
  CHECK_FALSE(verify(c2).accepted);

  Certificate c3 = res.cert;
  c3.n += 2;
  CHECK_FALSE(verify(c3).accepted);

  Certificate c4 = res.cert;
  c4.steps.back().f.value *= 2;
  CHECK_FALSE(verify(c4).accepted);
}

TEST_CASE("table 1 row linkage satisfies the Hasse window") {
  // m1 = s1 * f1 must lie within 2*sqrt(s2) of s2 + 1.
  Int s1("165490139"), f1("1047222"), s2("173304931274467");
  Int m1 = s1 * f1;
  Int diff = m1 - (s2 + 1);
  if (diff < 0) diff = -diff;
  Int root;
  mpz_sqrt(root.get_mpz_t(), s2.get_mpz_t());
  CHECK(diff <= 2 * root);
  // and s1 clears the fourth-root bound of s2
  CHECK(s1 > fourth_root_bound(s2));
}

TEST_CASE("mutation drill on a small certificate") {
  const ProveResult& res = proved_9232029156001();
  REQUIRE(res.status == ProveResult::Status::Proved);
  const std::string text = emit(res.cert);
  Rng rng(99);
  int rejected = 0, trials = 120;
  for (int t = 0; t < trials; ++t) {
    // flip one digit somewhere in a value field
    std::string mutated = text;
    size_t pos;
    do {
      pos = rng.below(Int(static_cast<long>(mutated.size()))).get_ui();
    } while (!std::isdigit(static_cast<unsigned char>(mutated[pos])) ||
             pos < 13 /* keep the header intact */);
    char old = mutated[pos];
    char repl;
    do {
      repl = static_cast<char>('0' + rng.below(10).get_ui());
    } while (repl == old);
    mutated[pos] = repl;
    try {
      Certificate cert = parse(mutated);
      if (!verify(cert).accepted) ++rejected;
    } catch (const std::runtime_error&) {
      ++rejected;  // parse-level rejection counts
    }
  }
  CHECK(rejected == trials);
}
