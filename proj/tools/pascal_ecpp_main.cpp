// Command-line front end: triangle scans, ECPP proving, certificate
// verification, and discriminant-table maintenance.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pascal_ecpp/certificate.hpp"
#include "pascal_ecpp/classpoly.hpp"
#include "pascal_ecpp/cm.hpp"
#include "pascal_ecpp/ecpp.hpp"
#include "pascal_ecpp/triangle.hpp"

namespace {

using namespace pascal_ecpp;
using Clock = std::chrono::steady_clock;

struct PhaseTimer {
  std::vector<std::pair<std::string, long>> phases;
  Clock::time_point mark = Clock::now();
  void lap(const std::string& name) {
    auto now = Clock::now();
    phases.emplace_back(
        name,
        std::chrono::duration_cast<std::chrono::milliseconds>(now - mark)
            .count());
    mark = now;
  }
};

void print_report(const std::string& command, const std::string& inputs,
                  const PhaseTimer& timer, const std::string& outcome,
                  const std::vector<std::string>& outputs) {
  std::cout << "report: command=" << command << " input=" << inputs
            << " outcome=" << outcome << '\n';
  for (const auto& [name, ms] : timer.phases)
    std::cout << "report: phase " << name << ' ' << ms << " ms\n";
  for (const auto& path : outputs) std::cout << "report: output " << path << '\n';
}

std::string tables_path(const std::string& override_path) {
  if (!override_path.empty()) return override_path;
  if (const char* env = std::getenv("PASCAL_ECPP_TABLES")) return env;
  return PASCAL_ECPP_DEFAULT_TABLES;
}

Int read_input_number(const std::string& arg) {
  std::string digits = arg;
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw std::runtime_error("cannot open " + arg.substr(1));
    std::ostringstream buf;
    buf << in.rdbuf();
    digits.clear();
    for (char ch : buf.str())
      if (!std::isspace(static_cast<unsigned char>(ch))) digits.push_back(ch);
  }
  if (digits.empty()) throw std::runtime_error("empty number");
  for (char ch : digits)
    if (ch < '0' || ch > '9')
      throw std::runtime_error("number must be decimal digits");
  return Int(digits);
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  return file;
}

std::string format_factored(const FactoredInteger& f) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [p, e] : f.factors) {
    if (!first) out << " * ";
    first = false;
    out << p.get_str();
    if (e > 1) out << '^' << e;
  }
  if (f.cofactor != 1 || first) {
    if (!first) out << " * ";
    out << f.cofactor.get_str();
    if (f.cofactor != 1)
      out << (f.cofactor_is_prp ? " [prp]" : " [composite]");
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized Pascal triangles and elliptic curve primality proving"};
  app.require_subcommand(1);

  // ---- triangle ----
  auto* tri = app.add_subcommand("triangle", "triangle generation and scans");
  tri->require_subcommand(1);
  std::string base_str = "112";
  long max_row = 100;
  long row = 0;
  std::vector<std::string> primes;
  std::vector<std::string> divisors = {"2", "3", "5", "7"};
  std::uint32_t bound = 1000000;
  int effort = 1;
  int prp_bases = 20;
  std::string out_path;

  auto* rows_cmd = tri->add_subcommand("rows", "print rows 0..max-row");
  rows_cmd->add_option("--base", base_str, "digit base")->capture_default_str();
  rows_cmd->add_option("--max-row", max_row, "last row")->capture_default_str();
  rows_cmd->add_option("--out", out_path, "output file (default stdout)");

  auto* center_cmd = tri->add_subcommand("center", "center element of one row");
  center_cmd->add_option("--base", base_str, "digit base")->capture_default_str();
  center_cmd->add_option("--row", row, "row index")->required();

  auto* hunt_cmd = tri->add_subcommand("hunt", "center elements that are probable primes");
  hunt_cmd->add_option("--base", base_str, "digit base")->capture_default_str();
  hunt_cmd->add_option("--max-row", max_row, "last row")->capture_default_str();
  hunt_cmd->add_option("--prp-bases", prp_bases, "Miller-Rabin bases")->capture_default_str();
  hunt_cmd->add_option("--out", out_path, "output file (default stdout)");

  auto* ff_cmd = tri->add_subcommand("first-factor", "first row with p dividing an interior element");
  ff_cmd->add_option("--base", base_str, "digit base")->capture_default_str();
  ff_cmd->add_option("--prime", primes, "prime to scan for (repeatable)")->required();
  ff_cmd->add_option("--max-row", max_row, "scan limit")->capture_default_str();
  ff_cmd->add_option("--out", out_path, "output file (default stdout)");

  auto* ef_cmd = tri->add_subcommand("easy-factor", "bounded factorization of a center element");
  ef_cmd->add_option("--base", base_str, "digit base")->capture_default_str();
  ef_cmd->add_option("--row", row, "row index")->required();
  ef_cmd->add_option("--bound", bound, "trial-division bound")->capture_default_str();
  ef_cmd->add_option("--effort", effort, "0=trial only, 1=+rho 1e5, 2=+rho 1e7")->capture_default_str();
  ef_cmd->add_option("--out", out_path, "output file (default stdout)");

  auto* stats_cmd = tri->add_subcommand("stats", "center divisibility frequencies");
  stats_cmd->add_option("--base", base_str, "digit base")->capture_default_str();
  stats_cmd->add_option("--max-row", max_row, "last row")->capture_default_str();
  stats_cmd->add_option("--divisor", divisors, "divisor (repeatable)")->capture_default_str();
  stats_cmd->add_option("--out", out_path, "output file (default stdout)");

  // ---- prove ----
  std::string number_arg;
  std::string cert_path;
  std::string tables_override;
  unsigned long seed = 0;
  std::string threshold_str = "1000000000";
  std::string dmax_str = "0";
  std::uint32_t smooth = 0;
  long s_limit = 1000;
  int jobs = 1;
  bool quiet = false;
  auto* prove_cmd = app.add_subcommand("prove", "prove primality, emit a certificate");
  prove_cmd->add_option("number", number_arg, "decimal number or @file")->required();
  prove_cmd->add_option("--cert", cert_path, "certificate output path");
  prove_cmd->add_option("--seed", seed, "root seed for all randomized choices")->capture_default_str();
  prove_cmd->add_option("--threshold", threshold_str, "trial-division threshold")->capture_default_str();
  prove_cmd->add_option("--dmax", dmax_str, "cap on |D| (0 = whole table)")->capture_default_str();
  prove_cmd->add_option("--smooth", smooth, "factoring bound B (0 = adaptive)")->capture_default_str();
  prove_cmd->add_option("--slimit", s_limit, "max prime factor of |D| (S)")->capture_default_str();
  prove_cmd->add_option("--effort", effort, "factoring effort level")->capture_default_str();
  prove_cmd->add_option("--jobs", jobs, "parallel discriminant scans")->capture_default_str();
  prove_cmd->add_option("--tables", tables_override, "discriminant table path");
  prove_cmd->add_flag("--quiet", quiet, "suppress progress log");

  // ---- verify ----
  std::string verify_path;
  std::string base_limit_str = "1099511627776";  // 2^40
  auto* verify_cmd = app.add_subcommand("verify", "check a certificate");
  verify_cmd->add_option("certificate", verify_path, "certificate file")->required();
  verify_cmd->add_option("--base-limit", base_limit_str,
                         "largest base prime the verifier will trial-divide")
      ->capture_default_str();

  // ---- tables ----
  auto* tables_cmd = app.add_subcommand("tables", "discriminant table maintenance");
  tables_cmd->require_subcommand(1);
  auto* gen_cmd = tables_cmd->add_subcommand("gen", "regenerate the table");
  long gen_dmax = 20000;
  int gen_hmax = 12;
  long gen_full_below = 1200;
  std::string gen_out = "data/discriminants.txt";
  bool gen_progress = false;
  gen_cmd->add_option("--dmax", gen_dmax, "largest |D|")->capture_default_str();
  gen_cmd->add_option("--hmax", gen_hmax, "class-number cap above --full-below")->capture_default_str();
  gen_cmd->add_option("--full-below", gen_full_below, "keep every fundamental |D| up to this")->capture_default_str();
  gen_cmd->add_option("--out", gen_out, "output path")->capture_default_str();
  gen_cmd->add_flag("--progress", gen_progress, "log each discriminant");

  CLI11_PARSE(app, argc, argv);

  try {
    PhaseTimer timer;

    if (rows_cmd->parsed()) {
      TriangleBase base(base_str);
      std::ofstream file;
      std::ostream& out = open_out(file, out_path);
      TriangleRow r = triangle_row0();
      for (long n = 0; n <= max_row; ++n) {
        if (n > 0) r = next_row(base, r);
        out << n << ':';
        for (const Int& e : r.coeffs) out << ' ' << e.get_str();
        out << '\n';
      }
      timer.lap("rows");
      print_report("triangle rows", base_str, timer, "ok",
                   out_path.empty() ? std::vector<std::string>{}
                                    : std::vector<std::string>{out_path});
      return 0;
    }

    if (center_cmd->parsed()) {
      TriangleBase base(base_str);
      std::cout << center(base, row).get_str() << '\n';
      timer.lap("center");
      print_report("triangle center", base_str + " row " + std::to_string(row),
                   timer, "ok", {});
      return 0;
    }

    if (hunt_cmd->parsed()) {
      TriangleBase base(base_str);
      std::ofstream file;
      std::ostream& out = open_out(file, out_path);
      auto hits = hunt_center_primes(base, max_row, prp_bases);
      for (const auto& h : hits)
        out << h.row << ", " << h.row << " & " << h.value.get_str() << " ("
            << h.digit_count << " digits)\n";
      timer.lap("hunt");
      print_report("triangle hunt",
                   base_str + " to row " + std::to_string(max_row), timer, "ok",
                   out_path.empty() ? std::vector<std::string>{}
                                    : std::vector<std::string>{out_path});
      return 0;
    }

    if (ff_cmd->parsed()) {
      TriangleBase base(base_str);
      std::ofstream file;
      std::ostream& out = open_out(file, out_path);
      for (const std::string& pstr : primes) {
        Int p(pstr);
        auto found = first_factor_row(base, p, max_row);
        if (found)
          out << p.get_str() << " -> " << *found << '\n';
        else
          out << p.get_str() << " -> not found up to row " << max_row << '\n';
      }
      timer.lap("scan");
      print_report("triangle first-factor", base_str, timer, "ok", {});
      return 0;
    }

    if (ef_cmd->parsed()) {
      TriangleBase base(base_str);
      std::ofstream file;
      std::ostream& out = open_out(file, out_path);
      FactoredInteger f = easy_factor_center(base, row, bound, effort);
      out << "E(" << row << "," << row << ") = " << format_factored(f) << '\n';
      if (f.cofactor != 1)
        out << "cofactor digits: " << decimal_digits(f.cofactor) << '\n';
      timer.lap("factor");
      print_report("triangle easy-factor",
                   base_str + " row " + std::to_string(row), timer, "ok",
                   out_path.empty() ? std::vector<std::string>{}
                                    : std::vector<std::string>{out_path});
      return 0;
    }

    if (stats_cmd->parsed()) {
      TriangleBase base(base_str);
      std::ofstream file;
      std::ostream& out = open_out(file, out_path);
      std::vector<Int> ds;
      for (const auto& d : divisors) ds.emplace_back(d);
      auto stats = center_divisibility_stats(base, max_row, ds);
      for (const auto& st : stats)
        out << st.divisor.get_str() << ": " << st.hits << '/' << st.rows
            << " = " << (static_cast<double>(st.hits) / st.rows) << '\n';
      timer.lap("stats");
      print_report("triangle stats", base_str, timer, "ok", {});
      return 0;
    }

    if (prove_cmd->parsed()) {
      Int n = read_input_number(number_arg);
      ProofConfig cfg;
      cfg.seed = seed;
      cfg.small_prime_threshold = Int(threshold_str);
      cfg.discriminant_limit = Int(dmax_str);
      cfg.smooth_bound = smooth;
      cfg.discriminant_prime_limit = s_limit;
      cfg.factor_effort = effort;
      cfg.jobs = jobs;
      if (!quiet)
        cfg.log = [](const std::string& line) { std::cerr << line << '\n'; };
      timer.lap("setup");

      // Below the threshold there is no downrun: trial division decides.
      if (n <= cfg.small_prime_threshold) {
        bool prime = trial_division_prime(n);
        timer.lap("trial-division");
        print_report("prove", n.get_str(), timer, prime ? "ok" : "composite",
                     {});
        if (prime) {
          std::cout << n.get_str() << " is prime (trial division; no certificate needed)\n";
          return 0;
        }
        std::cout << n.get_str() << " is composite\n";
        return 2;
      }

      DiscriminantTable table = DiscriminantTable::load(tables_path(tables_override));
      timer.lap("load-tables");
      ProveResult res = prove(n, cfg, table);
      timer.lap("downrun");

      if (res.status == ProveResult::Status::Composite) {
        print_report("prove", n.get_str(), timer, "composite", {});
        std::cout << n.get_str() << " is composite (witness "
                  << res.witness.get_str() << ")\n";
        return 2;
      }
      if (res.status == ProveResult::Status::Stuck) {
        print_report("prove", n.get_str(), timer, "stuck", {});
        std::cout << "stuck: discriminants exhausted at the configured limits\n";
        return 3;
      }
      std::string text = emit(res.cert);
      std::vector<std::string> outputs;
      if (!cert_path.empty()) {
        std::ofstream out(cert_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + cert_path);
        out << text;
        outputs.push_back(cert_path);
      } else {
        std::cout << text;
      }
      timer.lap("emit");
      print_report("prove", n.get_str(), timer, "ok", outputs);
      std::cout << n.get_str() << " is prime (" << res.cert.steps.size()
                << " certificate steps)\n";
      return 0;
    }

    if (verify_cmd->parsed()) {
      std::ifstream in(verify_path, std::ios::binary);
      if (!in) throw std::runtime_error("cannot open " + verify_path);
      std::ostringstream buf;
      buf << in.rdbuf();
      Certificate cert;
      try {
        cert = parse(buf.str());
      } catch (const std::runtime_error& err) {
        std::cerr << err.what() << '\n';
        return 1;
      }
      timer.lap("parse");
      VerifyOptions vopt;
      vopt.base_prime_limit = Int(base_limit_str);
      VerifyResult res = verify(cert, vopt);
      timer.lap("verify");
      print_report("verify", verify_path, timer,
                   res.accepted ? "ok" : "error", {});
      if (!res.accepted) {
        std::cerr << "rejected at step " << res.step << ": " << res.reason
                  << '\n';
        return 1;
      }
      std::cout << "accepted: " << cert.n.get_str() << " is prime\n";
      return 0;
    }

    if (gen_cmd->parsed()) {
      TableGenOptions opt;
      opt.dmax = gen_dmax;
      opt.hmax = gen_hmax;
      opt.full_below = gen_full_below;
      auto progress = +[](long d, int h) {
        std::cerr << "D=" << d << " h=" << h << '\n';
      };
      auto recs = generate_records(opt, gen_progress ? progress : nullptr);
      DiscriminantTable table = DiscriminantTable::from_records(std::move(recs));
      table.save(gen_out);
      timer.lap("generate");
      print_report("tables gen", std::to_string(gen_dmax), timer, "ok",
                   {gen_out});
      std::cout << table.size() << " discriminants written to " << gen_out
                << '\n';
      return 0;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 1;
}
