#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "jetinv/cli/job.hpp"
#include "jetinv/cli/verify.hpp"
#include "jetinv/errors.hpp"
#include "jetinv/signature/equivalence.hpp"
#include "jetinv/signature/signature.hpp"

using namespace jetinv;

namespace {

constexpr int kInputError = 3;

int cmd_verify(const std::string& suite) {
  auto results = run_suite(suite);
  int counted = 0, passed = 0;
  for (const auto& r : results) {
    const char* mark = r.pass ? "PASS" : "FAIL";
    std::cout << (r.counted ? "" : "  info ") << mark << "  [" << r.suite << "] " << r.name << "  ("
              << std::fixed << std::setprecision(2) << r.seconds << "s)";
    if (!r.detail.empty()) std::cout << "  " << r.detail;
    std::cout << '\n';
    if (r.counted) {
      ++counted;
      passed += r.pass;
    }
  }
  std::cout << passed << "/" << counted << " passed\n";
  return passed == counted ? 0 : 1;
}

int cmd_signature(const std::string& job_path, const std::string& out_path) {
  Job job = load_job(job_path);
  SignatureMap map(job.section);
  auto sample = sample_signature(map, job.box, job.grid, job.tau);
  std::cerr << sample.points.size() << "/" << sample.total << " regular points\n";
  for (const auto& [reason, n] : sample.vanishing) std::cerr << "  " << reason << ": " << n << '\n';
  if (sample.points.empty()) {
    std::cerr << "error: no regular points in the box\n";
    return kInputError;
  }
  std::string lines = sample_to_jsonl(sample);
  if (out_path.empty() || out_path == "-") {
    std::cout << lines;
  } else {
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write " + out_path);
    out << lines;
  }
  return 0;
}

int cmd_equiv(const std::string& a_path, const std::string& b_path, double tol) {
  Job a = load_job(a_path), b = load_job(b_path);
  if (a.section.bundle != b.section.bundle) throw InputError("jobs are over different bundles");
  SignatureMap ma(a.section), mb(b.section);
  auto sa = sample_signature(ma, a.box, a.grid, a.tau);
  auto sb = sample_signature(mb, b.box, b.grid, b.tau);
  EquivOptions o;
  o.tol = tol;
  o.tau_sing = a.tau;
  auto v = decide_equivalence({&ma, a.box, &sa}, {&mb, b.box, &sb}, o);
  std::cout << verdict_to_json(v) << '\n';
  switch (v.verdict) {
    case Verdict::equivalent: return 0;
    case Verdict::not_equivalent: return 1;
    default: return 2;
  }
}

int cmd_reduce(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  auto r = reduce(ss.str());
  std::cout << reduce_to_json(r) << '\n';
  return r.normalized ? 0 : kInputError;
}

int cmd_germ(const std::string& job_path, const std::array<double, 3>& q) {
  Job job = load_job(job_path);
  SignatureMap map(job.section);
  auto g = regular_germ_check(map, q, job.tau);
  std::cout << "orbit regular: " << (g.orbit_regular ? "yes" : "no") << '\n';
  for (const auto& v : g.vanishing) std::cout << "  vanishing: " << v << '\n';
  std::cout << "rank: " << g.rank << "\nsingular values:";
  for (double s : g.singular_values) std::cout << ' ' << s;
  std::cout << "\nchart:";
  for (int i : g.chart) std::cout << ' ' << map.names()[i];
  std::cout << "  (sigma " << g.chart_sigma << ")\n";
  return g.orbit_regular && g.rank == 3 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SL3 differential invariants of curve families and second order ODEs"};
  app.require_subcommand(1);

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "check the invariant identities");
  verify->add_option("--suite", suite, "all, weights, absolute, generators, derivations, "
                                       "commutators, syzygies or determinants");

  std::string job_path, out_path;
  auto* signature = app.add_subcommand("signature", "sample the signature of a job");
  signature->add_option("job", job_path)->required();
  signature->add_option("-o,--output", out_path, "JSON lines output (default stdout)");

  std::string a_path, b_path;
  double tol = 1e-6;
  auto* equiv = app.add_subcommand("equiv", "compare the signatures of two jobs");
  equiv->add_option("a", a_path)->required();
  equiv->add_option("b", b_path)->required();
  equiv->add_option("--tol", tol, "relative match tolerance");

  std::string ode_path;
  auto* reduce_cmd = app.add_subcommand("reduce", "reduce a cubic ODE to a curve family job");
  reduce_cmd->add_option("input", ode_path)->required();

  std::string germ_job;
  std::array<double, 3> q{};
  auto* germ = app.add_subcommand("germ", "regular-germ conditions at a point");
  germ->add_option("job", germ_job)->required();
  germ->add_option("point", q, "x y p")->required()->expected(3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*verify) return cmd_verify(suite);
    if (*signature) return cmd_signature(job_path, out_path);
    if (*equiv) return cmd_equiv(a_path, b_path, tol);
    if (*reduce_cmd) return cmd_reduce(ode_path);
    if (*germ) return cmd_germ(germ_job, q);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return 0;
}
