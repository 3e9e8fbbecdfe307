#include "jetinv/cli/verify.hpp"

#include <chrono>
#include <sstream>

#include "jetinv/errors.hpp"
#include "jetinv/expr/linalg.hpp"
#include "jetinv/invariants/pi.hpp"
#include "jetinv/invariants/pitilde.hpp"
#include "jetinv/signature/parallel.hpp"

namespace jetinv {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"weights",     "absolute",    "generators",
                                                 "derivations", "commutators", "syzygies",
                                                 "determinants"};
  return names;
}

namespace {

using Job = std::function<CheckResult()>;

std::string tag(Bundle b) { return b == Bundle::pi ? "pi" : "pitilde"; }

const Catalog& catalog_of(Bundle b) { return b == Bundle::pi ? catalog_pi() : catalog_pitilde(); }

CheckResult make(std::string name, bool pass, std::string detail = {}, bool counted = true) {
  CheckResult r;
  r.name = std::move(name);
  r.pass = pass;
  r.detail = std::move(detail);
  r.counted = counted;
  return r;
}

void weights(std::vector<Job>& jobs) {
  for (Bundle b : {Bundle::pi, Bundle::pitilde}) {
    for (const auto* e : catalog_of(b).of_kind(InvariantKind::relative)) {
      jobs.push_back([b, e] {
        return make(tag(b) + "/" + e->name + " printed weight",
                    check_relative(e->expr, *e->weight, b));
      });
      if (e->corrected_weight) {
        jobs.push_back([b, e] {
          return make(tag(b) + "/" + e->name + " corrected weight",
                      check_relative(e->expr, *e->corrected_weight, b), "printed weight misses a term",
                      false);
        });
      }
    }
  }
}

void cocycles(std::vector<Job>& jobs) {
  for (Bundle b : {Bundle::pi, Bundle::pitilde}) {
    jobs.push_back([b] {
      const Catalog& c = catalog_of(b);
      bool ok = true;
      for (const auto* e : c.of_kind(InvariantKind::relative)) {
        ok = ok && check_weight_cocycle(c.verified_weight(e->name), b);
      }
      return make(tag(b) + " verified weights are cocycles", ok, {}, false);
    });
  }
  // control: a constant shift of a weight is not a cocycle
  jobs.push_back([] {
    Weight broken = catalog_pi().verified_weight("I0") + Expression(Rational(1));
    return make("pi/I0 weight + 1 is rejected", !check_weight_cocycle(broken, Bundle::pi), {}, false);
  });
}

void absolute(std::vector<Job>& jobs) {
  for (Bundle b : {Bundle::pi, Bundle::pitilde}) {
    const Catalog& c = catalog_of(b);
    for (const auto* e : c.of_kind(InvariantKind::absolute)) {
      jobs.push_back([b, e] {
        return make(tag(b) + "/" + e->name + " annihilated", check_absolute(e->expr, b));
      });
      jobs.push_back([b, e, &c] {
        return make(tag(b) + "/" + e->name + " weight balance", c.weight_balance(*e).is_zero(),
                    "from verified weights");
      });
      // the same balance from the printed weights alone
      jobs.push_back([b, e, &c] {
        Expression mu;
        for (const auto& [name, q] : e->factors) mu += Expression(q) * *c.entry(name).weight;
        return make(tag(b) + "/" + e->name + " weight balance (printed weights)", mu.is_zero(), {},
                    false);
      });
    }
  }
}

std::vector<Expression> monomials_of(const std::vector<Weight>& ws) {
  std::vector<Expression> out;
  std::vector<Monomial> seen;
  for (const auto& w : ws) {
    for (const auto& t : w.numerator().terms()) {
      if (std::find(seen.begin(), seen.end(), t.mono) != seen.end()) continue;
      seen.push_back(t.mono);
      out.emplace_back(Polynomial::monomial(t.mono, 1));
    }
  }
  return out;
}

/// Weights and generators have the same Q-span; `dim` receives its dimension.
bool same_span(const std::vector<Weight>& weights, const std::vector<Weight>& gens, int& dim) {
  auto all = weights;
  all.insert(all.end(), gens.begin(), gens.end());
  auto mono = monomials_of(all);
  RationalMatrix g;
  for (const auto& w : gens) g.push_back(*weight_coordinates(w, mono));
  dim = rank(g);
  return weights_in_span(weights, gens, mono) && weights_in_span(gens, weights, mono);
}

void generators(std::vector<Job>& jobs) {
  struct Claim {
    Bundle b;
    std::vector<const char*> gens;
    bool printed;
  };
  for (Claim claim : {Claim{Bundle::pi, {"I0", "I1", "L1", "L3"}, true},
                      Claim{Bundle::pi, {"I0", "I1", "L1", "L3"}, false},
                      Claim{Bundle::pitilde, {"I0", "I1"}, true}}) {
    jobs.push_back([claim] {
      const Catalog& c = catalog_of(claim.b);
      std::vector<Weight> ws, gs;
      for (const auto* e : c.of_kind(InvariantKind::relative)) {
        ws.push_back(claim.printed ? *e->weight : c.verified_weight(e->name));
      }
      std::string names;
      for (const char* n : claim.gens) {
        gs.push_back(claim.printed ? *c.entry(n).weight : c.verified_weight(n));
        names += names.empty() ? n : std::string(", ") + n;
      }
      int dim = 0;
      bool ok = same_span(ws, gs, dim);
      return make(tag(claim.b) + " weights span mu(" + names + ")" +
                      (claim.printed ? "" : " (verified weights)"),
                  ok, "span dimension " + std::to_string(dim), claim.printed);
    });
  }
}

void derivations(std::vector<Job>& jobs) {
  for (Bundle b : {Bundle::pi, Bundle::pitilde}) {
    for (int i = 0; i < 3; ++i) {
      jobs.push_back([b, i] {
        return make(tag(b) + "/nabla" + std::to_string(i + 1) + " invariant",
                    check_derivation_invariant(catalog_of(b).derivations()[i], b));
      });
    }
  }
}

void commutators(std::vector<Job>& jobs) {
  for (Bundle b : {Bundle::pi, Bundle::pitilde}) {
    auto rels = b == Bundle::pi ? commutator_relations_pi() : commutator_relations_pitilde();
    Chart chart = b == Bundle::pi ? positive_chart_pi() : positive_chart_pitilde();
    std::string chart_name = b == Bundle::pi ? "I1 > 0" : "I0 > 0, I1 > 0";
    for (const auto& r : rels) {
      jobs.push_back([b, r, chart, chart_name] {
        auto ok = check_commutators(catalog_of(b), {r}, chart)[0];
        std::ostringstream name;
        name << tag(b) << "/[nabla" << r.i << ", nabla" << r.j << "]";
        return make(name.str(), ok[0] && ok[1] && ok[2], "on the chart " + chart_name);
      });
    }
  }
}

std::string formal_text(const Expression& e) { return e.to_string(); }

void syzygies(std::vector<Job>& jobs) {
  auto printed = syzygies_formal();
  auto corrected = syzygies_corrected_formal();
  for (std::size_t k = 0; k < printed.size(); ++k) {
    jobs.push_back([k, printed] {
      bool ok = check_syzygies({printed[k]})[0];
      return make("syzygy " + std::to_string(k + 1), ok, formal_text(printed[k]));
    });
  }
  for (std::size_t k = 0; k < 3; ++k) {
    jobs.push_back([k, printed] {
      auto jac = syzygies_from_jacobi();
      auto c = proportionality(jac[k], printed[k]);
      return make("syzygy " + std::to_string(k + 1) + " follows from commutators + Jacobi",
                  c.has_value(), "Jacobi relation: " + formal_text(jac[k]));
    });
  }
  for (std::size_t k : {0, 2}) {
    jobs.push_back([k, corrected] {
      auto jac = syzygies_from_jacobi();
      bool ok = check_syzygies({corrected[k]})[0] && proportionality(jac[k], corrected[k]).has_value();
      return make("syzygy " + std::to_string(k + 1) + " in Jacobi form", ok, formal_text(corrected[k]),
                  false);
    });
  }
}

std::string det_detail(const DetReport& r) {
  std::ostringstream os;
  os << r.points << " points, " << r.plus << " equal, " << r.minus << " opposite, " << r.skipped
     << " skipped";
  return os.str();
}

void determinants(std::vector<Job>& jobs, const VerifyOptions& o) {
  int n = o.det_points;
  auto seed = o.seed;
  jobs.push_back([n, seed] {
    auto r = check_det_u12(n, seed, det_u12_formula());
    return make("det U12 = 2 I0^23 I1^14 (L1 L3 + L2 L4) / L1^23", r.plus == r.points && r.points == n,
                det_detail(r));
  });
  jobs.push_back([n, seed] {
    auto r = check_det_u12(n, seed, det_u12_formula_j());
    return make("det U12 = 2 I0^23 I1^12 (J2 + J1 J3) / L1^20", r.plus == r.points && r.points == n,
                det_detail(r));
  });
  jobs.push_back([n, seed] {
    auto r = check_det_u12(n, seed, det_u12_observed());
    return make("det U12 = 2 I0^26 I1^13 (L1 L3 + L2 L4) / L1^25", r.plus == r.points && r.points == n,
                det_detail(r), false);
  });
  jobs.push_back([n, seed] {
    auto r = check_det_u_w(n, seed);
    std::ostringstream os;
    os << r.points << " points, " << r.failures << " failures";
    return make("det U = -(L1^2 / (I0^4 I1)) det W", r.passed() && r.points == n, os.str());
  });
  jobs.push_back([n, seed] {
    auto r = check_det_u10(n, seed, det_u10_formula(), 1);
    return make("det U10 = -3^20 I0^30 / I1^25", r.plus == r.points && r.points == n,
                det_detail(r) + " on the chart I0 > 0, I1 > 0");
  });
  jobs.push_back([n, seed] {
    auto r = check_det_u10(n, seed, det_u10_observed(), 1);
    return make("det U10 = -3^20 I0^30 / I1^20", r.plus == r.points && r.points == n,
                det_detail(r) + " on the chart I0 > 0, I1 > 0", false);
  });
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opts) {
  std::vector<std::pair<std::string, std::vector<Job>>> plan;
  auto add = [&](const std::string& name) {
    std::vector<Job> jobs;
    if (name == "weights") {
      weights(jobs);
      cocycles(jobs);
    } else if (name == "absolute") {
      absolute(jobs);
    } else if (name == "generators") {
      generators(jobs);
    } else if (name == "derivations") {
      derivations(jobs);
    } else if (name == "commutators") {
      commutators(jobs);
    } else if (name == "syzygies") {
      syzygies(jobs);
    } else if (name == "determinants") {
      determinants(jobs, opts);
    } else {
      throw InputError("unknown suite '" + name + "'");
    }
    plan.emplace_back(name, std::move(jobs));
  };
  if (suite == "all") {
    for (const auto& s : suite_names()) add(s);
  } else {
    add(suite);
  }
  std::vector<std::pair<std::string, Job*>> flat;
  for (auto& [name, jobs] : plan) {
    for (auto& j : jobs) flat.emplace_back(name, &j);
  }
  std::vector<CheckResult> results(flat.size());
  parallel_for(flat.size(), [&](std::size_t i) {
    auto t0 = std::chrono::steady_clock::now();
    results[i] = (*flat[i].second)();
    results[i].suite = flat[i].first;
    results[i].seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  });
  return results;
}

}  // namespace jetinv
