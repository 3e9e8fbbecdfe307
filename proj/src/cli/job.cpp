#include "jetinv/cli/job.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jetinv/errors.hpp"
#include "jetinv/expr/parser.hpp"
#include "jetinv/reduction/reduction.hpp"

namespace jetinv {

using nlohmann::json;

namespace {

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

std::string field_string(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw InputError(std::string("missing string field '") + key + "'");
  }
  return j[key].get<std::string>();
}

Expression expr_in(const std::string& text, const VariableSpace& space, const char* what) {
  try {
    ParseOptions o;
    o.declared = &space;
    return parse(text, o);
  } catch (const ParseError& e) {
    throw InputError(std::string(what) + ": " + e.what());
  } catch (const UnknownVariable& e) {
    throw InputError(std::string(what) + ": " + e.what());
  } catch (const std::domain_error& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

const VariableSpace& base_space() {
  static const VariableSpace s({"x", "y", "p"});
  return s;
}

Expression base_expr(const json& j, const char* key) {
  return expr_in(field_string(j, key), base_space(), key);
}

void read_box_grid(const json& j, Box& box, std::array<int, 3>& grid) {
  try {
    if (j.contains("box")) {
      const auto& b = j["box"];
      if (!b.is_array() || b.size() != 3) throw InputError("box must be three [lo, hi] pairs");
      for (int i = 0; i < 3; ++i) {
        if (!b[i].is_array() || b[i].size() != 2) throw InputError("box must be three [lo, hi] pairs");
        box.range[i] = {b[i][0].get<double>(), b[i][1].get<double>()};
        if (!(box.range[i][1] > box.range[i][0])) throw InputError("degenerate box");
      }
    }
    if (j.contains("grid")) {
      const auto& g = j["grid"];
      if (g.is_number_integer()) {
        grid.fill(g.get<int>());
      } else if (g.is_array() && g.size() == 3) {
        for (int i = 0; i < 3; ++i) grid[i] = g[i].get<int>();
      } else {
        throw InputError("grid must be an integer or three integers");
      }
      for (int n : grid) {
        if (n < 2) throw InputError("grid resolution must be at least 2 per axis");
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("bad box or grid: ") + e.what());
  }
}

}  // namespace

Job parse_job(const std::string& text) {
  json j = parse_document(text);
  if (!j.is_object()) throw InputError("job must be a JSON object");
  Job job;
  std::string bundle = j.contains("bundle") && j["bundle"].is_string() ? j["bundle"].get<std::string>()
                                                                       : "pitilde";
  if (bundle == "pitilde") {
    job.section = {Bundle::pitilde, base_expr(j, "f"), Expression()};
  } else if (bundle == "pi") {
    if (j.contains("a") || j.contains("b")) {
      job.section = family_to_section({base_expr(j, "a"), base_expr(j, "b")});
    } else {
      job.section = {Bundle::pi, base_expr(j, "f"), base_expr(j, "g")};
    }
  } else {
    throw InputError("unknown bundle '" + bundle + "'");
  }
  read_box_grid(j, job.box, job.grid);
  if (j.contains("tau")) {
    if (!j["tau"].is_number() || j["tau"].get<double>() <= 0) throw InputError("tau must be positive");
    job.tau = j["tau"].get<double>();
  }
  return job;
}

Job load_job(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_job(ss.str());
}

std::string job_to_json(const Job& job) {
  json j;
  j["bundle"] = to_string(job.section.bundle);
  j["f"] = job.section.f.to_string();
  if (job.section.bundle == Bundle::pi) j["g"] = job.section.g.to_string();
  j["box"] = job.box.range;
  j["grid"] = job.grid;
  j["tau"] = job.tau;
  return j.dump();
}

std::string sample_to_jsonl(const SignatureSample& s) {
  std::string out;
  for (const auto& pt : s.points) {
    json j;
    j["base"] = pt.base;
    j["signs"] = pt.signs;
    j["coords"] = pt.coords;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string verdict_to_json(const EquivalenceVerdict& v) {
  auto direction = [](const DirectionReport& d) {
    return json{{"samples", d.samples}, {"matched", d.matched}, {"coverage", d.coverage()},
                {"max_residual", d.max_residual}, {"rank", d.rank}, {"chart", d.chart}};
  };
  json j{{"verdict", to_string(v.verdict)},
         {"matched", v.matched},
         {"max_residual", v.max_residual},
         {"chart", v.chart},
         {"symmetry", v.symmetry},
         {"forward", direction(v.forward)},
         {"backward", direction(v.backward)},
         {"diagnostics", v.diagnostics}};
  return j.dump(2);
}

ReduceOutcome reduce(const std::string& text) {
  json j = parse_document(text);
  if (!j.is_object()) throw InputError("reduce input must be a JSON object");
  auto string_list = [&](const json& a, std::size_t n, const char* what) {
    if (!a.is_array() || a.size() != n) {
      throw InputError(std::string(what) + " must be a list of " + std::to_string(n) + " strings");
    }
    std::vector<Expression> out;
    for (const auto& s : a) {
      if (!s.is_string()) throw InputError(std::string(what) + " must hold strings");
      out.push_back(expr_in(s.get<std::string>(), base_space(), what));
    }
    return out;
  };
  if (!j.contains("roots") || !j.contains("integrals")) throw InputError("missing roots or integrals");
  auto roots = string_list(j["roots"], 3, "roots");
  if (!j["integrals"].is_array() || j["integrals"].size() != 2) {
    throw InputError("integrals must hold two [a, b] pairs");
  }
  auto i1 = string_list(j["integrals"][0], 2, "integrals");
  auto i2 = string_list(j["integrals"][1], 2, "integrals");
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      if ((roots[a] - roots[b]).is_zero()) throw InputError("roots are not distinct");
    }
  }
  static const VariableSpace h_space({"a1", "b1", "a2"});
  DualInput in;
  in.lambda1 = roots[0];
  in.lambda2 = roots[1];
  in.integrals1 = {i1[0], i1[1]};
  in.integrals2 = {i2[0], i2[1]};
  in.h12 = expr_in(field_string(j, "h"), h_space, "h");
  check_roots_and_integrals(in);

  ReduceOutcome r;
  auto eq = associated_equation(in.h12);
  r.G2 = eq.G2.to_string();
  r.normalized = eq.G2.is_zero();
  std::optional<Expression> a2;
  if (j.contains("a2")) {
    static const VariableSpace abc({"a1", "b1", "c"});
    a2 = expr_in(field_string(j, "a2"), abc, "a2");
  }
  if (auto ode = associated_ode(eq, a2)) r.ode = ode->to_string();
  if (!r.normalized) return r;

  Job job;
  read_box_grid(j, job.box, job.grid);
  if (j.contains("integrals3")) {
    auto i3 = string_list(j["integrals3"], 2, "integrals3");
    if (!is_integral(i3[0], roots[2]) || !is_integral(i3[1], roots[2])) {
      throw InputError("(a3, b3) are not integrals of X3");
    }
    if (!independent({i3[0], i3[1]})) throw InputError("integrals3 are not independent");
    job.section = family_to_section({i3[0], i3[1]});
  } else {
    job.section = {Bundle::pitilde, roots[2], Expression()};
  }
  r.job = job;
  return r;
}

std::string reduce_to_json(const ReduceOutcome& r) {
  json j{{"normalized", r.normalized}, {"G2", r.G2}};
  if (r.ode) j["associated_ode"] = *r.ode;
  if (r.job) {
    j["job"] = json::parse(job_to_json(*r.job));
  } else {
    j["report"] =
        "the associated equation is not y'' = 0; bringing it to that form by a contact "
        "transformation is left to the user";
  }
  return j.dump(2);
}

}  // namespace jetinv
