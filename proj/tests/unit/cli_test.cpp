#include <doctest.h>

#include <algorithm>

#include "jetinv/cli/job.hpp"
#include "jetinv/cli/verify.hpp"
#include "jetinv/errors.hpp"
#include "jetinv/signature/signature.hpp"

using namespace jetinv;

TEST_CASE("job parsing") {
  Job j = parse_job(R"j({"bundle": "pitilde", "f": "y*p", "box": [[1,2],[1,3],[0,1]], "grid": [4,5,6]})j");
  CHECK(j.section.bundle == Bundle::pitilde);
  CHECK(j.box.range[1][1] == 3);
  CHECK(j.grid == std::array<int, 3>{4, 5, 6});
  Job k = parse_job(job_to_json(j));
  CHECK(k.section.f == j.section.f);
  CHECK(k.box.range == j.box.range);

  Job fam = parse_job(R"j({"bundle": "pi", "a": "y - p*x", "b": "p"})j");
  CHECK(fam.section.f.is_zero());
  Job fg = parse_job(R"j({"bundle": "pi", "f": "1", "g": "p + x", "grid": 3})j");
  CHECK(fg.grid == std::array<int, 3>{3, 3, 3});
}

TEST_CASE("job input errors") {
  CHECK_THROWS_AS(parse_job("{"), InputError);
  CHECK_THROWS_AS(parse_job(R"j({"f": "y*q"})j"), InputError);
  CHECK_THROWS_AS(parse_job(R"j({"f": "y*"})j"), InputError);
  CHECK_THROWS_AS(parse_job(R"j({"f": "y", "grid": [1,2,2]})j"), InputError);
  CHECK_THROWS_AS(parse_job(R"j({"f": "y", "box": [[1,1],[1,2],[1,2]]})j"), InputError);
  CHECK_THROWS_AS(parse_job(R"j({"bundle": "sigma", "f": "y"})j"), InputError);
  CHECK_THROWS_AS(parse_job(R"j({"bundle": "pi", "a": "x", "b": "y"})j"), InputError);
  CHECK_THROWS_AS(load_job("/nonexistent/job.json"), InputError);
}

TEST_CASE("signature output has one line per regular sample") {
  Job j = parse_job(R"j({"f": "y*p", "grid": 3})j");
  SignatureMap m(j.section);
  auto s = sample_signature(m, j.box, j.grid);
  std::string out = sample_to_jsonl(s);
  CHECK(std::count(out.begin(), out.end(), '\n') == 27);
  CHECK(out.find("\"signs\":[1,-1]") != std::string::npos);
}

TEST_CASE("reduce pipeline") {
  auto ok = reduce(R"j({"roots": ["1", "0", "y*p"],
      "integrals": [["p-x", "y-p*x+x^2/2-(p-x)^2/2"], ["p", "y-p*x"]],
      "h": "b1+a1*a2-a2^2/2"})j");
  CHECK(ok.normalized);
  REQUIRE(ok.job.has_value());
  CHECK(ok.job->section.f.to_string() == "y*p");

  auto dual = reduce(R"j({"roots": ["0", "-2*p/x", "1"],
      "integrals": [["y-p*x", "p"], ["y+p*x", "-p*x^2"]], "h": "-(a2-a1)^2/(4*b1)"})j");
  CHECK_FALSE(dual.normalized);
  CHECK_FALSE(dual.job.has_value());
  CHECK(reduce_to_json(dual).find("report") != std::string::npos);

  CHECK_THROWS_AS(reduce(R"j({"roots": ["0", "0", "1"], "integrals": [["y-p*x", "p"], ["y-p*x", "p"]],
      "h": "b1"})j"), InputError);
  CHECK_THROWS_AS(reduce(R"j({"roots": ["0", "1", "2"], "integrals": [["y", "p"], ["p-x", "y"]],
      "h": "b1"})j"), InputError);
}

TEST_CASE("reduce packages a pi job from third integrals") {
  auto r = reduce(R"j({"roots": ["1", "0", "x"],
      "integrals": [["p-x", "y-p*x+x^2/2-(p-x)^2/2"], ["p", "y-p*x"]],
      "h": "b1+a1*a2-a2^2/2", "integrals3": ["p - x^2/2", "y - p*x + x^3/3"]})j");
  REQUIRE(r.job.has_value());
  CHECK(r.job->section.bundle == Bundle::pi);
  CHECK(r.job->section.f.to_string() == "x");
}

TEST_CASE("verify suites") {
  CHECK(suite_names().size() == 7);
  auto results = run_suite("derivations");
  CHECK(results.size() == 6);
  CHECK(std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; }));
  auto gens = run_suite("generators");
  auto pitilde = std::find_if(gens.begin(), gens.end(), [](const CheckResult& r) {
    return r.name.rfind("pitilde", 0) == 0;
  });
  REQUIRE(pitilde != gens.end());
  CHECK(pitilde->pass);
  CHECK_THROWS_AS(run_suite("nonsense"), InputError);
}
