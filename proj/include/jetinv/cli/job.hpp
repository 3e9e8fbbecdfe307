#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "jetinv/jets/jets.hpp"
#include "jetinv/signature/equivalence.hpp"

namespace jetinv {

/// A section over a box, as read from a job file:
///   {"bundle": "pitilde", "f": "y*p", "box": [[1,2],[1,2],[1,2]], "grid": [10,10,10]}
/// Over pi the section is given by "f" and "g", or by a curve family "a", "b".
/// Optional "tau" is the singularity threshold.
struct Job {
  Section section;
  Box box;
  std::array<int, 3> grid{10, 10, 10};
  double tau = 1e-9;
};

/// Throws InputError on malformed documents, bad expressions, a degenerate box
/// or a grid below 2 per axis.
Job parse_job(const std::string& json_text);
Job load_job(const std::string& path);
std::string job_to_json(const Job& job);

/// One JSON object per line: {"base": [...], "signs": [...], "coords": [...]}.
std::string sample_to_jsonl(const SignatureSample& s);

std::string verdict_to_json(const EquivalenceVerdict& v);

/// Description of a cubic ODE by its roots and verified integrals:
///   {"roots": [l1, l2, l3], "integrals": [[a1, b1], [a2, b2]], "h": h(a1, b1, a2),
///    "integrals3": [a3, b3], "a2": a2(a1, b1, c), "box": ..., "grid": ...}
/// "integrals3" and "a2" are optional.
struct ReduceOutcome {
  bool normalized = false;    // the associated equation is y'' = 0
  std::string G2;             // right side of the associated equation, in (a1, b1, a2)
  std::optional<std::string> ode;  // G2 as y'' = G2(x, y, p) when it could be expressed
  std::optional<Job> job;     // pi job from integrals3, otherwise pitilde job y'' = l3
};

/// Throws InputError for indistinct roots, unverified integrals or a bad h.
ReduceOutcome reduce(const std::string& json_text);
std::string reduce_to_json(const ReduceOutcome& r);

}  // namespace jetinv
