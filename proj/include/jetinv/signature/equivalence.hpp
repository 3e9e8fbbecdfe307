#pragma once

#include <string>
#include <vector>

#include "jetinv/signature/signature.hpp"

namespace jetinv {

struct EquivOptions {
  double tol = 1e-6;         // relative residual for a match
  int neighbors = 12;        // k for the local linear initial guess
  double coverage = 0.3;     // fraction of all samples, both sides pooled, that must find a chart match
  int min_samples = 200;     // regular samples required on each side
  double tau_sing = 1e-9;
  double box_margin = 0.05;  // preimages may leave the box by this fraction of its width
};

enum class Verdict { equivalent, not_equivalent, inconclusive };
std::string to_string(Verdict v);

/// One side of the comparison: a section's signature map, its box and its samples.
struct SignatureSide {
  const SignatureMap* map;
  Box box;
  const SignatureSample* sample;
};

/// Matching of the samples of one side onto the signature of the other.
struct DirectionReport {
  int samples = 0;
  int matched = 0;
  double max_residual = 0;
  int rank = 0;                 // numeric rank of the target signature
  std::vector<std::string> chart;  // target chart coordinates
  double coverage() const { return samples ? double(matched) / samples : 0; }
};

struct EquivalenceVerdict {
  Verdict verdict = Verdict::inconclusive;
  int matched = 0;
  double max_residual = 0;
  std::array<int, 2> chart{};  // sign chart of A compared (sign I0 is 0 over pi)
  std::string symmetry;        // sign symmetry relating the charts of A and B
  DirectionReport forward, backward;
  std::vector<std::string> diagnostics;
};

/// Decides whether two signatures agree: pair sign charts of A and B related
/// by a sign symmetry (re-signing the odd coordinates),
/// pick a well-conditioned chart of the target, take an initial preimage from
/// a local linear fit over the nearest target samples, refine it by
/// Gauss-Newton on the chart coordinates and compare every coordinate there.
/// Both directions are run. A not-equivalent verdict always carries a
/// certificate under every admissible sign symmetry: disjoint coordinate
/// ranges, or a chart-matched pair whose residual exceeds 10 tol.
EquivalenceVerdict decide_equivalence(const SignatureSide& a, const SignatureSide& b,
                                      const EquivOptions& opts = {});

}  // namespace jetinv
