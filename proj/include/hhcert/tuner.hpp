#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hhcert/funcspec.hpp"
#include "hhcert/kernel.hpp"

namespace hhcert::tuner {

// Result of a deterministic bound minimization.
//
// Invariants:
//   - best_bound equals the bound re-evaluated at best_params (same code
//     path, so equality is exact).
//   - at_boundary[i] is true when coordinate i lies within the boundary
//     band of its clamped search domain.
struct TuneResult {
    std::vector<double> best_params;  // {p} or {mu1, mu2}
    double best_bound = 0.0;
    std::vector<bool> at_boundary;
    long iterations = 0;  // total golden-section iterations
    // (lo, hi) interval per golden-section iteration, concatenated across
    // sweeps; populated only on request.
    std::optional<std::vector<std::pair<double, double>>> bracket_history;
};

// Search domains. tune_p works in ln p over [kLnPLo, kLnPHi]; tune_mu works
// on [kMuDelta, 1 - kMuDelta] per coordinate. Boundary flags use kMuDelta
// as the band width in the search coordinate.
inline constexpr double kPLo = 1.0 + 1e-4;
inline constexpr double kPHi = 1e3;
inline constexpr double kMuDelta = 1e-3;
inline constexpr double kGoldenWidth = 1e-10;

// Minimizes the power-pair bound over p. Golden-section in ln p to interval
// width 1e-10; evaluation overflow scores the probe +infinity and the
// search routes around it. Deterministic: repeated calls are bit-identical.
TuneResult tune_p(const kernel::EndpointDerivatives& d, double s, double a,
                  double b, bool record_history = false);

// Minimizes the convex-split bound over (mu1, mu2) on
// [kMuDelta, 1 - kMuDelta]^2: coarse 64x64 scan, then two rounds of
// per-coordinate golden-section refinement (the objective is separable).
// Probes that overflow score +infinity and are excluded; if every coarse
// cell overflows the search itself throws OverflowError.
TuneResult tune_mu(const kernel::EndpointDerivatives& d, double s, double a,
                   double b, bool record_history = false);

// Brute-force references for the tuners: a dense global scan localizes the
// best cell, then a golden-section polish inside that cell removes grid
// quantization so the comparison tolerance can be tight. Intentionally
// independent of the tuner's own search path.
double grid_oracle_p(const kernel::EndpointDerivatives& d, double s, double a,
                     double b, int n = 10000);
double grid_oracle_mu(const kernel::EndpointDerivatives& d, double s,
                      double a, double b, int n = 512);

struct RankedBound {
    std::string theorem;  // "t1".."t4"
    double bound = 0.0;
};

// Evaluates all four bounds at the endpoint derivatives of fs: t1 as is,
// t2 tuned over p, t3 as the best of q in {1, 2, 10}, t4 tuned over
// (mu1, mu2). Returns them sorted ascending; equal bounds keep theorem
// order.
std::vector<RankedBound> tightness_rank(const funcspec::FunctionSpec& fs,
                                        double s, double a, double b);

}  // namespace hhcert::tuner
