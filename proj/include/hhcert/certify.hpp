#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hhcert::certify {

enum class Property {
    monotone_decreasing,
    geometrically_convex,
    s_geometrically_convex,
    range_unit_interval,
};

enum class Verdict { pass, fail };

const char* property_name(Property p);

// The two sides of the one grid inequality violated worst, evaluated in
// the inequality's original (not log) form, plus the sample location.
// lhs is the side required to be <= rhs; the one exception is a
// non-positive sample in the range check, reported as (value, 0.0).
struct Counterexample {
    std::vector<double> point;  // (x) / (x_i, x_{i+1}) / (x, y, t)
    double lhs = 0.0;
    double rhs = 0.0;
};

// Outcome of one sampled hypothesis check. Sampling is evidence, not
// proof: a pass certifies only the grid. Failures are sound; every
// counterexample re-verifies against the defining inequality beyond the
// slack. worst_margin is min over samples of (RHS - LHS), 0 on exact
// ties; the scan is deterministic with ties kept at the lexicographically
// smallest grid index.
struct SampledCertificate {
    Property property;
    Verdict verdict;
    std::vector<int> grid;  // sample counts per axis
    double worst_margin = 0.0;
    std::optional<Counterexample> counterexample;

    bool passed() const { return verdict == Verdict::pass; }
};

inline constexpr double kSlack = 1e-12;
inline constexpr int kDefaultGrid1D = 64;
inline constexpr int kDefaultGrid3D = 24;

// g(x_{i+1}) <= g(x_i) + slack on n equally spaced points of [a, b].
SampledCertificate check_monotone_decreasing(
    const std::function<double(double)>& g, double a, double b,
    int n = kDefaultGrid1D);

// g(x^t y^(1-t)) <= g(x)^(t^s) g(y)^((1-t)^s) on an n^3 grid of
// (x, y, t) in [a,b]^2 x [0,1], checked in log form
// t^s ln g(x) + (1-t)^s ln g(y) - ln g(x^t y^(1-t)) >= -slack.
// Requires 0 < a < b <= 1, 0 < s <= 1, and g > 0 at every sample
// (DomainError otherwise).
SampledCertificate check_s_geometric_convexity(
    const std::function<double(double)>& g, double a, double b, double s,
    int n = kDefaultGrid3D);

// Plain geometric convexity g(x^t y^(1-t)) <= g(x)^t g(y)^(1-t); the
// s = 1 instance of the weighted check, but with the domain restriction
// relaxed to any 0 < a < b.
SampledCertificate check_geometric_convexity(
    const std::function<double(double)>& g, double a, double b,
    int n = kDefaultGrid3D);

// 0 < g(x) <= 1 + slack at n samples; worst_margin is min(1 - g), so the
// largest sample value is 1 - worst_margin.
SampledCertificate check_range_unit(const std::function<double(double)>& g,
                                    double a, double b,
                                    int n = kDefaultGrid1D);

}  // namespace hhcert::certify
