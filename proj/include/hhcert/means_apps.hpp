#pragma once

#include <vector>

namespace hhcert::means_apps {

// Specializations of the four trapezoid-defect bounds to f(x) = x^s/s on
// (0, 1], whose derivative magnitude x^(s-1) is s-geometrically convex.
// All operations require 0 < a < b <= 1 and 0 < s < 1 (DomainError outside)
// and reduce to the generic bounds with endpoint derivatives
// d = (a^(s-1), b^(s-1)).

// Closed-form trapezoid defect of x^s/s on [a, b]:
//   (1/s) |A(a^s, b^s) - (b^(s+1) - a^(s+1)) / ((s+1)(b-a))|
// where A is the arithmetic mean. Agrees with hh_lhs of the builtin
// power-law function up to quadrature tolerance.
double prop_lhs(double s, double a, double b);

// bound_t1 at d = (a^(s-1), b^(s-1)).
double prop1_rhs(double s, double a, double b);

// bound_t2 at d = (a^(s-1), b^(s-1)); p > 1.
double prop2_rhs(double s, double p, double a, double b);

// Equivalent closed form of prop2_rhs through the logarithmic mean:
//   (b-a)/(4(p+1)^(1/p)) |ab|^(s(s-1)/2)
//     (b^(s(1-s)/2) + a^(s(1-s)/2)) L(a^c, b^c)^(1/q),  c = (s-1)sq/2.
// Exact identity: g2((x/y)^c) = L(x^c, y^c) / y^c. Kept as an independent
// cross-check of bound_t2.
double prop2_rhs_printed(double s, double p, double a, double b);

// bound_t3 at d = (a^(s-1), b^(s-1)); q >= 1.
double prop3_rhs(double s, double q, double a, double b);

// Alternate rendering of prop3_rhs in which the second kernel bracket
// appears as (x ln x + x - 1)/(ln x)^2 instead of the g1 form
// (x ln x - x + 1)/(ln x)^2. The flipped sign disagrees with the kernel
// identity and diverges as the bracket argument approaches 1; the value is
// computed literally so the numeric gap to prop3_rhs can be reported, not
// because it is believed correct.
double prop3_rhs_printed(double s, double q, double a, double b);

// bound_t4 at d = (a^(s-1), b^(s-1)); mu1, mu2 in (0, 1).
double prop4_rhs(double s, double mu1, double mu2, double a, double b);

// One row of the three-instance demonstration table. lhs/rhs are computed
// here; ref_lhs/ref_rhs are frozen reference values the computation must
// match to 1e-6 relative.
struct Example2Row {
    double s = 0.0;
    double a = 0.0;
    double b = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    double ref_lhs = 0.0;
    double ref_rhs = 0.0;
};

// Recomputes the three demonstration instances (s, a, b) =
// (0.5, 0.89, 0.9), (0.2, 0.15, 0.6), (0.75, 0.45, 0.86) with
// lhs = prop_lhs and rhs = prop1_rhs. `corruption` scales each computed
// lhs by (1 + corruption); nonzero values exist only to exercise
// reproduction-failure reporting.
std::vector<Example2Row> reproduce_example2(double corruption = 0.0);

}  // namespace hhcert::means_apps
