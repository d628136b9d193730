#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hhcert/certify.hpp"
#include "hhcert/funcspec.hpp"
#include "hhcert/kernel.hpp"

namespace hhcert::bounds {

enum class Mode { strict, paper_compat };
enum class Regime { unit_range, above_unit, mixed };

const char* mode_name(Mode m);
const char* regime_name(Regime r);

// Theorem parameters. p and q are Hoelder conjugates: supply either one
// (the other is derived) or both consistently; q doubles as the free
// exponent of the third bound, where it only needs q >= 1.
struct ParamSet {
    double s = 0.5;
    std::optional<double> p;
    std::optional<double> q;
    double mu1 = 0.5;
    double mu2 = 0.5;
    Mode mode = Mode::strict;

    // Fills in the missing conjugate (default p = q = 2), validates all
    // ranges, and returns the resolved copy. InputError on violations.
    ParamSet resolved() const;
    double p_value() const { return *p; }  // call on resolved() output
    double q_value() const { return *q; }
};

// Per-theorem outcome inside a BoundReport.
struct TheoremResult {
    bool computed = false;
    double rhs = 0.0;     // valid when computed
    double margin = 0.0;  // rhs - lhs, valid when computed
    std::vector<std::string> failed_properties;  // why it was rejected
};

// Hypothesis certificates grouped by the exponent of |f'| they cover:
// exponent 1 serves the first and fourth bounds, exponent q the second
// and third.
struct CertificateGroup {
    double exponent = 1.0;
    std::vector<certify::SampledCertificate> certificates;
    bool all_passed() const;
};

struct BoundReport {
    double lhs = 0.0;
    Regime regime = Regime::unit_range;
    Mode mode = Mode::strict;
    kernel::EndpointDerivatives d{1.0, 1.0};
    std::map<std::string, TheoremResult> theorems;  // keys t1..t4
    std::vector<CertificateGroup> certificate_groups;  // strict mode only
};

// |(f(a)+f(b))/2 - (1/(b-a)) * integral_a^b f|, the trapezoid defect,
// with the integral done by the quadrature module at default tolerances.
double hh_lhs(const funcspec::FunctionSpec& fs, double a, double b);

// |LHS - RHS| of the integral identity
//   (f(a)+f(b))/2 - (1/(b-a)) int_a^b f
//     = ((b-a)/4) [ int_0^1 (-t) f'((1+t)a/2 + (1-t)b/2) dt
//                 + int_0^1   t  f'((1+t)b/2 + (1-t)a/2) dt ].
// Near zero for consistent (f, f'); order 1e-3 or larger when f' does
// not match f, making it a cheap consistency detector.
double lemma1_residual(const funcspec::FunctionSpec& fs, double a, double b);

// The four closed-form right-hand sides. Common notation:
// C = (b-a)/4, P = (fa*fb)^(s/2), alpha(u,v) = fa^u * fb^(-v),
// all powers evaluated in log space.
//
// t1: C * P * ( g1(alpha(s/2, s/2)) + g1(alpha(-s/2, -s/2)) )
double bound_t1(const kernel::EndpointDerivatives& d, double s, double a,
                double b);

// t2: (b-a)/(4*(p+1)^(1/p)) * P *
//     ( g2(alpha(sq/2, sq/2))^(1/q) + g2(alpha(-sq/2, -sq/2))^(1/q) ),
//     q = p/(p-1)
double bound_t2(const kernel::EndpointDerivatives& d, double s, double p,
                double a, double b);

// t3: C * (1/2)^(1-1/q) *
//     (  (fa/fb)^(s/2) * g1(alpha( sq/2,  sq/2))^(1/q)
//      + (fb/fa)^(s/2) * g1(alpha(-sq/2, -sq/2))^(1/q) ), q >= 1.
// Evaluated as C * 0.5 * sum of r^(+-s/2) * (2*g1)^(1/q), which is
// algebraically identical and collapses exactly to C at fa = fb = 1.
double bound_t3(const kernel::EndpointDerivatives& d, double s, double q,
                double a, double b);

// t4: C * P * ( mu1^2/(1+mu1) + mu2^2/(1+mu2)
//             + eta1 * g2(alpha( s/(2*eta1),  s/(2*eta1)))
//             + eta2 * g2(alpha(-s/(2*eta2), -s/(2*eta2))) ),
//     eta_i = 1 - mu_i. The two g2 arguments are reciprocal: the Young
//     split pairs t with each of (fa/fb)^(st/2) and (fb/fa)^(st/2), so
//     the second kernel must take the inverted ratio.
double bound_t4(const kernel::EndpointDerivatives& d, double s, double mu1,
                double mu2, double a, double b);

// The p = q = 2 specialization of t2 in its standalone published shape,
// (b-a)/(4*sqrt(3)) * P * ( sqrt(g2(alpha(s,s))) + sqrt(g2(alpha(-s,-s))) ).
double corollary_p2(const kernel::EndpointDerivatives& d, double s, double a,
                    double b);

// Classifies |f'| samples on an n-point grid of [a, b].
Regime classify_regime(const funcspec::FunctionSpec& fs, double a, double b,
                       int n = certify::kDefaultGrid1D);

// Full report: lhs, regime, and the four bounds. strict mode certifies
// each bound's hypotheses first (monotone decrease, s-geometric
// convexity, unit range, applied to |f'|^1 for t1/t4 and |f'|^q for
// t2/t3) and computes a bound only when its group passed; paper_compat
// computes everything and leaves the regime flag as the caveat.
BoundReport verdict(const funcspec::FunctionSpec& fs, const ParamSet& params,
                    double a, double b);

}  // namespace hhcert::bounds
