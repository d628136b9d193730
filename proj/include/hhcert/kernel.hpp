#pragma once

#include <string>

namespace hhcert::kernel {

// Endpoint derivative magnitudes |f'(a)|, |f'(b)|. Both must be finite
// and strictly positive; the power kernels take their logarithms.
struct EndpointDerivatives {
    double fa_abs;
    double fb_abs;

    EndpointDerivatives(double fa, double fb);
};

enum class MeanTag { arithmetic, logarithmic, generalized_logarithmic };

// Mean selector; p is only meaningful for generalized_logarithmic and
// must stay outside {-1, 0} where that family is defined by limits the
// evaluator does not take.
struct MeanKind {
    MeanTag tag;
    double p = 1.0;

    static MeanKind arithmetic() { return {MeanTag::arithmetic, 0.0}; }
    static MeanKind logarithmic() { return {MeanTag::logarithmic, 0.0}; }
    static MeanKind generalized_logarithmic(double p);
};

// alpha(u, v) = fa^u * fb^(-v), computed as exp(u*ln fa - v*ln fb) so the
// only overflow site is the final exponentiation. Throws OverflowError
// when the exponent leaves the range where exp() is finite and nonzero;
// subnormal results are accepted.
double alpha(const EndpointDerivatives& d, double u, double v);

// g1(alpha) = integral_0^1 t*alpha^t dt; closed form
// (alpha*ln(alpha) - alpha + 1) / ln(alpha)^2 with a removable
// singularity at alpha = 1 (value 1/2).
double g1(double alpha);

// g2(alpha) = integral_0^1 alpha^t dt; closed form
// (alpha - 1) / ln(alpha), value 1 at alpha = 1.
double g2(double alpha);

// Checks k^(m^n) <= k^(m*n) + 1e-15 for 0 < k, m, n <= 1. Always true on
// that domain; exposed as a self-test of the inequality the bound proofs
// rest on.
bool pow_tower_holds(double k, double m, double n);

// A(a,b), L(a,b), L_p(a,b). L and L_p return a when a == b (continuous
// limit), so parameter sweeps may hit coincident endpoints safely.
double mean(const MeanKind& kind, double a, double b);

}  // namespace hhcert::kernel
