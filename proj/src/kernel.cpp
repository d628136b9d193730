#include "hhcert/kernel.hpp"

#include <cmath>

#include "hhcert/errors.hpp"

namespace hhcert::kernel {

namespace {

// exp() overflows to +inf just above this exponent.
constexpr double kLogMax = 709.782712893384;
// exp() rounds to zero a little below this; staying above keeps results
// nonzero (possibly subnormal).
constexpr double kLogMin = -745.0;

// Above this, alpha*ln(alpha) in g1's numerator would overflow even
// though alpha itself is finite; switch to the factored form.
constexpr double kG1FactorThreshold = 700.0;

// |ln(alpha)| below which g1/g2 use their truncated Taylor series. The
// direct quotients lose digits to cancellation in this band; the 6-term
// series truncation error is < 1e-26 here.
constexpr double kSeam = 1e-4;

}  // namespace

EndpointDerivatives::EndpointDerivatives(double fa, double fb)
    : fa_abs(fa), fb_abs(fb) {
    if (!(fa > 0.0) || !std::isfinite(fa) || !(fb > 0.0) || !std::isfinite(fb))
        throw DomainError(
            "EndpointDerivatives: fa_abs and fb_abs must be finite and > 0");
}

MeanKind MeanKind::generalized_logarithmic(double p) {
    if (!std::isfinite(p) || p == -1.0 || p == 0.0)
        throw DomainError("MeanKind: p must be finite and outside {-1, 0}");
    return {MeanTag::generalized_logarithmic, p};
}

double alpha(const EndpointDerivatives& d, double u, double v) {
    if (!std::isfinite(u) || !std::isfinite(v))
        throw DomainError("alpha: u and v must be finite");
    const double e = u * std::log(d.fa_abs) - v * std::log(d.fb_abs);
    if (!(e <= kLogMax) || !(e >= kLogMin))
        throw OverflowError("alpha: exponent " + std::to_string(e) +
                            " outside representable range");
    return std::exp(e);
}

double g1(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw DomainError("g1: alpha must be finite and > 0");
    const double x = std::log(alpha);
    if (std::fabs(x) < kSeam) {
        // Taylor coefficients of (x e^x - e^x + 1)/x^2 about x = 0.
        return 0.5 +
               x * (1.0 / 3.0 +
                    x * (1.0 / 8.0 +
                         x * (1.0 / 30.0 +
                              x * (1.0 / 144.0 + x * (1.0 / 840.0)))));
    }
    if (x > kG1FactorThreshold) {
        // alpha*(x-1)/x^2 + 1/x^2 without forming alpha*x (which can
        // overflow for x > ~703 while alpha is still finite).
        return (alpha / x) * ((x - 1.0) / x) + 1.0 / (x * x);
    }
    // Fusing "-alpha + 1" through expm1 keeps the absolute error near
    // eps/|x| instead of eps/x^2 as x -> 0.
    return (x * alpha - std::expm1(x)) / (x * x);
}

double g2(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw DomainError("g2: alpha must be finite and > 0");
    const double x = std::log(alpha);
    if (std::fabs(x) < kSeam) {
        // Taylor coefficients of (e^x - 1)/x about x = 0.
        return 1.0 +
               x * (0.5 +
                    x * (1.0 / 6.0 +
                         x * (1.0 / 24.0 +
                              x * (1.0 / 120.0 + x * (1.0 / 720.0)))));
    }
    return std::expm1(x) / x;
}

bool pow_tower_holds(double k, double m, double n) {
    if (!(k > 0.0) || !(k <= 1.0) || !(m > 0.0) || !(m <= 1.0) ||
        !(n > 0.0) || !(n <= 1.0))
        throw DomainError("pow_tower_holds: requires 0 < k, m, n <= 1");
    return std::pow(k, std::pow(m, n)) <= std::pow(k, m * n) + 1e-15;
}

double mean(const MeanKind& kind, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError("mean: requires finite a, b > 0");
    switch (kind.tag) {
        case MeanTag::arithmetic:
            return 0.5 * (a + b);
        case MeanTag::logarithmic:
            if (a == b) return a;
            return (b - a) / (std::log(b) - std::log(a));
        case MeanTag::generalized_logarithmic: {
            const double p = kind.p;
            if (!std::isfinite(p) || p == -1.0 || p == 0.0)
                throw DomainError("mean: L_p requires p outside {-1, 0}");
            if (a == b) return a;
            const double num = std::pow(b, p + 1.0) - std::pow(a, p + 1.0);
            return std::pow(num / ((p + 1.0) * (b - a)), 1.0 / p);
        }
    }
    throw DomainError("mean: unknown kind");
}

}  // namespace hhcert::kernel
