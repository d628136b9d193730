#include "hhcert/means_apps.hpp"

#include <cmath>
#include <string>

#include "hhcert/bounds.hpp"
#include "hhcert/errors.hpp"
#include "hhcert/kernel.hpp"

namespace hhcert::means_apps {

namespace {

void require_inputs(double s, double a, double b, const char* who) {
    if (!(a > 0.0) || !(a < b) || !(b <= 1.0))
        throw DomainError(std::string(who) + ": requires 0 < a < b <= 1");
    if (!(s > 0.0) || !(s < 1.0))
        throw DomainError(std::string(who) + ": requires 0 < s < 1");
}

kernel::EndpointDerivatives power_endpoints(double s, double a, double b) {
    return kernel::EndpointDerivatives(std::pow(a, s - 1.0),
                                       std::pow(b, s - 1.0));
}

}  // namespace

double prop_lhs(double s, double a, double b) {
    require_inputs(s, a, b, "prop_lhs");
    const double mean_term =
        kernel::mean(kernel::MeanKind::arithmetic(), std::pow(a, s),
                     std::pow(b, s));
    const double integral_term = (std::pow(b, s + 1.0) - std::pow(a, s + 1.0)) /
                                 ((s + 1.0) * (b - a));
    return std::fabs(mean_term - integral_term) / s;
}

double prop1_rhs(double s, double a, double b) {
    require_inputs(s, a, b, "prop1_rhs");
    return bounds::bound_t1(power_endpoints(s, a, b), s, a, b);
}

double prop2_rhs(double s, double p, double a, double b) {
    require_inputs(s, a, b, "prop2_rhs");
    return bounds::bound_t2(power_endpoints(s, a, b), s, p, a, b);
}

double prop2_rhs_printed(double s, double p, double a, double b) {
    require_inputs(s, a, b, "prop2_rhs_printed");
    if (!(p > 1.0) || !std::isfinite(p))
        throw DomainError("prop2_rhs_printed: requires p > 1");
    const double q = p / (p - 1.0);
    const double c = 0.5 * (s - 1.0) * s * q;
    const double pref = (b - a) / (4.0 * std::pow(p + 1.0, 1.0 / p)) *
                        std::pow(a * b, 0.5 * s * (s - 1.0));
    const double half = 0.5 * s * (1.0 - s);
    const double lmean = kernel::mean(kernel::MeanKind::logarithmic(),
                                      std::pow(a, c), std::pow(b, c));
    return pref * (std::pow(b, half) + std::pow(a, half)) *
           std::pow(lmean, 1.0 / q);
}

double prop3_rhs(double s, double q, double a, double b) {
    require_inputs(s, a, b, "prop3_rhs");
    return bounds::bound_t3(power_endpoints(s, a, b), s, q, a, b);
}

double prop3_rhs_printed(double s, double q, double a, double b) {
    require_inputs(s, a, b, "prop3_rhs_printed");
    if (!(q >= 1.0) || !std::isfinite(q))
        throw DomainError("prop3_rhs_printed: requires q >= 1");
    const double c = 0.25 * (b - a) * std::pow(0.5, 1.0 - 1.0 / q);
    const double lr = (s - 1.0) * std::log(a / b);
    const double rp = std::exp(0.5 * s * lr);   // (a/b)^((s-1)s/2)
    const double rm = std::exp(-0.5 * s * lr);  // (b/a)^((s-1)s/2)
    const double xp = 0.5 * s * q * lr;         // ln of first bracket arg
    const double xm = -xp;
    const double ap = std::exp(xp);
    const double am = std::exp(xm);
    const double bracket_p = (ap * xp - ap + 1.0) / (xp * xp);
    // Literal sign-flipped second bracket; see the header note.
    const double bracket_m = (am * xm + am - 1.0) / (xm * xm);
    return c * (rp * std::pow(bracket_p, 1.0 / q) +
                rm * std::pow(bracket_m, 1.0 / q));
}

double prop4_rhs(double s, double mu1, double mu2, double a, double b) {
    require_inputs(s, a, b, "prop4_rhs");
    return bounds::bound_t4(power_endpoints(s, a, b), s, mu1, mu2, a, b);
}

std::vector<Example2Row> reproduce_example2(double corruption) {
    struct Instance {
        double s, a, b, ref_lhs, ref_rhs;
    };
    static const Instance kInstances[] = {
        {0.5, 0.89, 0.9, 4.921067116e-6, 2.570313847e-3},
        {0.2, 0.15, 0.6, 9.780804473e-2, 0.136819309576863680170486},
        {0.75, 0.45, 0.86, 6.115413651e-3, 0.112144032368736206184243},
    };
    std::vector<Example2Row> rows;
    rows.reserve(3);
    for (const auto& in : kInstances) {
        Example2Row row;
        row.s = in.s;
        row.a = in.a;
        row.b = in.b;
        row.lhs = prop_lhs(in.s, in.a, in.b) * (1.0 + corruption);
        row.rhs = prop1_rhs(in.s, in.a, in.b);
        row.margin = row.rhs - row.lhs;
        row.ref_lhs = in.ref_lhs;
        row.ref_rhs = in.ref_rhs;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace hhcert::means_apps
