#include "hhcert/certify.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

#include "hhcert/errors.hpp"

namespace hhcert::certify {

const char* property_name(Property p) {
    switch (p) {
        case Property::monotone_decreasing:
            return "monotone_decreasing";
        case Property::geometrically_convex:
            return "geometrically_convex";
        case Property::s_geometrically_convex:
            return "s_geometrically_convex";
        case Property::range_unit_interval:
            return "range_unit_interval";
    }
    return "?";
}

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        xs[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return xs;
}

void require_interval(double a, double b, int n, const char* who) {
    if (!(a > 0.0) || !(a < b) || !std::isfinite(b))
        throw DomainError(std::string(who) + ": requires 0 < a < b");
    if (n < 2) throw DomainError(std::string(who) + ": requires n >= 2");
}

// Shared core of the weighted and unweighted geometric convexity checks.
SampledCertificate convexity_core(const std::function<double(double)>& g,
                                  double a, double b, double s, int n,
                                  Property property) {
    const char* who = property == Property::s_geometrically_convex
                          ? "check_s_geometric_convexity"
                          : "check_geometric_convexity";
    require_interval(a, b, n, who);
    if (property == Property::s_geometrically_convex && !(b <= 1.0))
        throw DomainError(std::string(who) + ": requires b <= 1");
    if (!(s > 0.0) || !(s <= 1.0))
        throw DomainError(std::string(who) + ": requires 0 < s <= 1");

    const std::vector<double> xs = linspace(a, b, n);
    const std::vector<double> ts = linspace(0.0, 1.0, n);
    std::vector<double> lnx(xs.size()), lng(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double gi = g(xs[i]);
        if (!(gi > 0.0) || !std::isfinite(gi))
            throw DomainError(std::string(who) +
                              ": g must be finite and > 0 at every sample");
        lnx[i] = std::log(xs[i]);
        lng[i] = std::log(gi);
    }
    std::vector<double> tw(ts.size()), ow(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
        tw[k] = std::pow(ts[k], s);
        ow[k] = std::pow(1.0 - ts[k], s);
    }

    SampledCertificate cert;
    cert.property = property;
    cert.grid = {n, n, n};
    double worst = std::numeric_limits<double>::infinity();
    std::size_t wi = 0, wj = 0, wk = 0;
    double worst_mid = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j)
            for (std::size_t k = 0; k < ts.size(); ++k) {
                const double z =
                    std::exp(ts[k] * lnx[i] + (1.0 - ts[k]) * lnx[j]);
                const double gz = g(z);
                if (!(gz > 0.0) || !std::isfinite(gz))
                    throw DomainError(
                        std::string(who) +
                        ": g must be finite and > 0 at every sample");
                const double margin =
                    tw[k] * lng[i] + ow[k] * lng[j] - std::log(gz);
                if (margin < worst) {
                    worst = margin;
                    wi = i;
                    wj = j;
                    wk = k;
                    worst_mid = gz;
                }
            }
    cert.worst_margin = worst;
    if (worst < -kSlack) {
        cert.verdict = Verdict::fail;
        Counterexample ce;
        ce.point = {xs[wi], xs[wj], ts[wk]};
        ce.lhs = worst_mid;  // g(x^t y^(1-t))
        ce.rhs = std::exp(tw[wk] * lng[wi] + ow[wk] * lng[wj]);
        cert.counterexample = ce;
    } else {
        cert.verdict = Verdict::pass;
    }
    return cert;
}

}  // namespace

SampledCertificate check_monotone_decreasing(
    const std::function<double(double)>& g, double a, double b, int n) {
    require_interval(a, b, n, "check_monotone_decreasing");
    const std::vector<double> xs = linspace(a, b, n);
    std::vector<double> gs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) gs[i] = g(xs[i]);

    SampledCertificate cert;
    cert.property = Property::monotone_decreasing;
    cert.grid = {n};
    double worst = std::numeric_limits<double>::infinity();
    std::size_t wi = 0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double margin = gs[i] - gs[i + 1];
        if (margin < worst) {
            worst = margin;
            wi = i;
        }
    }
    cert.worst_margin = worst;
    if (worst < -kSlack) {
        cert.verdict = Verdict::fail;
        Counterexample ce;
        ce.point = {xs[wi], xs[wi + 1]};
        ce.lhs = gs[wi + 1];
        ce.rhs = gs[wi];
        cert.counterexample = ce;
    } else {
        cert.verdict = Verdict::pass;
    }
    return cert;
}

SampledCertificate check_s_geometric_convexity(
    const std::function<double(double)>& g, double a, double b, double s,
    int n) {
    return convexity_core(g, a, b, s, n, Property::s_geometrically_convex);
}

SampledCertificate check_geometric_convexity(
    const std::function<double(double)>& g, double a, double b, int n) {
    return convexity_core(g, a, b, 1.0, n, Property::geometrically_convex);
}

SampledCertificate check_range_unit(const std::function<double(double)>& g,
                                    double a, double b, int n) {
    require_interval(a, b, n, "check_range_unit");
    const std::vector<double> xs = linspace(a, b, n);

    SampledCertificate cert;
    cert.property = Property::range_unit_interval;
    cert.grid = {n};
    double worst = std::numeric_limits<double>::infinity();
    std::size_t wi = 0;
    bool nonpositive = false;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double gi = g(xs[i]);
        if (!std::isfinite(gi))
            throw DomainError("check_range_unit: g must be finite");
        if (gi <= 0.0 && !nonpositive) {
            nonpositive = true;
            worst = gi;
            wi = i;
            break;
        }
        const double margin = 1.0 - gi;
        if (margin < worst) {
            worst = margin;
            wi = i;
        }
    }
    cert.worst_margin = worst;
    if (nonpositive || worst < -kSlack) {
        cert.verdict = Verdict::fail;
        Counterexample ce;
        ce.point = {xs[wi]};
        ce.lhs = g(xs[wi]);
        ce.rhs = nonpositive ? 0.0 : 1.0;
        cert.counterexample = ce;
    } else {
        cert.verdict = Verdict::pass;
    }
    return cert;
}

}  // namespace hhcert::certify
