#include "hhcert/funcspec.hpp"

#include <cmath>
#include <cstdio>
#include <memory>

#include "hhcert/errors.hpp"

namespace hhcert::funcspec {

namespace {

double checked_positive(double x, const char* who) {
    if (!(x > 0.0))
        throw EvalError(std::string(who) + ": requires x > 0, got " +
                        std::to_string(x));
    return x;
}

std::string format_param(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

FunctionSpec builtin_power_s(double s, double c) {
    if (!(s > 0.0) || !(s < 1.0) || !std::isfinite(s))
        throw DomainError("builtin_power_s: requires 0 < s < 1");
    if (!(c > 0.0) || !std::isfinite(c))
        throw DomainError("builtin_power_s: requires c > 0");
    FunctionSpec fs;
    fs.f = [s, c](double x) {
        return c * std::pow(checked_positive(x, "power_s f"), s) / s;
    };
    fs.fprime = [s, c](double x) {
        return c * std::pow(checked_positive(x, "power_s fprime"), s - 1.0);
    };
    fs.label = "power_s(s=" + format_param(s) + ",c=" + format_param(c) + ")";
    return fs;
}

FunctionSpec from_expressions(const std::optional<std::string>& f_src,
                              const std::optional<std::string>& fprime_src) {
    if (!f_src && !fprime_src)
        throw InputError("from_expressions: need at least one of f, fprime");
    FunctionSpec fs;
    std::shared_ptr<const expr::Expr> fe, fpe;
    if (f_src) {
        fe = std::make_shared<const expr::Expr>(expr::parse(*f_src));
        fs.f = [fe](double x) { return expr::eval(*fe, x); };
        fs.label = "f=" + *f_src;
    }
    if (fprime_src) {
        fpe = std::make_shared<const expr::Expr>(expr::parse(*fprime_src));
        fs.fprime = [fpe](double x) { return expr::eval(*fpe, x); };
        if (!fs.label.empty()) fs.label += " ";
        fs.label += "fprime=" + *fprime_src;
    }
    if (fe && fpe) {
        // Central finite difference sanity check: the supplied f' is
        // trusted, but a silent mismatch with f would poison every
        // downstream bound, so flag it.
        const double h = 1e-6;
        int bad = 0;
        double worst = 0.0, worst_x = 0.0;
        for (int i = 0; i < 17; ++i) {
            const double x = 0.05 + 0.95 * i / 16.0;
            double fd, fp;
            try {
                fd = (expr::eval(*fe, x + h) - expr::eval(*fe, x - h)) /
                     (2.0 * h);
                fp = expr::eval(*fpe, x);
            } catch (const Error&) {
                continue;  // point outside the user's intended domain
            }
            const double scale = std::fmax(1.0, std::fabs(fp));
            const double rel = std::fabs(fd - fp) / scale;
            if (rel > 1e-4 && rel > worst) {
                ++bad;
                worst = rel;
                worst_x = x;
            }
        }
        if (bad > 0) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "fprime disagrees with a finite difference of f "
                          "(relative gap %.3g at x=%.6g)",
                          worst, worst_x);
            fs.warnings.push_back(buf);
        }
    }
    return fs;
}

}  // namespace hhcert::funcspec
