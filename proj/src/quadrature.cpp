#include "hhcert/quadrature.hpp"

#include <cmath>

#include "hhcert/errors.hpp"

namespace hhcert::quadrature {

namespace {

struct Worker {
    const std::function<double(double)>& g;
    int max_depth;
    double value = 0.0;
    double err_sum = 0.0;
    std::int64_t evals = 0;
    bool depth_hit = false;

    double call(double x) {
        ++evals;
        return g(x);
    }

    // One panel: [a, b] with cached endpoint/midpoint values and its
    // whole-panel Simpson estimate s. tol is this panel's error budget.
    void refine(double a, double fa, double m, double fm, double b, double fb,
                double s, double tol, int depth) {
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = call(lm);
        const double frm = call(rm);
        const double sl = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double sr = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double s2 = sl + sr;
        const double err = (s2 - s) / 15.0;
        if (std::fabs(err) <= tol || depth >= max_depth) {
            if (std::fabs(err) > tol) depth_hit = true;
            value += s2 + err;  // Richardson-extrapolated panel
            err_sum += std::fabs(err);
            return;
        }
        refine(a, fa, lm, flm, m, fm, sl, 0.5 * tol, depth + 1);
        refine(m, fm, rm, frm, b, fb, sr, 0.5 * tol, depth + 1);
    }
};

}  // namespace

QuadResult integrate(const std::function<double(double)>& g,
                     double lo, double hi,
                     double rel_tol, double abs_tol, int max_depth) {
    if (!g) throw DomainError("integrate: integrand is empty");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw DomainError("integrate: requires finite lo < hi");
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw DomainError("integrate: tolerances must be positive");
    if (max_depth < 1) throw DomainError("integrate: max_depth must be >= 1");

    Worker w{g, max_depth};
    const double m = 0.5 * (lo + hi);
    const double fa = w.call(lo);
    const double fm = w.call(m);
    const double fb = w.call(hi);
    const double s0 = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);

    // Error budget fixed from the first whole-interval estimate; the
    // budget halves with each bisection so accepted panels sum below it.
    const double tol = std::fmax(abs_tol, rel_tol * std::fabs(s0));
    w.refine(lo, fa, m, fm, hi, fb, s0, tol, 0);

    QuadResult r;
    r.value = w.value;
    r.abs_error_estimate = w.err_sum;
    r.evaluations = w.evals;
    const double requested = std::fmax(abs_tol, rel_tol * std::fabs(w.value));
    r.converged = !w.depth_hit && w.err_sum <= requested;
    return r;
}

}  // namespace hhcert::quadrature
