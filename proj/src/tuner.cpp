#include "hhcert/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "hhcert/bounds.hpp"
#include "hhcert/errors.hpp"

namespace hhcert::tuner {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kGold = (std::sqrt(5.0) - 1.0) / 2.0;
const double kLnPLo = std::log(kPLo);
const double kLnPHi = std::log(kPHi);
constexpr int kMaxGoldenIters = 200;

struct GoldenResult {
    double x = 0.0;
    double value = kInf;
    long iterations = 0;
};

// Golden-section minimization on [lo, hi] down to interval width
// kGoldenWidth. The objective may return +infinity (overflow regions are
// contiguous at a domain edge for every bound tuned here, so the standard
// update steps route around them). The final answer is the best of the
// last bracket's endpoints and interior probes, which snaps edge minima to
// the exact domain edge.
GoldenResult golden(const std::function<double(double)>& f, double lo,
                    double hi,
                    std::vector<std::pair<double, double>>* history) {
    double c = hi - kGold * (hi - lo);
    double d = lo + kGold * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    GoldenResult r;
    while (hi - lo > kGoldenWidth && r.iterations < kMaxGoldenIters) {
        ++r.iterations;
        if (history) history->emplace_back(lo, hi);
        if (fc <= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - kGold * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + kGold * (hi - lo);
            fd = f(d);
        }
    }
    r.x = lo;
    r.value = f(lo);
    const double fhi = f(hi);
    if (fc < r.value) {
        r.x = c;
        r.value = fc;
    }
    if (fd < r.value) {
        r.x = d;
        r.value = fd;
    }
    if (fhi < r.value) {
        r.x = hi;
        r.value = fhi;
    }
    return r;
}

double t2_objective(const kernel::EndpointDerivatives& d, double s, double a,
                    double b, double lnp) {
    try {
        return bounds::bound_t2(d, s, std::exp(lnp), a, b);
    } catch (const OverflowError&) {
        return kInf;
    }
}

double t4_objective(const kernel::EndpointDerivatives& d, double s, double a,
                    double b, double mu1, double mu2) {
    try {
        return bounds::bound_t4(d, s, mu1, mu2, a, b);
    } catch (const OverflowError&) {
        return kInf;
    }
}

bool near_edge(double x, double lo, double hi) {
    return x - lo <= kMuDelta || hi - x <= kMuDelta;
}

}  // namespace

TuneResult tune_p(const kernel::EndpointDerivatives& d, double s, double a,
                  double b, bool record_history) {
    auto f = [&](double lnp) { return t2_objective(d, s, a, b, lnp); };
    TuneResult res;
    std::vector<std::pair<double, double>> hist;
    const GoldenResult g =
        golden(f, kLnPLo, kLnPHi, record_history ? &hist : nullptr);
    if (!std::isfinite(g.value))
        throw OverflowError("tune_p: objective overflows everywhere");
    res.best_params = {std::exp(g.x)};
    res.best_bound = g.value;
    res.at_boundary = {near_edge(g.x, kLnPLo, kLnPHi)};
    res.iterations = g.iterations;
    if (record_history) res.bracket_history = std::move(hist);
    return res;
}

TuneResult tune_mu(const kernel::EndpointDerivatives& d, double s, double a,
                   double b, bool record_history) {
    auto f = [&](double m1, double m2) {
        return t4_objective(d, s, a, b, m1, m2);
    };
    const double lo = kMuDelta;
    const double hi = 1.0 - kMuDelta;

    // Coarse scan localizes the basin; the objective is separable in
    // (mu1, mu2) so per-coordinate refinement then converges globally.
    double best = kInf, m1 = lo, m2 = lo;
    constexpr int kCoarse = 64;
    for (int i = 0; i < kCoarse; ++i) {
        const double x = lo + (hi - lo) * i / (kCoarse - 1.0);
        for (int j = 0; j < kCoarse; ++j) {
            const double y = lo + (hi - lo) * j / (kCoarse - 1.0);
            const double v = f(x, y);
            if (v < best) {
                best = v;
                m1 = x;
                m2 = y;
            }
        }
    }
    if (!std::isfinite(best))
        throw OverflowError("tune_mu: objective overflows on the entire grid");

    TuneResult res;
    std::vector<std::pair<double, double>> hist;
    auto* hp = record_history ? &hist : nullptr;
    for (int round = 0; round < 2; ++round) {
        GoldenResult g1 =
            golden([&](double t) { return f(t, m2); }, lo, hi, hp);
        m1 = g1.x;
        res.iterations += g1.iterations;
        GoldenResult g2 =
            golden([&](double t) { return f(m1, t); }, lo, hi, hp);
        m2 = g2.x;
        res.iterations += g2.iterations;
    }
    res.best_params = {m1, m2};
    res.best_bound = f(m1, m2);
    if (!std::isfinite(res.best_bound))
        throw OverflowError("tune_mu: refined point overflows");
    res.at_boundary = {near_edge(m1, lo, hi), near_edge(m2, lo, hi)};
    if (record_history) res.bracket_history = std::move(hist);
    return res;
}

double grid_oracle_p(const kernel::EndpointDerivatives& d, double s, double a,
                     double b, int n) {
    if (n < 3) throw DomainError("grid_oracle_p: requires n >= 3");
    auto f = [&](double lnp) { return t2_objective(d, s, a, b, lnp); };
    const double step = (kLnPHi - kLnPLo) / (n - 1.0);
    double best = kInf;
    int best_i = 0;
    for (int i = 0; i < n; ++i) {
        const double v = f(kLnPLo + step * i);
        if (v < best) {
            best = v;
            best_i = i;
        }
    }
    if (!std::isfinite(best))
        throw OverflowError("grid_oracle_p: objective overflows everywhere");
    const double wlo = kLnPLo + step * std::max(0, best_i - 1);
    const double whi = kLnPLo + step * std::min(n - 1, best_i + 1);
    const GoldenResult g = golden(f, wlo, whi, nullptr);
    return std::min(best, g.value);
}

double grid_oracle_mu(const kernel::EndpointDerivatives& d, double s,
                      double a, double b, int n) {
    if (n < 3) throw DomainError("grid_oracle_mu: requires n >= 3");
    auto f = [&](double m1, double m2) {
        return t4_objective(d, s, a, b, m1, m2);
    };
    const double lo = kMuDelta;
    const double hi = 1.0 - kMuDelta;
    const double step = (hi - lo) / (n - 1.0);
    double best = kInf, m1 = lo, m2 = lo;
    for (int i = 0; i < n; ++i) {
        const double x = lo + step * i;
        for (int j = 0; j < n; ++j) {
            const double y = lo + step * j;
            const double v = f(x, y);
            if (v < best) {
                best = v;
                m1 = x;
                m2 = y;
            }
        }
    }
    if (!std::isfinite(best))
        throw OverflowError("grid_oracle_mu: objective overflows everywhere");
    // Per-coordinate polish inside the winning cell's neighborhood.
    for (int round = 0; round < 2; ++round) {
        const GoldenResult g1 =
            golden([&](double t) { return f(t, m2); },
                   std::max(lo, m1 - step), std::min(hi, m1 + step), nullptr);
        if (g1.value < f(m1, m2)) m1 = g1.x;
        const GoldenResult g2 =
            golden([&](double t) { return f(m1, t); },
                   std::max(lo, m2 - step), std::min(hi, m2 + step), nullptr);
        if (g2.value < f(m1, m2)) m2 = g2.x;
    }
    return f(m1, m2);
}

std::vector<RankedBound> tightness_rank(const funcspec::FunctionSpec& fs,
                                        double s, double a, double b) {
    if (!fs.has_fprime())
        throw InputError("tightness_rank: FunctionSpec lacks fprime");
    const kernel::EndpointDerivatives d(std::fabs(fs.fprime(a)),
                                        std::fabs(fs.fprime(b)));
    std::vector<RankedBound> out;
    out.push_back({"t1", bounds::bound_t1(d, s, a, b)});
    out.push_back({"t2", tune_p(d, s, a, b).best_bound});
    double t3 = kInf;
    for (double q : {1.0, 2.0, 10.0})
        t3 = std::min(t3, bounds::bound_t3(d, s, q, a, b));
    out.push_back({"t3", t3});
    out.push_back({"t4", tune_mu(d, s, a, b).best_bound});
    std::sort(out.begin(), out.end(),
              [](const RankedBound& x, const RankedBound& y) {
                  return x.bound < y.bound ||
                         (x.bound == y.bound && x.theorem < y.theorem);
              });
    return out;
}

}  // namespace hhcert::tuner
