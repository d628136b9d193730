// Python bindings for the certification engine. Structured results come
// back as plain dicts mirroring the CLI's JSON output so the two front
// ends stay directly comparable.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "hhcert/bounds.hpp"
#include "hhcert/certify.hpp"
#include "hhcert/cli.hpp"
#include "hhcert/errors.hpp"
#include "hhcert/expr.hpp"
#include "hhcert/funcspec.hpp"
#include "hhcert/kernel.hpp"
#include "hhcert/means_apps.hpp"
#include "hhcert/quadrature.hpp"
#include "hhcert/tuner.hpp"

namespace py = pybind11;

namespace {

namespace bounds = hhcert::bounds;
namespace certify = hhcert::certify;
namespace expr = hhcert::expr;
namespace funcspec = hhcert::funcspec;
namespace kernel = hhcert::kernel;
namespace ma = hhcert::means_apps;
namespace quad = hhcert::quadrature;
namespace tuner = hhcert::tuner;

using kernel::EndpointDerivatives;

bounds::Mode parse_mode(const std::string& m) {
    if (m == "strict") return bounds::Mode::strict;
    if (m == "paper_compat") return bounds::Mode::paper_compat;
    throw hhcert::InputError("mode must be 'strict' or 'paper_compat', got '" +
                             m + "'");
}

py::object certificate_dict(const certify::SampledCertificate& c) {
    py::dict d;
    d["property"] = certify::property_name(c.property);
    d["passed"] = c.passed();
    d["grid"] = c.grid;
    d["worst_margin"] = c.worst_margin;
    if (c.counterexample) {
        py::dict ce;
        ce["point"] = c.counterexample->point;
        ce["lhs"] = c.counterexample->lhs;
        ce["rhs"] = c.counterexample->rhs;
        d["counterexample"] = ce;
    } else {
        d["counterexample"] = py::none();
    }
    return d;
}

py::dict report_dict(const bounds::BoundReport& r) {
    py::dict d;
    d["mode"] = bounds::mode_name(r.mode);
    d["regime"] = bounds::regime_name(r.regime);
    d["lhs"] = r.lhs;
    d["fa_abs"] = r.d.fa_abs;
    d["fb_abs"] = r.d.fb_abs;
    py::dict thms;
    for (const auto& [name, t] : r.theorems) {
        py::dict tj;
        tj["computed"] = t.computed;
        if (t.computed) {
            tj["rhs"] = t.rhs;
            tj["margin"] = t.margin;
        } else {
            tj["rhs"] = py::none();
            tj["margin"] = py::none();
        }
        tj["failed_properties"] = t.failed_properties;
        thms[name.c_str()] = tj;
    }
    d["theorems"] = thms;
    py::list groups;
    for (const auto& g : r.certificate_groups) {
        py::dict gj;
        gj["exponent"] = g.exponent;
        py::list certs;
        for (const auto& c : g.certificates) certs.append(certificate_dict(c));
        gj["certificates"] = certs;
        groups.append(gj);
    }
    d["certificate_groups"] = groups;
    return d;
}

py::dict tune_dict(const tuner::TuneResult& r) {
    py::dict d;
    d["best_params"] = r.best_params;
    d["best_bound"] = r.best_bound;
    py::list flags;
    for (bool f : r.at_boundary) flags.append(f);
    d["at_boundary"] = flags;
    d["iterations"] = r.iterations;
    if (r.bracket_history) {
        py::list hist;
        for (const auto& [lo, hi] : *r.bracket_history)
            hist.append(py::make_tuple(lo, hi));
        d["bracket_history"] = hist;
    } else {
        d["bracket_history"] = py::none();
    }
    return d;
}

py::dict quad_dict(const quad::QuadResult& r) {
    py::dict d;
    d["value"] = r.value;
    d["abs_error_estimate"] = r.abs_error_estimate;
    d["evaluations"] = r.evaluations;
    d["converged"] = r.converged;
    return d;
}

double spec_call(const std::function<double(double)>& slot, const char* name,
                 double x) {
    if (!slot)
        throw hhcert::InputError(std::string("FunctionSpec lacks ") + name);
    return slot(x);
}

}  // namespace

PYBIND11_MODULE(_hhcert, m) {
    m.doc() = "Trapezoid-defect bound certification engine";

    // Exception mapping. The base class registers first so the derived
    // translators, registered later, run before it and preserve the
    // specific type.
    auto base = py::register_exception<hhcert::Error>(m, "Error");
    py::register_exception<hhcert::DomainError>(m, "DomainError", base.ptr());
    py::register_exception<hhcert::OverflowError>(m, "OverflowError",
                                                  base.ptr());
    py::register_exception<hhcert::EvalError>(m, "EvalError", base.ptr());
    py::register_exception<hhcert::SyntaxError>(m, "ParseError", base.ptr());
    py::register_exception<hhcert::InputError>(m, "InputError", base.ptr());

    // ------------------------------------------------------- kernels --
    m.def("g1", &kernel::g1, py::arg("alpha"),
          "Closed form of integral_0^1 t*alpha^t dt.");
    m.def("g2", &kernel::g2, py::arg("alpha"),
          "Closed form of integral_0^1 alpha^t dt.");
    m.def(
        "alpha",
        [](double fa, double fb, double u, double v) {
            return kernel::alpha(EndpointDerivatives(fa, fb), u, v);
        },
        py::arg("fa"), py::arg("fb"), py::arg("u"), py::arg("v"),
        "fa^u * fb^(-v), evaluated in log space.");
    m.def("pow_tower_holds", &kernel::pow_tower_holds, py::arg("k"),
          py::arg("m"), py::arg("n"));
    m.def(
        "arithmetic_mean",
        [](double a, double b) {
            return kernel::mean(kernel::MeanKind::arithmetic(), a, b);
        },
        py::arg("a"), py::arg("b"));
    m.def(
        "logarithmic_mean",
        [](double a, double b) {
            return kernel::mean(kernel::MeanKind::logarithmic(), a, b);
        },
        py::arg("a"), py::arg("b"));
    m.def(
        "generalized_logarithmic_mean",
        [](double a, double b, double p) {
            return kernel::mean(kernel::MeanKind::generalized_logarithmic(p),
                                a, b);
        },
        py::arg("a"), py::arg("b"), py::arg("p"));

    // --------------------------------------------------- expressions --
    m.def(
        "eval_expression",
        [](const std::string& src, double x) {
            return expr::eval(expr::parse(src), x);
        },
        py::arg("src"), py::arg("x"),
        "Parse and evaluate a one-variable expression at x.");
    m.def(
        "expression_to_string",
        [](const std::string& src) { return expr::to_string(expr::parse(src)); },
        py::arg("src"), "Canonical fully parenthesized rendering.");

    // ----------------------------------------------------- functions --
    py::class_<funcspec::FunctionSpec>(m, "FunctionSpec")
        .def("f",
             [](const funcspec::FunctionSpec& fs, double x) {
                 return spec_call(fs.f, "f", x);
             },
             py::arg("x"))
        .def("fprime",
             [](const funcspec::FunctionSpec& fs, double x) {
                 return spec_call(fs.fprime, "fprime", x);
             },
             py::arg("x"))
        .def("has_f", &funcspec::FunctionSpec::has_f)
        .def("has_fprime", &funcspec::FunctionSpec::has_fprime)
        .def_readonly("label", &funcspec::FunctionSpec::label)
        .def_readonly("warnings", &funcspec::FunctionSpec::warnings);

    m.def("builtin_power_s", &funcspec::builtin_power_s, py::arg("s"),
          py::arg("c") = 1.0,
          "f(x) = c*x^s/s with derivative magnitude c*x^(s-1).");
    m.def("from_expressions", &funcspec::from_expressions,
          py::arg("f") = py::none(), py::arg("fprime") = py::none(),
          "Build a FunctionSpec from expression strings; cross-checks the "
          "pair when both are given.");

    // ---------------------------------------------------- quadrature --
    m.def(
        "integrate",
        [](const std::function<double(double)>& g, double lo, double hi,
           double rel_tol, double abs_tol, int max_depth) {
            return quad_dict(
                quad::integrate(g, lo, hi, rel_tol, abs_tol, max_depth));
        },
        py::arg("g"), py::arg("lo"), py::arg("hi"),
        py::arg("rel_tol") = quad::kDefaultRelTol,
        py::arg("abs_tol") = quad::kDefaultAbsTol,
        py::arg("max_depth") = quad::kDefaultMaxDepth,
        "Adaptive Simpson integration with per-panel Richardson "
        "extrapolation.");

    // -------------------------------------------------- certificates --
    m.def(
        "check_monotone_decreasing",
        [](const std::function<double(double)>& g, double a, double b, int n) {
            return certificate_dict(
                certify::check_monotone_decreasing(g, a, b, n));
        },
        py::arg("g"), py::arg("a"), py::arg("b"),
        py::arg("n") = certify::kDefaultGrid1D);
    m.def(
        "check_s_geometric_convexity",
        [](const std::function<double(double)>& g, double a, double b,
           double s, int n) {
            return certificate_dict(
                certify::check_s_geometric_convexity(g, a, b, s, n));
        },
        py::arg("g"), py::arg("a"), py::arg("b"), py::arg("s"),
        py::arg("n") = certify::kDefaultGrid3D);
    m.def(
        "check_geometric_convexity",
        [](const std::function<double(double)>& g, double a, double b, int n) {
            return certificate_dict(
                certify::check_geometric_convexity(g, a, b, n));
        },
        py::arg("g"), py::arg("a"), py::arg("b"),
        py::arg("n") = certify::kDefaultGrid3D);
    m.def(
        "check_range_unit",
        [](const std::function<double(double)>& g, double a, double b, int n) {
            return certificate_dict(certify::check_range_unit(g, a, b, n));
        },
        py::arg("g"), py::arg("a"), py::arg("b"),
        py::arg("n") = certify::kDefaultGrid1D);

    // --------------------------------------------------------- bounds --
    m.def("hh_lhs", &bounds::hh_lhs, py::arg("fs"), py::arg("a"),
          py::arg("b"), "Trapezoid defect of fs.f on [a, b].");
    m.def("lemma1_residual", &bounds::lemma1_residual, py::arg("fs"),
          py::arg("a"), py::arg("b"));
    m.def(
        "bound_t1",
        [](double fa, double fb, double s, double a, double b) {
            return bounds::bound_t1(EndpointDerivatives(fa, fb), s, a, b);
        },
        py::arg("fa"), py::arg("fb"), py::arg("s"), py::arg("a"),
        py::arg("b"));
    m.def(
        "bound_t2",
        [](double fa, double fb, double s, double p, double a, double b) {
            return bounds::bound_t2(EndpointDerivatives(fa, fb), s, p, a, b);
        },
        py::arg("fa"), py::arg("fb"), py::arg("s"), py::arg("p"),
        py::arg("a"), py::arg("b"));
    m.def(
        "bound_t3",
        [](double fa, double fb, double s, double q, double a, double b) {
            return bounds::bound_t3(EndpointDerivatives(fa, fb), s, q, a, b);
        },
        py::arg("fa"), py::arg("fb"), py::arg("s"), py::arg("q"),
        py::arg("a"), py::arg("b"));
    m.def(
        "bound_t4",
        [](double fa, double fb, double s, double mu1, double mu2, double a,
           double b) {
            return bounds::bound_t4(EndpointDerivatives(fa, fb), s, mu1, mu2,
                                    a, b);
        },
        py::arg("fa"), py::arg("fb"), py::arg("s"), py::arg("mu1"),
        py::arg("mu2"), py::arg("a"), py::arg("b"));
    m.def(
        "corollary_p2",
        [](double fa, double fb, double s, double a, double b) {
            return bounds::corollary_p2(EndpointDerivatives(fa, fb), s, a, b);
        },
        py::arg("fa"), py::arg("fb"), py::arg("s"), py::arg("a"),
        py::arg("b"));
    m.def(
        "classify_regime",
        [](const funcspec::FunctionSpec& fs, double a, double b, int n) {
            return std::string(
                bounds::regime_name(bounds::classify_regime(fs, a, b, n)));
        },
        py::arg("fs"), py::arg("a"), py::arg("b"),
        py::arg("n") = certify::kDefaultGrid1D);
    m.def(
        "verdict",
        [](const funcspec::FunctionSpec& fs, double a, double b, double s,
           std::optional<double> p, std::optional<double> q, double mu1,
           double mu2, const std::string& mode) {
            bounds::ParamSet ps;
            ps.s = s;
            ps.p = p;
            ps.q = q;
            ps.mu1 = mu1;
            ps.mu2 = mu2;
            ps.mode = parse_mode(mode);
            return report_dict(bounds::verdict(fs, ps, a, b));
        },
        py::arg("fs"), py::arg("a"), py::arg("b"), py::arg("s") = 0.5,
        py::arg("p") = py::none(), py::arg("q") = py::none(),
        py::arg("mu1") = 0.5, py::arg("mu2") = 0.5,
        py::arg("mode") = "strict",
        "Full report: defect, regime, hypothesis certificates, and the "
        "four bounds.");

    // -------------------------------------------------- power family --
    m.def("prop_lhs", &ma::prop_lhs, py::arg("s"), py::arg("a"),
          py::arg("b"));
    m.def("prop1_rhs", &ma::prop1_rhs, py::arg("s"), py::arg("a"),
          py::arg("b"));
    m.def("prop2_rhs", &ma::prop2_rhs, py::arg("s"), py::arg("p"),
          py::arg("a"), py::arg("b"));
    m.def("prop2_rhs_printed", &ma::prop2_rhs_printed, py::arg("s"),
          py::arg("p"), py::arg("a"), py::arg("b"));
    m.def("prop3_rhs", &ma::prop3_rhs, py::arg("s"), py::arg("q"),
          py::arg("a"), py::arg("b"));
    m.def("prop3_rhs_printed", &ma::prop3_rhs_printed, py::arg("s"),
          py::arg("q"), py::arg("a"), py::arg("b"));
    m.def("prop4_rhs", &ma::prop4_rhs, py::arg("s"), py::arg("mu1"),
          py::arg("mu2"), py::arg("a"), py::arg("b"));
    m.def(
        "reproduce_example2",
        [](double corruption) {
            py::list rows;
            for (const auto& row : ma::reproduce_example2(corruption)) {
                py::dict d;
                d["s"] = row.s;
                d["a"] = row.a;
                d["b"] = row.b;
                d["lhs"] = row.lhs;
                d["rhs"] = row.rhs;
                d["margin"] = row.margin;
                d["ref_lhs"] = row.ref_lhs;
                d["ref_rhs"] = row.ref_rhs;
                rows.append(d);
            }
            return rows;
        },
        py::arg("corruption") = 0.0,
        "Recompute the three-instance demonstration table.");

    // --------------------------------------------------------- tuner --
    m.def(
        "tune_p",
        [](double fa, double fb, double s, double a, double b,
           bool record_history) {
            return tune_dict(tuner::tune_p(EndpointDerivatives(fa, fb), s, a,
                                           b, record_history));
        },
        py::arg("fa"), py::arg("fb"), py::arg("s"), py::arg("a"),
        py::arg("b"), py::arg("record_history") = false);
    m.def(
        "tune_mu",
        [](double fa, double fb, double s, double a, double b,
           bool record_history) {
            return tune_dict(tuner::tune_mu(EndpointDerivatives(fa, fb), s, a,
                                            b, record_history));
        },
        py::arg("fa"), py::arg("fb"), py::arg("s"), py::arg("a"),
        py::arg("b"), py::arg("record_history") = false);
    m.def(
        "grid_oracle_p",
        [](double fa, double fb, double s, double a, double b, int n) {
            return tuner::grid_oracle_p(EndpointDerivatives(fa, fb), s, a, b,
                                        n);
        },
        py::arg("fa"), py::arg("fb"), py::arg("s"), py::arg("a"),
        py::arg("b"), py::arg("n") = 10000);
    m.def(
        "grid_oracle_mu",
        [](double fa, double fb, double s, double a, double b, int n) {
            return tuner::grid_oracle_mu(EndpointDerivatives(fa, fb), s, a, b,
                                         n);
        },
        py::arg("fa"), py::arg("fb"), py::arg("s"), py::arg("a"),
        py::arg("b"), py::arg("n") = 512);
    m.def(
        "tightness_rank",
        [](const funcspec::FunctionSpec& fs, double s, double a, double b) {
            py::list out;
            for (const auto& rb : tuner::tightness_rank(fs, s, a, b)) {
                py::dict d;
                d["theorem"] = rb.theorem;
                d["bound"] = rb.bound;
                out.append(d);
            }
            return out;
        },
        py::arg("fs"), py::arg("s"), py::arg("a"), py::arg("b"),
        "All four bounds at the endpoint derivatives of fs, tightest "
        "first.");

    m.attr("mu_delta") = tuner::kMuDelta;
    m.attr("p_lo") = tuner::kPLo;
    m.attr("p_hi") = tuner::kPHi;

    // ----------------------------------------------------------- cli --
    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = hhcert::cli::run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"),
        "Run one command-line invocation in process; returns (exit_code, "
        "stdout, stderr).");
}
