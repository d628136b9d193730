#include "hhcert/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hhcert/bounds.hpp"
#include "hhcert/certify.hpp"
#include "hhcert/errors.hpp"
#include "hhcert/funcspec.hpp"
#include "hhcert/kernel.hpp"
#include "hhcert/means_apps.hpp"
#include "hhcert/rng.hpp"
#include "hhcert/tuner.hpp"

namespace hhcert::cli {

namespace {

using nlohmann::json;

constexpr double kMarginSlack = 1e-12;
constexpr double kReproduceTol = 1e-6;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Buffers output when --out is set and writes it in one atomic step
// (temp file + rename) so readers never observe a partial report.
class Sink {
  public:
    Sink(std::ostream& fallback, std::optional<std::string> path)
        : fallback_(fallback), path_(std::move(path)) {}

    std::ostream& stream() { return path_ ? buffer_ : fallback_; }

    void finish() {
        if (!path_) return;
        const std::string tmp = *path_ + ".tmp";
        {
            std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
            if (!f) throw InputError("cannot open output file: " + tmp);
            f << buffer_.str();
            f.flush();
            if (!f) throw InputError("failed writing output file: " + tmp);
        }
        if (std::rename(tmp.c_str(), path_->c_str()) != 0) {
            std::remove(tmp.c_str());
            throw InputError("cannot move output into place: " + *path_);
        }
    }

  private:
    std::ostream& fallback_;
    std::optional<std::string> path_;
    std::ostringstream buffer_;
};

// A flag value plus whether anything (flag or config) actually set it.
template <typename T>
struct Tracked {
    T value{};
    bool set = false;
};

// One config-file key: the flag that can override it, how to absorb a
// JSON value, and how to mark the slot as flag-set after parsing.
struct KeyBinding {
    CLI::Option* opt = nullptr;
    std::function<void(const json&)> absorb;
    std::function<void()> mark_set;
};

using Bindings = std::map<std::string, KeyBinding>;

double json_number(const json& v, const std::string& key) {
    if (!v.is_number())
        throw InputError("config key '" + key + "' must be a number");
    return v.get<double>();
}

void bind_double(Bindings& b, const std::string& key, CLI::Option* opt,
                 Tracked<double>* slot) {
    b[key] = {opt,
              [slot, key](const json& v) {
                  slot->value = json_number(v, key);
                  slot->set = true;
              },
              [slot] { slot->set = true; }};
}

void bind_int(Bindings& b, const std::string& key, CLI::Option* opt,
              Tracked<long long>* slot) {
    b[key] = {opt,
              [slot, key](const json& v) {
                  if (!v.is_number_integer())
                      throw InputError("config key '" + key +
                                       "' must be an integer");
                  slot->value = v.get<long long>();
                  slot->set = true;
              },
              [slot] { slot->set = true; }};
}

void bind_string(Bindings& b, const std::string& key, CLI::Option* opt,
                 Tracked<std::string>* slot) {
    b[key] = {opt,
              [slot, key](const json& v) {
                  if (!v.is_string())
                      throw InputError("config key '" + key +
                                       "' must be a string");
                  slot->value = v.get<std::string>();
                  slot->set = true;
              },
              [slot] { slot->set = true; }};
}

// Flags shared by every subcommand.
struct GlobalOpts {
    Tracked<std::string> mode{"strict", false};
    Tracked<std::string> format{"text", false};
    Tracked<std::string> out;
    Tracked<long long> seed{0, false};
    Tracked<std::string> config;
};

void add_globals(CLI::App* sub, GlobalOpts& g, Bindings& b) {
    auto* mode =
        sub->add_option("--mode", g.mode.value, "strict or paper_compat");
    auto* format =
        sub->add_option("--format", g.format.value, "text, csv, or json");
    auto* out = sub->add_option("--out", g.out.value,
                                "write the report to this file atomically");
    auto* seed = sub->add_option("--seed", g.seed.value, "RNG seed for sweeps");
    sub->add_option("--config", g.config.value,
                    "JSON file of defaults; flags override");
    bind_string(b, "mode", mode, &g.mode);
    bind_string(b, "format", format, &g.format);
    bind_string(b, "out", out, &g.out);
    bind_int(b, "seed", seed, &g.seed);
}

// Applies the config file underneath whatever the command line already
// set: flags win, config fills the gaps, unknown keys are errors.
void merge_config(CLI::App* sub, const GlobalOpts& g, Bindings& b) {
    for (auto& [key, kb] : b)
        if (kb.opt && kb.opt->count() > 0) kb.mark_set();
    if (!sub->count("--config")) return;
    std::ifstream f(g.config.value);
    if (!f) throw InputError("cannot open config file: " + g.config.value);
    json doc;
    try {
        doc = json::parse(f);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw InputError("config must be a JSON object of key: value pairs");
    for (const auto& [key, value] : doc.items()) {
        auto it = b.find(key);
        if (it == b.end()) throw InputError("unknown config key: " + key);
        if (it->second.opt && it->second.opt->count() > 0)
            continue;  // command line wins
        it->second.absorb(value);
    }
}

bounds::Mode parse_mode(const std::string& m) {
    if (m == "strict") return bounds::Mode::strict;
    if (m == "paper_compat") return bounds::Mode::paper_compat;
    throw InputError("mode must be 'strict' or 'paper_compat', got '" + m +
                     "'");
}

enum class Format { text, csv, json_fmt };

Format parse_format(const std::string& f) {
    if (f == "text") return Format::text;
    if (f == "csv") return Format::csv;
    if (f == "json") return Format::json_fmt;
    throw InputError("format must be 'text', 'csv', or 'json', got '" + f +
                     "'");
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& cells) {
    os << join(cells, ",") << "\n";
}

json certificate_json(const certify::SampledCertificate& c) {
    json j;
    j["property"] = certify::property_name(c.property);
    j["verdict"] = c.passed() ? "pass" : "fail";
    j["grid"] = c.grid;
    j["worst_margin"] = c.worst_margin;
    if (c.counterexample) {
        j["counterexample"] = {{"point", c.counterexample->point},
                               {"lhs", c.counterexample->lhs},
                               {"rhs", c.counterexample->rhs}};
    } else {
        j["counterexample"] = nullptr;
    }
    return j;
}

void render_certificate_text(std::ostream& os,
                             const certify::SampledCertificate& c,
                             const char* indent) {
    os << indent << certify::property_name(c.property) << ": "
       << (c.passed() ? "pass" : "fail") << " (grid ";
    for (size_t i = 0; i < c.grid.size(); ++i)
        os << (i ? "x" : "") << c.grid[i];
    os << ", worst_margin " << fmt17(c.worst_margin) << ")\n";
    if (c.counterexample) {
        os << indent << "  counterexample: point (";
        for (size_t i = 0; i < c.counterexample->point.size(); ++i)
            os << (i ? ", " : "") << fmt17(c.counterexample->point[i]);
        os << "), lhs " << fmt17(c.counterexample->lhs) << ", rhs "
           << fmt17(c.counterexample->rhs) << "\n";
    }
}

// ---------------------------------------------------------------- eval --

struct EvalOpts {
    Tracked<std::string> f_src;
    Tracked<std::string> fprime_src;
    Tracked<std::string> builtin;
    Tracked<double> s{0.5, false};
    Tracked<double> c{1.0, false};
    Tracked<double> a;
    Tracked<double> b;
    Tracked<double> p;
    Tracked<double> q;
    Tracked<double> mu1{0.5, false};
    Tracked<double> mu2{0.5, false};
};

funcspec::FunctionSpec build_function(const Tracked<std::string>& builtin,
                                      const Tracked<std::string>& f_src,
                                      const Tracked<std::string>& fp_src,
                                      const Tracked<double>& s,
                                      const Tracked<double>& c,
                                      const char* who) {
    if (builtin.set) {
        if (builtin.value != "power_s")
            throw InputError(std::string(who) + ": unknown builtin '" +
                             builtin.value + "' (available: power_s)");
        if (!s.set)
            throw InputError(std::string(who) +
                             ": builtin power_s requires --s");
        return funcspec::builtin_power_s(s.value, c.value);
    }
    if (f_src.set || fp_src.set) {
        std::optional<std::string> f, fp;
        if (f_src.set) f = f_src.value;
        if (fp_src.set) fp = fp_src.value;
        return funcspec::from_expressions(f, fp);
    }
    throw InputError(std::string(who) +
                     ": provide --builtin power_s or --f/--fprime "
                     "expressions");
}

void require_ab(const Tracked<double>& a, const Tracked<double>& b,
                const char* who) {
    if (!a.set || !b.set)
        throw InputError(std::string(who) + ": requires --a and --b");
}

json eval_report_json(const bounds::BoundReport& r,
                      const std::vector<std::string>& warnings) {
    json j;
    j["mode"] = bounds::mode_name(r.mode);
    j["regime"] = bounds::regime_name(r.regime);
    j["lhs"] = r.lhs;
    j["fa_abs"] = r.d.fa_abs;
    j["fb_abs"] = r.d.fb_abs;
    j["warnings"] = warnings;
    json thms = json::object();
    json negat = json::array();
    for (const auto& [name, t] : r.theorems) {
        json tj;
        tj["computed"] = t.computed;
        if (t.computed) {
            tj["rhs"] = t.rhs;
            tj["margin"] = t.margin;
            if (t.margin < -kMarginSlack) negat.push_back(name);
        }
        tj["failed_properties"] = t.failed_properties;
        thms[name] = tj;
    }
    j["theorems"] = thms;
    j["negative_margins"] = negat;
    json groups = json::array();
    for (const auto& g : r.certificate_groups) {
        json gj;
        gj["exponent"] = g.exponent;
        json certs = json::array();
        for (const auto& c : g.certificates)
            certs.push_back(certificate_json(c));
        gj["certificates"] = certs;
        groups.push_back(gj);
    }
    j["certificate_groups"] = groups;
    return j;
}

void render_eval(std::ostream& os, Format fmt, const bounds::BoundReport& r,
                 const std::vector<std::string>& warnings) {
    static const char* kNames[] = {"t1", "t2", "t3", "t4"};
    if (fmt == Format::json_fmt) {
        os << eval_report_json(r, warnings).dump(2) << "\n";
        return;
    }
    if (fmt == Format::csv) {
        std::vector<std::string> header = {"mode", "regime", "lhs", "fa_abs",
                                           "fb_abs"};
        std::vector<std::string> row = {
            bounds::mode_name(r.mode), bounds::regime_name(r.regime),
            fmt17(r.lhs), fmt17(r.d.fa_abs), fmt17(r.d.fb_abs)};
        for (const char* name : kNames) {
            header.push_back(std::string(name) + "_rhs");
            header.push_back(std::string(name) + "_margin");
            header.push_back(std::string(name) + "_failed");
            const auto& t = r.theorems.at(name);
            row.push_back(t.computed ? fmt17(t.rhs) : "");
            row.push_back(t.computed ? fmt17(t.margin) : "");
            row.push_back(join(t.failed_properties, ";"));
        }
        write_csv_row(os, header);
        write_csv_row(os, row);
        return;
    }
    os << "mode: " << bounds::mode_name(r.mode) << "\n";
    os << "regime: " << bounds::regime_name(r.regime) << "\n";
    for (const auto& w : warnings) os << "warning: " << w << "\n";
    os << "lhs: " << fmt17(r.lhs) << "\n";
    os << "fa_abs: " << fmt17(r.d.fa_abs) << "  fb_abs: " << fmt17(r.d.fb_abs)
       << "\n";
    for (const char* name : kNames) {
        const auto& t = r.theorems.at(name);
        os << name << ": ";
        if (t.computed) {
            os << "rhs " << fmt17(t.rhs) << ", margin " << fmt17(t.margin);
            if (t.margin < -kMarginSlack)
                os << "  ** NEGATIVE MARGIN (bound not certified here) **";
            os << "\n";
        } else {
            os << "rejected (" << join(t.failed_properties, ", ") << ")\n";
        }
    }
    for (const auto& g : r.certificate_groups) {
        os << "certificates for exponent " << fmt17(g.exponent) << ":\n";
        for (const auto& c : g.certificates)
            render_certificate_text(os, c, "  ");
    }
}

int cmd_eval(const GlobalOpts& g, const EvalOpts& e, std::ostream& os) {
    require_ab(e.a, e.b, "eval");
    funcspec::FunctionSpec fs =
        build_function(e.builtin, e.f_src, e.fprime_src, e.s, e.c, "eval");
    bounds::ParamSet ps;
    ps.s = e.s.value;
    if (e.p.set) ps.p = e.p.value;
    if (e.q.set) ps.q = e.q.value;
    ps.mu1 = e.mu1.value;
    ps.mu2 = e.mu2.value;
    ps.mode = parse_mode(g.mode.value);
    const bounds::BoundReport r = bounds::verdict(fs, ps, e.a.value, e.b.value);
    render_eval(os, parse_format(g.format.value), r, fs.warnings);
    bool any_rejected = false;
    bool any_violation = false;
    for (const auto& [name, t] : r.theorems) {
        if (!t.computed)
            any_rejected = true;
        else if (t.margin < -kMarginSlack)
            any_violation = true;
    }
    if (any_rejected) return 2;
    // A certified bound below the lhs is a soundness failure; the same
    // sign in paper_compat mode is data about the uncertified regime.
    if (any_violation && r.mode == bounds::Mode::strict) return 1;
    return 0;
}

// -------------------------------------------------------------- verify --

struct VerifyOpts {
    Tracked<long long> samples{1000, false};
    Tracked<double> p;
    Tracked<double> q;
    Tracked<double> mu1{0.5, false};
    Tracked<double> mu2{0.5, false};
};

std::string verify_verdict(const bounds::BoundReport& r, double* margin_min) {
    bool any = false;
    double m = 0.0;
    for (const auto& [name, t] : r.theorems) {
        if (!t.computed) continue;
        if (!any || t.margin < m) m = t.margin;
        any = true;
    }
    if (!any) return "rejected";
    *margin_min = m;
    return m < -kMarginSlack ? "fail" : "pass";
}

int cmd_verify(const GlobalOpts& g, const VerifyOpts& v, std::ostream& os) {
    if (v.samples.value < 1) throw InputError("verify: requires --samples >= 1");
    const bounds::Mode mode = parse_mode(g.mode.value);
    const Format fmt = parse_format(g.format.value);

    UniformRng gen(static_cast<std::uint64_t>(g.seed.value));
    static const char* kNames[] = {"t1", "t2", "t3", "t4"};
    long long violations = 0;
    json jrows = json::array();
    std::ostringstream csv;
    write_csv_row(csv, {"s", "a", "b", "c", "fa_abs", "fb_abs", "lhs",
                        "rhs_t1", "rhs_t2", "rhs_t3", "rhs_t4", "margin_min",
                        "regime", "verdict"});
    for (long long i = 0; i < v.samples.value; ++i) {
        const double s = 0.02 + 0.96 * gen.uniform();
        const double a = 0.02 + 0.9 * gen.uniform();
        const double b = a + (0.995 - a) * (0.02 + 0.98 * gen.uniform());
        const double u = gen.uniform();
        // Strict mode samples the certified family: c <= a^(1-s) keeps
        // |f'| inside (0, 1] on [a, b]. Compat mode uses the reference
        // member c = 1, whose derivative exceeds 1 below x = 1.
        const double c = mode == bounds::Mode::strict
                             ? std::pow(a, 1.0 - s) * (0.1 + 0.9 * u)
                             : 1.0;
        funcspec::FunctionSpec fs = funcspec::builtin_power_s(s, c);
        bounds::ParamSet ps;
        ps.s = s;
        if (v.p.set) ps.p = v.p.value;
        if (v.q.set) ps.q = v.q.value;
        ps.mu1 = v.mu1.value;
        ps.mu2 = v.mu2.value;
        ps.mode = mode;
        const bounds::BoundReport report = bounds::verdict(fs, ps, a, b);

        double margin_min = 0.0;
        const std::string verdict = verify_verdict(report, &margin_min);
        if (verdict == "fail") ++violations;
        std::vector<std::string> cells = {
            fmt17(s), fmt17(a), fmt17(b), fmt17(c),
            fmt17(report.d.fa_abs), fmt17(report.d.fb_abs), fmt17(report.lhs)};
        json jr;
        jr["s"] = s;
        jr["a"] = a;
        jr["b"] = b;
        jr["c"] = c;
        jr["fa_abs"] = report.d.fa_abs;
        jr["fb_abs"] = report.d.fb_abs;
        jr["lhs"] = report.lhs;
        for (const char* name : kNames) {
            const auto& t = report.theorems.at(name);
            cells.push_back(t.computed ? fmt17(t.rhs) : "");
            jr[std::string("rhs_") + name] =
                t.computed ? json(t.rhs) : json(nullptr);
        }
        cells.push_back(verdict == "rejected" ? "" : fmt17(margin_min));
        cells.push_back(bounds::regime_name(report.regime));
        cells.push_back(verdict);
        jr["margin_min"] =
            verdict == "rejected" ? json(nullptr) : json(margin_min);
        jr["regime"] = bounds::regime_name(report.regime);
        jr["verdict"] = verdict;
        write_csv_row(csv, cells);
        jrows.push_back(jr);
    }

    if (fmt == Format::json_fmt) {
        json j;
        j["mode"] = bounds::mode_name(mode);
        j["seed"] = g.seed.value;
        j["samples"] = v.samples.value;
        j["violations"] = violations;
        j["rows"] = jrows;
        os << j.dump(2) << "\n";
    } else {
        os << csv.str();
        if (fmt == Format::text)
            os << "# samples=" << v.samples.value
               << " violations=" << violations << "\n";
    }
    // Negative margins fail the run only when the bounds were certified;
    // in paper_compat mode they are reported data, not errors.
    return (violations > 0 && mode == bounds::Mode::strict) ? 1 : 0;
}

// ------------------------------------------------------------- certify --

struct CertifyOpts {
    Tracked<std::string> fprime_src;
    Tracked<std::string> builtin;
    Tracked<double> s{0.5, false};
    Tracked<double> c{1.0, false};
    Tracked<double> a;
    Tracked<double> b;
    Tracked<std::string> property;
    Tracked<long long> grid;
};

int cmd_certify(const GlobalOpts& g, const CertifyOpts& c, std::ostream& os) {
    require_ab(c.a, c.b, "certify");
    if (!c.property.set)
        throw InputError(
            "certify: requires --property (monotone|sconvex|gconvex|range)");
    Tracked<std::string> no_f;
    funcspec::FunctionSpec fs =
        build_function(c.builtin, no_f, c.fprime_src, c.s, c.c, "certify");
    if (!fs.has_fprime())
        throw InputError("certify: requires --fprime or --builtin");
    auto magnitude = [fp = fs.fprime](double x) { return std::fabs(fp(x)); };

    certify::SampledCertificate cert;
    const std::string& prop = c.property.value;
    if (prop == "monotone") {
        const int n = c.grid.set ? static_cast<int>(c.grid.value)
                                 : certify::kDefaultGrid1D;
        cert = certify::check_monotone_decreasing(magnitude, c.a.value,
                                                  c.b.value, n);
    } else if (prop == "sconvex") {
        if (!c.s.set)
            throw InputError("certify: --property sconvex requires --s");
        const int n = c.grid.set ? static_cast<int>(c.grid.value)
                                 : certify::kDefaultGrid3D;
        cert = certify::check_s_geometric_convexity(magnitude, c.a.value,
                                                    c.b.value, c.s.value, n);
    } else if (prop == "gconvex") {
        const int n = c.grid.set ? static_cast<int>(c.grid.value)
                                 : certify::kDefaultGrid3D;
        cert = certify::check_geometric_convexity(magnitude, c.a.value,
                                                  c.b.value, n);
    } else if (prop == "range") {
        const int n = c.grid.set ? static_cast<int>(c.grid.value)
                                 : certify::kDefaultGrid1D;
        cert = certify::check_range_unit(magnitude, c.a.value, c.b.value, n);
    } else {
        throw InputError("certify: unknown property '" + prop +
                         "' (monotone|sconvex|gconvex|range)");
    }

    const Format fmt = parse_format(g.format.value);
    if (fmt == Format::json_fmt) {
        os << certificate_json(cert).dump(2) << "\n";
    } else if (fmt == Format::csv) {
        std::string gridstr;
        for (size_t i = 0; i < cert.grid.size(); ++i)
            gridstr += (i ? "x" : "") + std::to_string(cert.grid[i]);
        std::vector<std::string> ce = {"", "", ""};
        if (cert.counterexample) {
            std::vector<std::string> pt;
            for (double x : cert.counterexample->point) pt.push_back(fmt17(x));
            ce = {join(pt, ";"), fmt17(cert.counterexample->lhs),
                  fmt17(cert.counterexample->rhs)};
        }
        write_csv_row(os, {"property", "verdict", "grid", "worst_margin",
                           "ce_point", "ce_lhs", "ce_rhs"});
        write_csv_row(os, {certify::property_name(cert.property),
                           cert.passed() ? "pass" : "fail", gridstr,
                           fmt17(cert.worst_margin), ce[0], ce[1], ce[2]});
    } else {
        render_certificate_text(os, cert, "");
    }
    return cert.passed() ? 0 : 2;
}

// ---------------------------------------------------------------- tune --

struct TuneOpts {
    Tracked<std::string> theorem;
    Tracked<double> fa;
    Tracked<double> fb;
    Tracked<std::string> fprime_src;
    Tracked<std::string> builtin;
    Tracked<double> s{0.5, false};
    Tracked<double> c{1.0, false};
    Tracked<double> a;
    Tracked<double> b;
};

json tune_result_json(const std::string& theorem, const tuner::TuneResult& r) {
    json j;
    j["theorem"] = theorem;
    j["best_params"] = r.best_params;
    j["best_bound"] = r.best_bound;
    json flags = json::array();
    for (bool f : r.at_boundary) flags.push_back(f);
    j["at_boundary"] = flags;
    j["iterations"] = r.iterations;
    return j;
}

int cmd_tune(const GlobalOpts& g, const TuneOpts& t, std::ostream& os) {
    require_ab(t.a, t.b, "tune");
    if (!t.theorem.set)
        throw InputError("tune: requires --theorem (t2|t4|rank)");
    if (!t.s.set) throw InputError("tune: requires --s");
    const Format fmt = parse_format(g.format.value);
    const std::string& thm = t.theorem.value;

    if (thm == "rank") {
        Tracked<std::string> no_f;
        funcspec::FunctionSpec fs = build_function(t.builtin, no_f,
                                                   t.fprime_src, t.s, t.c,
                                                   "tune rank");
        if (!fs.has_fprime())
            throw InputError("tune rank: requires --fprime or --builtin");
        const auto ranking =
            tuner::tightness_rank(fs, t.s.value, t.a.value, t.b.value);
        if (fmt == Format::json_fmt) {
            json arr = json::array();
            for (const auto& rb : ranking)
                arr.push_back({{"theorem", rb.theorem}, {"bound", rb.bound}});
            os << json{{"ranking", arr}}.dump(2) << "\n";
        } else if (fmt == Format::csv) {
            write_csv_row(os, {"rank", "theorem", "bound"});
            for (size_t i = 0; i < ranking.size(); ++i)
                write_csv_row(os, {std::to_string(i + 1), ranking[i].theorem,
                                   fmt17(ranking[i].bound)});
        } else {
            for (size_t i = 0; i < ranking.size(); ++i)
                os << (i + 1) << ". " << ranking[i].theorem << " "
                   << fmt17(ranking[i].bound) << "\n";
        }
        return 0;
    }

    if (!t.fa.set || !t.fb.set)
        throw InputError("tune: --theorem " + thm + " requires --fa and --fb");
    const kernel::EndpointDerivatives d(t.fa.value, t.fb.value);
    tuner::TuneResult r;
    if (thm == "t2")
        r = tuner::tune_p(d, t.s.value, t.a.value, t.b.value);
    else if (thm == "t4")
        r = tuner::tune_mu(d, t.s.value, t.a.value, t.b.value);
    else
        throw InputError("tune: unknown theorem '" + thm + "' (t2|t4|rank)");

    if (fmt == Format::json_fmt) {
        os << tune_result_json(thm, r).dump(2) << "\n";
    } else if (fmt == Format::csv) {
        write_csv_row(os, {"theorem", "param1", "param2", "best_bound",
                           "at_boundary1", "at_boundary2", "iterations"});
        std::vector<std::string> row = {thm, fmt17(r.best_params[0])};
        row.push_back(r.best_params.size() > 1 ? fmt17(r.best_params[1]) : "");
        row.push_back(fmt17(r.best_bound));
        row.push_back(r.at_boundary[0] ? "true" : "false");
        row.push_back(r.at_boundary.size() > 1
                          ? (r.at_boundary[1] ? "true" : "false")
                          : "");
        row.push_back(std::to_string(r.iterations));
        write_csv_row(os, row);
    } else {
        os << "theorem: " << thm << "\n";
        const char* pname = thm == "t2" ? "p" : "mu";
        for (size_t i = 0; i < r.best_params.size(); ++i)
            os << pname
               << (r.best_params.size() > 1 ? std::to_string(i + 1)
                                            : std::string())
               << ": " << fmt17(r.best_params[i])
               << (r.at_boundary[i] ? "  (at boundary)" : "") << "\n";
        os << "best_bound: " << fmt17(r.best_bound) << "\n";
        os << "iterations: " << r.iterations << "\n";
    }
    return 0;
}

// ----------------------------------------------------------- reproduce --

struct ReproduceOpts {
    Tracked<double> corrupt{0.0, false};
};

int cmd_reproduce(const GlobalOpts& g, const ReproduceOpts& r,
                  std::ostream& os) {
    const Format fmt = parse_format(g.format.value);
    const auto rows = means_apps::reproduce_example2(r.corrupt.value);
    bool all_match = true;
    json jrows = json::array();
    std::ostringstream csv;
    write_csv_row(csv, {"s", "a", "b", "lhs", "ref_lhs", "rel_lhs", "rhs",
                        "ref_rhs", "rel_rhs", "status"});
    std::ostringstream text;
    for (const auto& row : rows) {
        const double rel_lhs =
            std::fabs(row.lhs - row.ref_lhs) / std::fabs(row.ref_lhs);
        const double rel_rhs =
            std::fabs(row.rhs - row.ref_rhs) / std::fabs(row.ref_rhs);
        const bool ok = rel_lhs <= kReproduceTol && rel_rhs <= kReproduceTol;
        all_match = all_match && ok;
        const char* status = ok ? "pass" : "fail";
        write_csv_row(csv,
                      {fmt17(row.s), fmt17(row.a), fmt17(row.b),
                       fmt17(row.lhs), fmt17(row.ref_lhs), fmt17(rel_lhs),
                       fmt17(row.rhs), fmt17(row.ref_rhs), fmt17(rel_rhs),
                       status});
        jrows.push_back({{"s", row.s},
                         {"a", row.a},
                         {"b", row.b},
                         {"lhs", row.lhs},
                         {"ref_lhs", row.ref_lhs},
                         {"rel_lhs", rel_lhs},
                         {"rhs", row.rhs},
                         {"ref_rhs", row.ref_rhs},
                         {"rel_rhs", rel_rhs},
                         {"status", status}});
        text << "s=" << fmt17(row.s) << " a=" << fmt17(row.a)
             << " b=" << fmt17(row.b) << "\n"
             << "  lhs " << fmt17(row.lhs) << " vs " << fmt17(row.ref_lhs)
             << " (rel " << fmt17(rel_lhs) << ")\n"
             << "  rhs " << fmt17(row.rhs) << " vs " << fmt17(row.ref_rhs)
             << " (rel " << fmt17(rel_rhs) << ")\n"
             << "  " << (ok ? "PASS" : "FAIL") << "\n";
    }
    if (fmt == Format::json_fmt) {
        json j;
        j["tolerance"] = kReproduceTol;
        j["all_match"] = all_match;
        j["rows"] = jrows;
        os << j.dump(2) << "\n";
    } else if (fmt == Format::csv) {
        os << csv.str();
    } else {
        os << text.str();
        os << (all_match ? "all rows match" : "MISMATCH") << " (tolerance "
           << fmt17(kReproduceTol) << " relative)\n";
    }
    return all_match ? 0 : 1;
}

// ---------------------------------------------------------- dispatcher --

int run_impl(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
    CLI::App app{"trapezoid-defect bound certification"};
    app.require_subcommand(1);

    GlobalOpts g;
    EvalOpts e;
    VerifyOpts v;
    CertifyOpts c;
    TuneOpts t;
    ReproduceOpts rep;
    Bindings be, bv, bc, bt, br;

    CLI::App* eval = app.add_subcommand("eval", "evaluate bounds and verdict");
    add_globals(eval, g, be);
    bind_string(be, "f", eval->add_option("--f", e.f_src.value), &e.f_src);
    bind_string(be, "fprime", eval->add_option("--fprime", e.fprime_src.value),
                &e.fprime_src);
    bind_string(be, "builtin", eval->add_option("--builtin", e.builtin.value),
                &e.builtin);
    bind_double(be, "s", eval->add_option("--s", e.s.value), &e.s);
    bind_double(be, "c", eval->add_option("--c", e.c.value), &e.c);
    bind_double(be, "a", eval->add_option("--a", e.a.value), &e.a);
    bind_double(be, "b", eval->add_option("--b", e.b.value), &e.b);
    bind_double(be, "p", eval->add_option("--p", e.p.value), &e.p);
    bind_double(be, "q", eval->add_option("--q", e.q.value), &e.q);
    bind_double(be, "mu1", eval->add_option("--mu1", e.mu1.value), &e.mu1);
    bind_double(be, "mu2", eval->add_option("--mu2", e.mu2.value), &e.mu2);

    CLI::App* verify =
        app.add_subcommand("verify", "seeded soundness sweep, CSV output");
    add_globals(verify, g, bv);
    bind_int(bv, "samples", verify->add_option("--samples", v.samples.value),
             &v.samples);
    bind_double(bv, "p", verify->add_option("--p", v.p.value), &v.p);
    bind_double(bv, "q", verify->add_option("--q", v.q.value), &v.q);
    bind_double(bv, "mu1", verify->add_option("--mu1", v.mu1.value), &v.mu1);
    bind_double(bv, "mu2", verify->add_option("--mu2", v.mu2.value), &v.mu2);

    CLI::App* certify_cmd =
        app.add_subcommand("certify", "check one hypothesis on a grid");
    add_globals(certify_cmd, g, bc);
    bind_string(bc, "fprime",
                certify_cmd->add_option("--fprime", c.fprime_src.value),
                &c.fprime_src);
    bind_string(bc, "builtin",
                certify_cmd->add_option("--builtin", c.builtin.value),
                &c.builtin);
    bind_double(bc, "s", certify_cmd->add_option("--s", c.s.value), &c.s);
    bind_double(bc, "c", certify_cmd->add_option("--c", c.c.value), &c.c);
    bind_double(bc, "a", certify_cmd->add_option("--a", c.a.value), &c.a);
    bind_double(bc, "b", certify_cmd->add_option("--b", c.b.value), &c.b);
    bind_string(bc, "property",
                certify_cmd->add_option("--property", c.property.value),
                &c.property);
    bind_int(bc, "grid", certify_cmd->add_option("--grid", c.grid.value),
             &c.grid);

    CLI::App* tune = app.add_subcommand("tune", "minimize a free parameter");
    add_globals(tune, g, bt);
    bind_string(bt, "theorem", tune->add_option("--theorem", t.theorem.value),
                &t.theorem);
    bind_double(bt, "fa", tune->add_option("--fa", t.fa.value), &t.fa);
    bind_double(bt, "fb", tune->add_option("--fb", t.fb.value), &t.fb);
    bind_string(bt, "fprime", tune->add_option("--fprime", t.fprime_src.value),
                &t.fprime_src);
    bind_string(bt, "builtin", tune->add_option("--builtin", t.builtin.value),
                &t.builtin);
    bind_double(bt, "s", tune->add_option("--s", t.s.value), &t.s);
    bind_double(bt, "c", tune->add_option("--c", t.c.value), &t.c);
    bind_double(bt, "a", tune->add_option("--a", t.a.value), &t.a);
    bind_double(bt, "b", tune->add_option("--b", t.b.value), &t.b);

    CLI::App* reproduce =
        app.add_subcommand("reproduce", "recompute the demonstration table");
    add_globals(reproduce, g, br);
    auto* corrupt_opt = reproduce->add_option("--corrupt", rep.corrupt.value);
    corrupt_opt->group("");  // test hook, hidden from --help
    bind_double(br, "corrupt", corrupt_opt, &rep.corrupt);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& pe) {
        err << "error: " << pe.what() << "\n";
        return 3;
    }

    CLI::App* active;
    Bindings* bindings;
    if (eval->parsed()) {
        active = eval;
        bindings = &be;
    } else if (verify->parsed()) {
        active = verify;
        bindings = &bv;
    } else if (certify_cmd->parsed()) {
        active = certify_cmd;
        bindings = &bc;
    } else if (tune->parsed()) {
        active = tune;
        bindings = &bt;
    } else {
        active = reproduce;
        bindings = &br;
    }

    merge_config(active, g, *bindings);

    Sink sink(out, g.out.set ? std::optional<std::string>(g.out.value)
                             : std::nullopt);
    int code = 0;
    if (active == eval)
        code = cmd_eval(g, e, sink.stream());
    else if (active == verify)
        code = cmd_verify(g, v, sink.stream());
    else if (active == certify_cmd)
        code = cmd_certify(g, c, sink.stream());
    else if (active == tune)
        code = cmd_tune(g, t, sink.stream());
    else
        code = cmd_reproduce(g, rep, sink.stream());
    sink.finish();
    return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    try {
        return run_impl(args, out, err);
    } catch (const Error& ex) {
        err << "error: " << ex.what() << "\n";
        return 3;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 3;
    }
}

}  // namespace hhcert::cli
