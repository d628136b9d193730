#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "hhcert/cli.hpp"

namespace {

using nlohmann::json;

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = hhcert::cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    cells.push_back(cur);
    return cells;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

int count_substr(const std::string& hay, const std::string& needle) {
    int n = 0;
    for (size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size()))
        ++n;
    return n;
}

double as_double(const std::string& cell) {
    return std::strtod(cell.c_str(), nullptr);
}

// Scratch file that cleans up after itself; used for --config and --out.
struct TempFile {
    std::filesystem::path path;

    explicit TempFile(const std::string& name)
        : path(std::filesystem::temp_directory_path() / name) {
        std::error_code ec;
        std::filesystem::remove(path, ec);
    }
    ~TempFile() {
        std::error_code ec;
        std::filesystem::remove(path, ec);
    }

    void write(const std::string& body) const {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        f << body;
    }
    std::string read() const {
        std::ifstream f(path, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }
    std::string str() const { return path.string(); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help lists every subcommand and hides the test hook") {
    const RunResult r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    for (const char* name : {"eval", "verify", "certify", "tune", "reproduce"})
        CHECK(contains(r.out, name));
    CHECK_FALSE(contains(r.out, "--corrupt"));
}

TEST_CASE("bad invocations exit with the input-error code") {
    CHECK(run({}).code == 3);
    CHECK(run({"frobnicate"}).code == 3);
    CHECK(run({"eval", "--bogus", "1"}).code == 3);

    RunResult r = run({"eval", "--a", "0.2", "--b", "0.6"});
    CHECK(r.code == 3);
    CHECK(contains(r.err, "error: "));
    CHECK(contains(r.err, "provide"));

    // Missing --a, reversed interval, and bad enum values all route
    // through the same code even though they fail at different layers.
    CHECK(run({"eval", "--f", "x", "--fprime", "1", "--b", "0.6"}).code == 3);
    CHECK(run({"eval", "--f", "x", "--fprime", "1", "--a", "0.9", "--b",
               "0.1"})
              .code == 3);
    CHECK(run({"verify", "--samples", "0"}).code == 3);
    CHECK(run({"eval", "--f", "x", "--fprime", "1", "--a", "0.2", "--b", "0.6",
               "--mode", "sloppy"})
              .code == 3);
    CHECK(run({"eval", "--f", "x", "--fprime", "1", "--a", "0.2", "--b", "0.6",
               "--format", "xml"})
              .code == 3);
    CHECK(run({"eval", "--builtin", "nope", "--a", "0.2", "--b", "0.6", "--s",
               "0.5"})
              .code == 3);
}

TEST_CASE("reproduce matches the frozen reference table") {
    const RunResult text = run({"reproduce"});
    CHECK(text.code == 0);
    CHECK(contains(text.out, "all rows match"));
    CHECK(count_substr(text.out, "PASS") == 3);

    const RunResult jr = run({"reproduce", "--format", "json"});
    CHECK(jr.code == 0);
    const json j = json::parse(jr.out);
    CHECK(j["all_match"].get<bool>());
    CHECK(j["tolerance"].get<double>() == 1e-6);
    REQUIRE(j["rows"].size() == 3);
    for (const auto& row : j["rows"]) {
        CHECK(row["status"].get<std::string>() == "pass");
        CHECK(row["rel_lhs"].get<double>() <= 1e-6);
        CHECK(row["rel_rhs"].get<double>() <= 1e-6);
    }
    const double ref_rhs0 = j["rows"][0]["ref_rhs"].get<double>();
    CHECK(std::fabs(ref_rhs0 - 2.570313847e-3) <= 1e-9 * 2.570313847e-3);
    const double ref_lhs2 = j["rows"][2]["ref_lhs"].get<double>();
    CHECK(std::fabs(ref_lhs2 - 6.115413651e-3) <= 1e-9 * 6.115413651e-3);

    const RunResult cr = run({"reproduce", "--format", "csv"});
    CHECK(cr.code == 0);
    const auto lines = lines_of(cr.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] ==
          "s,a,b,lhs,ref_lhs,rel_lhs,rhs,ref_rhs,rel_rhs,status");
    for (size_t i = 1; i < lines.size(); ++i)
        CHECK(split(lines[i], ',').size() == 10);
}

TEST_CASE("reproduce corruption hook flips the exit code") {
    const RunResult clean = run({"reproduce", "--format", "json"});
    const RunResult bad = run({"reproduce", "--corrupt", "0.5", "--format",
                               "json"});
    CHECK(bad.code == 1);
    const json jc = json::parse(clean.out);
    const json jb = json::parse(bad.out);
    CHECK_FALSE(jb["all_match"].get<bool>());
    for (size_t i = 0; i < 3; ++i) {
        // The corruption scales recomputed values, never the references.
        CHECK(jb["rows"][i]["ref_lhs"].get<double>() ==
              jc["rows"][i]["ref_lhs"].get<double>());
        const double scaled = jb["rows"][i]["lhs"].get<double>();
        const double base = jc["rows"][i]["lhs"].get<double>();
        CHECK(std::fabs(scaled - 1.5 * base) <= 1e-12 * std::fabs(base));
        CHECK(jb["rows"][i]["status"].get<std::string>() == "fail");
    }

    const RunResult text = run({"reproduce", "--corrupt", "0.5"});
    CHECK(text.code == 1);
    CHECK(contains(text.out, "MISMATCH"));
}

TEST_CASE("compat eval reports the uncertified reference bounds") {
    const RunResult r = run({"eval", "--builtin", "power_s", "--s", "0.5",
                             "--a", "0.89", "--b", "0.9", "--mode",
                             "paper_compat", "--format", "json"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["mode"].get<std::string>() == "paper_compat");
    CHECK(j["regime"].get<std::string>() == "above_unit");
    CHECK(j["certificate_groups"].empty());
    CHECK(j["negative_margins"].empty());
    for (const char* name : {"t1", "t2", "t3", "t4"}) {
        const json& t = j["theorems"][name];
        CHECK(t["computed"].get<bool>());
        CHECK(t["margin"].get<double>() > 0.0);
        CHECK(t["failed_properties"].empty());
    }
    const double t1 = j["theorems"]["t1"]["rhs"].get<double>();
    CHECK(std::fabs(t1 - 2.570313847e-3) <= 1e-6 * 2.570313847e-3);
}

TEST_CASE("strict eval rejects what it cannot certify") {
    // |f'(x)| = x^(-1/2) exceeds 1 just left of 1, so the range check
    // fails while monotonicity and convexity hold.
    RunResult r = run({"eval", "--builtin", "power_s", "--s", "0.5", "--a",
                       "0.89", "--b", "0.9", "--format", "json"});
    CHECK(r.code == 2);
    json j = json::parse(r.out);
    CHECK(j["mode"].get<std::string>() == "strict");
    for (const char* name : {"t1", "t2", "t3", "t4"}) {
        const json& t = j["theorems"][name];
        CHECK_FALSE(t["computed"].get<bool>());
        REQUIRE(t["failed_properties"].size() == 1);
        CHECK(t["failed_properties"][0].get<std::string>() ==
              "range_unit_interval");
    }
    CHECK_FALSE(j["certificate_groups"].empty());

    // Scaling the same family so its range fits inside (0, 1] breaks
    // the convexity inequality instead: the two requirements cannot
    // hold at once for this family on a proper subinterval.
    r = run({"eval", "--builtin", "power_s", "--s", "0.5", "--c", "0.5",
             "--a", "0.25", "--b", "0.81", "--format", "json"});
    CHECK(r.code == 2);
    j = json::parse(r.out);
    CHECK(j["regime"].get<std::string>() == "unit_range");
    for (const char* name : {"t1", "t2", "t3", "t4"}) {
        const json& t = j["theorems"][name];
        CHECK_FALSE(t["computed"].get<bool>());
        REQUIRE(t["failed_properties"].size() == 1);
        CHECK(t["failed_properties"][0].get<std::string>() ==
              "s_geometrically_convex");
    }
}

TEST_CASE("strict eval certifies a function that satisfies everything") {
    const RunResult r = run({"eval", "--f", "x", "--fprime", "1", "--a", "0.2",
                             "--b", "0.6", "--format", "json"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["mode"].get<std::string>() == "strict");
    CHECK(j["regime"].get<std::string>() == "unit_range");
    CHECK(j["warnings"].empty());
    CHECK(j["fa_abs"].get<double>() == 1.0);
    CHECK(j["fb_abs"].get<double>() == 1.0);
    CHECK(std::fabs(j["lhs"].get<double>()) <= 1e-13);
    for (const char* name : {"t1", "t2", "t3", "t4"}) {
        const json& t = j["theorems"][name];
        CHECK(t["computed"].get<bool>());
        CHECK(t["margin"].get<double>() > 0.0);
    }
    // Unit endpoint derivatives collapse the first bound to (b-a)/4.
    CHECK(j["theorems"]["t1"]["rhs"].get<double>() == 0.25 * (0.6 - 0.2));
    CHECK(j["negative_margins"].empty());
    REQUIRE(j["certificate_groups"].size() == 2);
    for (const auto& g : j["certificate_groups"]) {
        CHECK(g["certificates"].size() == 3);
        for (const auto& c : g["certificates"])
            CHECK(c["verdict"].get<std::string>() == "pass");
    }
}

TEST_CASE("strict eval flags a certified bound that the data violates") {
    // The declared derivative is consistent in range but wildly wrong
    // for this f, so every certificate passes while the actual defect
    // dwarfs the bounds. The mismatch warning fires and the exit code
    // reports a violated certified inequality.
    const RunResult r = run({"eval", "--f", "100*x^2", "--fprime", "1", "--a",
                             "0.2", "--b", "0.6", "--format", "json"});
    CHECK(r.code == 1);
    const json j = json::parse(r.out);
    REQUIRE(j["warnings"].size() == 1);
    CHECK(contains(j["warnings"][0].get<std::string>(), "disagrees"));
    CHECK(j["negative_margins"].size() == 4);

    const RunResult text = run({"eval", "--f", "100*x^2", "--fprime", "1",
                                "--a", "0.2", "--b", "0.6"});
    CHECK(text.code == 1);
    CHECK(contains(text.out, "NEGATIVE MARGIN"));
    CHECK(contains(text.out, "warning: "));
}

TEST_CASE("eval csv cells round-trip the json numbers exactly") {
    const std::vector<std::string> base = {"eval", "--f",  "x", "--fprime",
                                           "1",    "--a",  "0.2", "--b",
                                           "0.6"};
    auto with_format = [&base](const char* fmt) {
        std::vector<std::string> args = base;
        args.push_back("--format");
        args.push_back(fmt);
        return run(args);
    };
    const json j = json::parse(with_format("json").out);
    const RunResult cr = with_format("csv");
    const auto lines = lines_of(cr.out);
    REQUIRE(lines.size() == 2);
    const auto header = split(lines[0], ',');
    const auto cells = split(lines[1], ',');
    REQUIRE(header.size() == 17);
    REQUIRE(cells.size() == 17);
    CHECK(header[0] == "mode");
    CHECK(cells[0] == "strict");
    CHECK(cells[1] == j["regime"].get<std::string>());
    CHECK(as_double(cells[2]) == j["lhs"].get<double>());
    CHECK(as_double(cells[3]) == j["fa_abs"].get<double>());
    CHECK(as_double(cells[4]) == j["fb_abs"].get<double>());
    const char* names[] = {"t1", "t2", "t3", "t4"};
    for (int i = 0; i < 4; ++i) {
        CHECK(header[5 + 3 * i] == std::string(names[i]) + "_rhs");
        CHECK(as_double(cells[5 + 3 * i]) ==
              j["theorems"][names[i]]["rhs"].get<double>());
        CHECK(as_double(cells[6 + 3 * i]) ==
              j["theorems"][names[i]]["margin"].get<double>());
        CHECK(cells[7 + 3 * i].empty());
    }

    // Rejected theorems leave the numeric cells empty and name the
    // failed hypothesis in the third column.
    const RunResult rej = run({"eval", "--builtin", "power_s", "--s", "0.5",
                               "--a", "0.89", "--b", "0.9", "--format",
                               "csv"});
    const auto rej_cells = split(lines_of(rej.out)[1], ',');
    REQUIRE(rej_cells.size() == 17);
    CHECK(rej_cells[5].empty());
    CHECK(rej_cells[6].empty());
    CHECK(rej_cells[7] == "range_unit_interval");
}

TEST_CASE("strict verify reports honest rejections row by row") {
    const RunResult r = run({"verify", "--samples", "5", "--seed", "11"});
    CHECK(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 7);
    CHECK(lines[0] ==
          "s,a,b,c,fa_abs,fb_abs,lhs,rhs_t1,rhs_t2,rhs_t3,rhs_t4,margin_min,"
          "regime,verdict");
    CHECK(lines[6] == "# samples=5 violations=0");
    for (size_t i = 1; i <= 5; ++i) {
        const auto cells = split(lines[i], ',');
        REQUIRE(cells.size() == 14);
        CHECK(cells[13] == "rejected");
        for (int col = 7; col <= 11; ++col) CHECK(cells[col].empty());
        const double a = as_double(cells[1]);
        const double b = as_double(cells[2]);
        CHECK(a < b);
        CHECK(b < 1.0);
    }
}

TEST_CASE("compat verify computes every sampled row") {
    const RunResult r = run({"verify", "--samples", "6", "--seed", "3",
                             "--mode", "paper_compat", "--format", "json"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["mode"].get<std::string>() == "paper_compat");
    CHECK(j["samples"].get<long long>() == 6);
    CHECK(j["seed"].get<long long>() == 3);
    REQUIRE(j["rows"].size() == 6);
    long long fails = 0;
    for (const auto& row : j["rows"]) {
        CHECK(row["c"].get<double>() == 1.0);
        for (const char* k : {"rhs_t1", "rhs_t2", "rhs_t3", "rhs_t4"}) {
            REQUIRE_FALSE(row[k].is_null());
            CHECK(row[k].get<double>() > 0.0);
        }
        REQUIRE_FALSE(row["margin_min"].is_null());
        const std::string verdict = row["verdict"].get<std::string>();
        CHECK((verdict == "pass" || verdict == "fail"));
        if (verdict == "fail") ++fails;
    }
    CHECK(j["violations"].get<long long>() == fails);
}

TEST_CASE("verify csv mirrors the json rows bit for bit") {
    const std::vector<std::string> base = {"verify", "--samples", "3",
                                           "--seed", "5", "--mode",
                                           "paper_compat"};
    auto with_format = [&base](const char* fmt) {
        std::vector<std::string> args = base;
        args.push_back("--format");
        args.push_back(fmt);
        return run(args);
    };
    const json j = json::parse(with_format("json").out);
    const auto lines = lines_of(with_format("csv").out);
    REQUIRE(lines.size() == 4);  // csv format has no trailer comment
    const char* keys[] = {"s",      "a",      "b",      "c",
                          "fa_abs", "fb_abs", "lhs",    "rhs_t1",
                          "rhs_t2", "rhs_t3", "rhs_t4", "margin_min"};
    for (size_t i = 0; i < 3; ++i) {
        const auto cells = split(lines[i + 1], ',');
        REQUIRE(cells.size() == 14);
        const json& row = j["rows"][i];
        for (int col = 0; col < 12; ++col)
            CHECK(as_double(cells[col]) == row[keys[col]].get<double>());
        CHECK(cells[12] == row["regime"].get<std::string>());
        CHECK(cells[13] == row["verdict"].get<std::string>());
    }
}

TEST_CASE("seeded sweeps are reproducible and seed-sensitive") {
    const std::vector<std::string> args = {"verify", "--samples", "4",
                                           "--seed", "1", "--mode",
                                           "paper_compat", "--format", "csv"};
    const RunResult first = run(args);
    const RunResult second = run(args);
    CHECK(first.code == second.code);
    CHECK(first.out == second.out);

    std::vector<std::string> other = args;
    other[4] = "2";
    CHECK(run(other).out != first.out);
}

TEST_CASE("out flag writes the whole report atomically") {
    const std::vector<std::string> base = {"verify", "--samples", "3",
                                           "--seed", "9", "--mode",
                                           "paper_compat", "--format", "csv"};
    const RunResult direct = run(base);

    TempFile target("hhcert_cli_out_test.csv");
    std::vector<std::string> redirected = base;
    redirected.push_back("--out");
    redirected.push_back(target.str());
    const RunResult r = run(redirected);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(std::filesystem::exists(target.path));
    CHECK(target.read() == direct.out);
    CHECK_FALSE(std::filesystem::exists(target.str() + ".tmp"));

    // An unwritable destination is an input error, not a crash.
    const RunResult bad = run({"reproduce", "--out",
                               "/nonexistent_dir_zz/report.txt"});
    CHECK(bad.code == 3);
    CHECK(contains(bad.err, "error: "));
}

TEST_CASE("config supplies defaults and explicit flags override them") {
    TempFile cfg("hhcert_cli_cfg_defaults.json");
    cfg.write("{\"samples\": 3, \"seed\": 7, \"mode\": \"paper_compat\", "
              "\"format\": \"json\"}");

    const RunResult r = run({"verify", "--config", cfg.str()});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["samples"].get<long long>() == 3);
    CHECK(j["seed"].get<long long>() == 7);
    CHECK(j["mode"].get<std::string>() == "paper_compat");

    const RunResult o = run({"verify", "--config", cfg.str(), "--samples",
                             "2", "--seed", "1"});
    CHECK(o.code == 0);
    const json jo = json::parse(o.out);
    CHECK(jo["samples"].get<long long>() == 2);
    CHECK(jo["seed"].get<long long>() == 1);
    CHECK(jo["mode"].get<std::string>() == "paper_compat");

    // A config can carry the whole problem statement.
    TempFile full("hhcert_cli_cfg_full.json");
    full.write("{\"f\": \"x\", \"fprime\": \"1\", \"a\": 0.2, \"b\": 0.6}");
    CHECK(run({"eval", "--config", full.str()}).code == 0);
}

TEST_CASE("config mistakes are input errors with specific messages") {
    TempFile cfg("hhcert_cli_cfg_bad.json");

    cfg.write("{\"bogus\": 1}");
    RunResult r = run({"verify", "--config", cfg.str()});
    CHECK(r.code == 3);
    CHECK(contains(r.err, "unknown config key: bogus"));

    cfg.write("{ nope");
    r = run({"verify", "--config", cfg.str()});
    CHECK(r.code == 3);
    CHECK(contains(r.err, "not valid JSON"));

    cfg.write("[1, 2, 3]");
    r = run({"verify", "--config", cfg.str()});
    CHECK(r.code == 3);
    CHECK(contains(r.err, "JSON object"));

    cfg.write("{\"samples\": 2.5}");
    r = run({"verify", "--config", cfg.str()});
    CHECK(r.code == 3);
    CHECK(contains(r.err, "must be an integer"));

    r = run({"verify", "--config", "/no/such/file.json"});
    CHECK(r.code == 3);
    CHECK(contains(r.err, "cannot open config file"));
}

TEST_CASE("certify checks a single hypothesis from the command line") {
    const RunResult pass = run({"certify", "--fprime", "x^(-0.5)", "--a",
                                "0.1", "--b", "1", "--property", "sconvex",
                                "--s", "0.5"});
    CHECK(pass.code == 0);
    CHECK(contains(pass.out, "s_geometrically_convex: pass"));
    CHECK(contains(pass.out, "24x24x24"));

    const RunResult fail = run({"certify", "--fprime", "x", "--a", "0.1",
                                "--b", "0.9", "--property", "monotone",
                                "--format", "json"});
    CHECK(fail.code == 2);
    const json j = json::parse(fail.out);
    CHECK(j["property"].get<std::string>() == "monotone_decreasing");
    CHECK(j["verdict"].get<std::string>() == "fail");
    CHECK(j["worst_margin"].get<double>() < 0.0);
    REQUIRE_FALSE(j["counterexample"].is_null());
    CHECK(j["counterexample"]["point"].size() == 2);
    CHECK(j["counterexample"]["lhs"].get<double>() >
          j["counterexample"]["rhs"].get<double>());
}

TEST_CASE("certify honors the grid override deterministically") {
    // Three exactly representable nodes make the worst pair unique and
    // stable: both adjacent pairs violate by exactly 0.25, and the
    // first one found is kept.
    const RunResult r = run({"certify", "--fprime", "x", "--a", "0.25", "--b",
                             "0.75", "--property", "monotone", "--grid", "3",
                             "--format", "json"});
    CHECK(r.code == 2);
    const json j = json::parse(r.out);
    REQUIRE(j["grid"].size() == 1);
    CHECK(j["grid"][0].get<int>() == 3);
    CHECK(j["worst_margin"].get<double>() == -0.25);
    REQUIRE(j["counterexample"]["point"].size() == 2);
    CHECK(j["counterexample"]["point"][0].get<double>() == 0.25);
    CHECK(j["counterexample"]["point"][1].get<double>() == 0.5);
    CHECK(j["counterexample"]["lhs"].get<double>() == 0.5);
    CHECK(j["counterexample"]["rhs"].get<double>() == 0.25);

    const RunResult csv = run({"certify", "--fprime", "x", "--a", "0.25",
                               "--b", "0.75", "--property", "monotone",
                               "--grid", "3", "--format", "csv"});
    const auto lines = lines_of(csv.out);
    REQUIRE(lines.size() == 2);
    const auto cells = split(lines[1], ',');
    REQUIRE(cells.size() == 7);
    CHECK(cells[0] == "monotone_decreasing");
    CHECK(cells[1] == "fail");
    CHECK(cells[2] == "3");
    CHECK(cells[3] == "-0.25");
    CHECK(cells[4] == "0.25;0.5");
}

TEST_CASE("certify argument validation") {
    CHECK(run({"certify", "--fprime", "x", "--a", "0.1", "--b", "0.9"}).code ==
          3);
    CHECK(run({"certify", "--fprime", "x", "--a", "0.1", "--b", "0.9",
               "--property", "bogus"})
              .code == 3);
    CHECK(run({"certify", "--a", "0.1", "--b", "0.9", "--property",
               "monotone"})
              .code == 3);
}

TEST_CASE("tune reports minimizers with boundary flags") {
    const RunResult t2 = run({"tune", "--theorem", "t2", "--fa", "1", "--fb",
                              "1", "--s", "0.5", "--a", "0.2", "--b", "0.6",
                              "--format", "json"});
    CHECK(t2.code == 0);
    const json j = json::parse(t2.out);
    CHECK(j["theorem"].get<std::string>() == "t2");
    REQUIRE(j["best_params"].size() == 1);
    CHECK(std::fabs(j["best_params"][0].get<double>() - 1.0001) <= 1e-6);
    REQUIRE(j["at_boundary"].size() == 1);
    CHECK(j["at_boundary"][0].get<bool>());
    const double best = j["best_bound"].get<double>();
    CHECK(std::fabs(best - 0.1000019314223128) <= 1e-9);
    CHECK(j["iterations"].get<long long>() > 0);

    const RunResult t4 = run({"tune", "--theorem", "t4", "--fa", "1", "--fb",
                              "1", "--s", "0.5", "--a", "0.2", "--b", "0.6"});
    CHECK(t4.code == 0);
    CHECK(contains(t4.out, "mu1: "));
    CHECK(contains(t4.out, "mu2: "));
    CHECK(count_substr(t4.out, "(at boundary)") == 2);
    CHECK(contains(t4.out, "best_bound: "));
}

TEST_CASE("tune rank orders the four bounds by tightness") {
    const RunResult r = run({"tune", "--theorem", "rank", "--fprime", "1",
                             "--s", "0.5", "--a", "0.2", "--b", "0.6",
                             "--format", "csv"});
    CHECK(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "rank,theorem,bound");
    const char* expect[] = {"t1", "t3", "t2", "t4"};
    double prev = 0.0;
    for (int i = 0; i < 4; ++i) {
        const auto cells = split(lines[i + 1], ',');
        REQUIRE(cells.size() == 3);
        CHECK(cells[0] == std::to_string(i + 1));
        CHECK(cells[1] == expect[i]);
        const double bound = as_double(cells[2]);
        CHECK(bound >= prev);
        prev = bound;
    }
}

TEST_CASE("tune argument validation") {
    CHECK(run({"tune", "--theorem", "t2", "--s", "0.5", "--a", "0.2", "--b",
               "0.6"})
              .code == 3);
    CHECK(run({"tune", "--theorem", "bogus", "--fa", "1", "--fb", "1", "--s",
               "0.5", "--a", "0.2", "--b", "0.6"})
              .code == 3);
    CHECK(run({"tune", "--fa", "1", "--fb", "1", "--s", "0.5", "--a", "0.2",
               "--b", "0.6"})
              .code == 3);
    CHECK(run({"tune", "--theorem", "t2", "--fa", "1", "--fb", "1", "--a",
               "0.2", "--b", "0.6"})
              .code == 3);
    CHECK(run({"tune", "--theorem", "rank", "--s", "0.5", "--a", "0.2", "--b",
               "0.6"})
              .code == 3);
}

}  // TEST_SUITE("cli")
