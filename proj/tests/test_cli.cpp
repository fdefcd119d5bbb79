#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("hardy_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

Run run(const std::string& args, const std::string& env = "") {
    const fs::path out = scratch() / "stdout.txt";
    const fs::path err = scratch() / "stderr.txt";
    const std::string cmd = env + " \"" HARDY_CLI "\" " + args + " >\"" + out.string() + "\" 2>\"" + err.string() + "\"";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string data(const std::string& name) { return std::string("\"") + HARDY_TEST_DATA + "/" + name + "\""; }

std::string write_file(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return "\"" + p.string() + "\"";
}

bool all_finite(const json& j) {
    if (j.is_number()) return std::isfinite(j.get<double>());
    if (j.is_null()) return false;
    if (j.is_array() || j.is_object()) {
        for (const auto& v : j) {
            if (!all_finite(v)) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("verify on the annulus passes") {
    const Run r = run("verify --domain " + data("annulus12.json") + " --seed 7");
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("solve with zero data returns zero") {
    const std::string out = (scratch() / "zero.json").string();
    const Run r = run("solve --domain " + data("annulus12.json") + " --data " + data("zero_data.json") +
                      " --out \"" + out + "\" --quiet");
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    const json j = json::parse(slurp(out));
    CHECK(j["report"]["in_residual"] == 0.0);
    for (const auto& c : j["coefficients"]) {
        CHECK(c[0] == 0.0);
        CHECK(c[1] == 0.0);
    }
    CHECK(all_finite(j));
}

TEST_CASE("overlapping holes are a validation error naming the pair") {
    const Run r = run("solve --domain " + data("overlap.json") + " --data " + data("zero_data.json"));
    CHECK(r.code == 1);
    const json e = json::parse(r.err);
    CHECK(e["error"] == "Validation");
    CHECK(e["message"].get<std::string>().find("hole 1 and hole 2") != std::string::npos);
}

TEST_CASE("numerical failures exit with code 2") {
    json high = {{"components", json::array()}};
    json samples = json::array();
    for (int i = 0; i < 256; ++i) {
        const double t = 100.0 * 2.0 * M_PI * i / 256;
        samples.push_back({std::cos(t), std::sin(t)});
    }
    high["components"].push_back({{"samples", samples}});
    high["components"].push_back({{"modes", json::object()}});
    const Run r = run("solve --modes 8 --domain " + data("annulus12.json") + " --data " +
                      write_file("high.json", high.dump()));
    CHECK(r.code == 2);
    CHECK(json::parse(r.err)["error"] == "Aliasing");
}

TEST_CASE("bad command lines are validation errors") {
    Run r = run("frobnicate");
    CHECK(r.code == 1);
    CHECK(json::parse(r.err).contains("message"));
    r = run("solve --domain " + data("annulus12.json"));
    CHECK(r.code == 1);
    r = run("solve --domain missing.json --data " + data("zero_data.json"));
    CHECK(r.code == 1);
    r = run("reference --annulus 2 --structure sideways --radii 1.5");
    CHECK(r.code == 1);
}

TEST_CASE("identical inputs give byte-identical outputs") {
    const std::string a = (scratch() / "a.json").string();
    const std::string b = (scratch() / "b.json").string();
    const std::string args = "solve --modes 16 --domain " + data("tight3.json") + " --data " + data("tight3_data.json");
    CHECK(run(args + " --out \"" + a + "\"").code == 0);
    CHECK(run(args + " --out \"" + b + "\"", "HARDY_THREADS=3").code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(all_finite(json::parse(slurp(a))));

    const Run v1 = run("--json verify --modes 16 --seed 3 --domain " + data("tight3.json"));
    const Run v2 = run("verify --json --modes 16 --seed 3 --domain " + data("tight3.json"));
    CHECK(v1.out == v2.out);
    CHECK(all_finite(json::parse(v1.out)));
}

TEST_CASE("metric, operators and reference outputs") {
    const std::string csv = (scratch() / "m.csv").string();
    Run r = run("metric --modes 32 --domain " + data("annulus12.json") + " --grid " + data("grid.json") +
                " --out \"" + csv + "\"");
    CHECK(r.code == 0);
    const std::string text = slurp(csv);
    CHECK(text.rfind("w_re,w_im,ell,im_residual\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 5);

    r = run("--json metric --modes 32 --domain " + data("annulus12.json") + " --grid " + data("grid.json"));
    CHECK(r.code == 0);
    const json m = json::parse(r.out);
    CHECK(m.size() == 4);
    CHECK(m[0]["ell"].get<double>() > 0.0);
    CHECK(m[2]["flag"] == "outside");

    r = run("operators --modes 64 --component 0 --domain " + data("tight3.json"));
    CHECK(r.code == 0);
    const json ops = json::parse(r.out);
    CHECK(ops["jw_squared_residual"].get<double>() <= 1e-6);
    CHECK(ops["rank"] == ops["w"][0].size());
    CHECK(all_finite(ops));

    r = run("--json reference --annulus 2 --structure even --radii 1.4142135623730951,1.5");
    CHECK(r.code == 0);
    const json ref = json::parse(r.out);
    CHECK(std::abs(ref["values"][0]["ell"].get<double>() - 1.602) <= 5e-4);
    CHECK(ref["values"].size() == 2);
}
