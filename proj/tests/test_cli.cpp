#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

std::string cli_path() {
    const char* p = std::getenv("PULLCURV_CLI");
    REQUIRE(p != nullptr);
    return p;
}

int run(const std::string& args, std::string* out = nullptr) {
    const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string text;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) text.append(buf, n);
    const int rc = pclose(pipe);
    if (out) *out = text;
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("list --json yields the machine-readable catalog") {
    std::string out;
    CHECK(run("list --json", &out) == 0);
    const auto j = nlohmann::json::parse(out);
    CHECK(j["schema"] == 1);
    std::vector<std::string> names;
    for (const auto& e : j["experiments"]) {
        names.push_back(e["name"]);
        CHECK(!e["claim"].get<std::string>().empty());
        CHECK(!e["anchor"].get<std::string>().empty());
    }
    for (const char* required :
         {"sp2-biinvariant", "hopf-fatness", "aflat-kernel", "flat-rigidity", "fiber-geodesy",
          "degenerate", "radial-projection", "stability-probe", "graph-metric-agreement"})
        CHECK(std::find(names.begin(), names.end(), required) != names.end());
}

TEST_CASE("unknown experiment names are rejected before computing") {
    std::string out;
    CHECK(run("verify no-such-experiment --out-dir /tmp/pullcurv-test", &out) != 0);
    CHECK(run("fiber-geodesy --map no-such-map --samples 5 --out-dir /tmp/pullcurv-test",
              &out) != 0);
}

TEST_CASE("reports are byte-identical for identical config and seed") {
    const std::string d1 = "/tmp/pullcurv-test/det1", d2 = "/tmp/pullcurv-test/det2";
    CHECK(run("hopf-fatness --samples 12 --seed 404 --out-dir " + d1) == 0);
    CHECK(run("hopf-fatness --samples 12 --seed 404 --out-dir " + d2) == 0);
    CHECK(slurp(d1 + "/hopf-fatness.json") == slurp(d2 + "/hopf-fatness.json"));

    // Thread count must not change the bytes either.
    const std::string d3 = "/tmp/pullcurv-test/det3";
    CHECK(run("hopf-fatness --samples 12 --seed 404 --threads 4 --out-dir " + d3) == 0);
    CHECK(slurp(d1 + "/hopf-fatness.json") == slurp(d3 + "/hopf-fatness.json"));

    // A different seed changes the report.
    const std::string d4 = "/tmp/pullcurv-test/det4";
    CHECK(run("hopf-fatness --samples 12 --seed 405 --out-dir " + d4) == 0);
    CHECK(slurp(d1 + "/hopf-fatness.json") != slurp(d4 + "/hopf-fatness.json"));
}

TEST_CASE("seed is recorded and the verdict lives in the body, not the exit code") {
    const std::string dir = "/tmp/pullcurv-test/meridian";
    std::string out;
    // A fail verdict is a successful experiment: exit 0.
    CHECK(run("fiber-geodesy --map rigas --k 2 --which meridian --samples 60 --seed 7 "
              "--out-dir " + dir, &out) == 0);
    const auto j = nlohmann::json::parse(out);
    CHECK(j["seed"] == 7);
    CHECK(j["verdict"] == "fail");
    CHECK(j["schema"] == 1);
}

TEST_CASE("config file fills unset options and flags win") {
    const std::string dir = "/tmp/pullcurv-test/cfg";
    {
        std::ofstream cfg("/tmp/pullcurv-test-cfg.json");
        cfg << "{\"samples\": 9, \"seed\": 31}\n";
    }
    std::string out;
    CHECK(run("hopf-fatness --config /tmp/pullcurv-test-cfg.json --out-dir " + dir, &out) == 0);
    auto j = nlohmann::json::parse(out);
    CHECK(j["seed"] == 31);
    CHECK(j["samples"] == 9);
    CHECK(run("hopf-fatness --config /tmp/pullcurv-test-cfg.json --seed 77 --out-dir " + dir,
              &out) == 0);
    j = nlohmann::json::parse(out);
    CHECK(j["seed"] == 77);
    CHECK(j["samples"] == 9);
}

TEST_CASE("csv format writes trace data") {
    const std::string dir = "/tmp/pullcurv-test/csv";
    CHECK(run("degenerate --map cayley --n 2 --theta-start 3.0 --theta-end 3.1 --steps 3 "
              "--samples 60 --seed 7 --format both --out-dir " + dir) == 0);
    const std::string csv = slurp(dir + "/degenerate-cayley-2.csv");
    CHECK(csv.rfind("theta,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 rows
}
