#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "elgin/cli.hpp"
#include "json.hpp"

using elgin::cli::run;
using nlohmann::json;

namespace {

std::string tmp_file(const std::string& stem) {
    return std::string("/tmp/elgin_test_") + stem;
}

json read_json(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    json j;
    f >> j;
    return j;
}

std::string read_all(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("expected subcommand emits the sqrt(2) anchor") {
    auto out = tmp_file("expected.json");
    CHECK(run({"expected", "--n", "2", "--tau", "0", "--out", out}) == 0);
    auto j = read_json(out);
    CHECK(j["value"].get<double>() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(j["n"] == 2);
    CHECK(j["route"] == "exact");
    std::remove(out.c_str());
}

TEST_CASE("expected subcommand asymptotic terms sum to the value") {
    auto out = tmp_file("expected_asym.json");
    CHECK(run({"expected", "--n", "256", "--alpha", "1.0", "--route", "asymptotic", "--order", "3",
               "--out", out}) == 0);
    auto j = read_json(out);
    double sum = 0.0;
    for (auto& t : j["terms"]) sum += t["value"].get<double>();
    CHECK(j["value"].get<double>() == doctest::Approx(sum).epsilon(1e-14));
    std::remove(out.c_str());
}

TEST_CASE("validation failures exit with code 2") {
    CHECK(run({"expected", "--n", "3", "--tau", "0"}) == 2);
    CHECK(run({"expected", "--n", "4", "--tau", "1.5"}) == 2);
    CHECK(run({"expected", "--n", "4", "--tau", "0.2", "--alpha", "1.0"}) == 2);
    CHECK(run({"expected", "--n", "4"}) == 2);  // neither tau nor alpha
    CHECK(run({"density", "--n", "64", "--alpha", "1", "--route", "nope"}) == 2);
    CHECK(run({"variance", "--n", "300", "--alpha", "1"}) == 2);
    CHECK(run({"nonsense"}) == 2);
}

TEST_CASE("density CSV output integrates to about one") {
    auto out = tmp_file("density.csv");
    CHECK(run({"density", "--n", "256", "--alpha", "1", "--route", "exact", "--grid",
               "-2.5:2.5:401", "--out", out}) == 0);
    std::ifstream f(out);
    REQUIRE(f.good());
    std::string header;
    std::getline(f, header);
    CHECK(header == "x,rho,route");
    std::vector<double> xs, rhos;
    std::string line;
    while (std::getline(f, line)) {
        std::istringstream in(line);
        double x, rho;
        char c;
        std::string route;
        in >> x >> c >> rho;
        xs.push_back(x);
        rhos.push_back(rho);
        CHECK(line.find("exact") != std::string::npos);
    }
    REQUIRE(xs.size() == 401);
    double integral = 0.0;
    for (size_t i = 1; i < xs.size(); ++i)
        integral += 0.5 * (rhos[i] + rhos[i - 1]) * (xs[i] - xs[i - 1]);
    CHECK(std::fabs(integral - 1.0) < 1e-4);
    std::remove(out.c_str());
}

TEST_CASE("variance subcommand emits the documented fields") {
    auto out = tmp_file("variance.json");
    CHECK(run({"variance", "--n", "16", "--alpha", "1", "--route", "quadrature", "--out", out}) == 0);
    auto j = read_json(out);
    for (const char* key : {"n", "alpha", "v", "e", "ratio", "r_alpha"}) CHECK(j.contains(key));
    CHECK(j["v"].get<double>() > 0.0);
    std::remove(out.c_str());
}

TEST_CASE("sample subcommand: histogram CSV, determinism, parity") {
    auto out = tmp_file("stats.json");
    auto hist = tmp_file("hist.csv");
    std::vector<std::string> args{"sample", "--n",    "16",  "--alpha", "1",      "--samples", "24",
                                  "--seed", "7",      "--out", out,     "--hist", hist};
    CHECK(run(args) == 0);
    auto j1 = read_json(out);
    auto h1 = read_all(hist);
    CHECK(run(args) == 0);
    CHECK(read_json(out) == j1);
    CHECK(read_all(hist) == h1);
    CHECK(j1["parity_ok"].get<bool>());
    CHECK(h1.rfind("bin_lo,bin_hi,count\n", 0) == 0);
    // histogram mass equals total_real
    long mass = 0;
    std::istringstream in(h1);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) mass += std::stol(line.substr(line.rfind(',') + 1));
    CHECK(mass == j1["total_real"].get<long>());
    std::remove(out.c_str());
    std::remove(hist.c_str());
}

TEST_CASE("sample presets expand to figure parameters") {
    auto out = tmp_file("fig3.json");
    auto hist = tmp_file("fig3_hist.csv");
    CHECK(run({"sample", "--preset", "fig3:alpha=2", "--samples", "4", "--seed", "5", "--out", out,
               "--hist", hist}) == 0);
    auto j = read_json(out);
    CHECK(j["n"] == 256);
    CHECK(j["alpha"].get<double>() == doctest::Approx(2.0));
    CHECK(j["samples"] == 4);  // explicit flags still override the preset
    std::remove(out.c_str());
    std::remove(hist.c_str());
}

TEST_CASE("verify subcommand runs the identity suite") {
    CHECK(run({"verify", "--suite", "identities"}) == 0);
    CHECK(run({"verify", "--suite", "bogus"}) == 2);
}

TEST_CASE("coeffs subcommand exports exact tables") {
    auto out = tmp_file("coeffs.json");
    CHECK(run({"coeffs", "--kind", "q", "--k", "3", "--max", "4", "--out", out}) == 0);
    auto j = read_json(out);
    CHECK(j["kind"] == "q");
    CHECK(j["k"] == 3);
    auto vals = j["values"].get<std::vector<std::string>>();
    REQUIRE(vals.size() == 5);
    CHECK(vals[0] == "1");
    CHECK(vals[1] == "2");
    CHECK(vals[4] == "1/16");

    CHECK(run({"coeffs", "--kind", "a_l", "--tau", "0", "--max", "4", "--out", out}) == 0);
    auto a = read_json(out)["values"].get<std::vector<std::string>>();
    REQUIRE(a.size() == 4);
    CHECK(a[0] == "-3/8");
    CHECK(a[1] == "-3/128");
    CHECK(a[2] == "27/1024");
    CHECK(a[3] == "499/32768");
    std::remove(out.c_str());
}

TEST_CASE("thread hint is accepted") {
    auto out = tmp_file("threads.json");
    CHECK(run({"--threads", "1", "expected", "--n", "8", "--tau", "0.2", "--out", out}) == 0);
    std::remove(out.c_str());
}

TEST_CASE("ELGIN_OUT_DIR prefixes relative output paths") {
    setenv("ELGIN_OUT_DIR", "/tmp", 1);
    CHECK(run({"coeffs", "--kind", "q", "--k", "1", "--max", "2", "--out", "elgin_outdir_test.json"}) == 0);
    unsetenv("ELGIN_OUT_DIR");
    std::ifstream f("/tmp/elgin_outdir_test.json");
    CHECK(f.good());
    std::remove("/tmp/elgin_outdir_test.json");
}

TEST_CASE("expected residue route and variance sum/limit routes") {
    auto out = tmp_file("routes.json");
    CHECK(run({"expected", "--n", "64", "--tau", "0.3", "--route", "residue", "--out", out}) == 0);
    double residue_val = read_json(out)["value"].get<double>();
    CHECK(run({"expected", "--n", "64", "--tau", "0.3", "--route", "exact", "--out", out}) == 0);
    CHECK(read_json(out)["value"].get<double>() == doctest::Approx(residue_val).epsilon(1e-10));

    CHECK(run({"variance", "--n", "16", "--alpha", "1", "--route", "sum", "--out", out}) == 0);
    auto js = read_json(out);
    CHECK(js.contains("sum_I"));
    CHECK(js.contains("sum_II"));
    double v_sum = js["v"].get<double>();
    CHECK(run({"variance", "--n", "16", "--alpha", "1", "--route", "quadrature", "--out", out}) == 0);
    auto jq = read_json(out);
    double v_quad = jq["v"].get<double>();
    // the sum route drops the rank-one kernel part, whose reported size must
    // account for the whole difference between the two routes
    CHECK(std::fabs(v_sum - v_quad) ==
          doctest::Approx(jq["s2_contribution"].get<double>()).epsilon(1e-5));

    CHECK(run({"variance", "--n", "16", "--alpha", "1", "--route", "limit", "--out", out}) == 0);
    auto jl = read_json(out);
    CHECK(jl["ratio"].get<double>() == doctest::Approx(jl["r_alpha"].get<double>()).epsilon(1e-14));
    std::remove(out.c_str());
}
