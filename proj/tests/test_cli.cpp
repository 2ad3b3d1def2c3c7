#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "periodlab/cli.hpp"
#include "periodlab/errors.hpp"

using namespace periodlab;
using namespace periodlab::cli;

namespace {

const double kPi = std::acos(-1.0);

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_args(std::vector<std::string> args) {
    args.insert(args.begin(), "periodlab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

ProblemSpec duffing_spec(double lambda, double amplitude) {
    ProblemSpec s;
    s.preset = Preset::Duffing;
    s.lambda = lambda;
    s.amplitude = amplitude;
    return s;
}

ProblemSpec cubic_spec(double energy) {
    ProblemSpec s;
    s.preset = Preset::Cubic;
    s.lambda = 1.0;
    s.energy = energy;
    return s;
}

}  // namespace

TEST_CASE("first-order series at rho = 1 reproduces T1") {
    const auto r = run_args({"period", "--preset", "duffing", "--lambda", "1", "--amplitude", "1", "--method",
                             "series", "--N", "1", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const double expected = 787.0 * kPi / (4.0 * std::pow(7.0, 2.5));
    CHECK(j["T"].get<double>() == doctest::Approx(expected).epsilon(1e-14));
    CHECK(j["N"].get<int>() == 1);
    CHECK(j["xi"].get<double>() == doctest::Approx(1.0 / 7.0).epsilon(1e-14));
    CHECK(j["regime"] == "convergent");
}

TEST_CASE("zero anharmonicity gives the harmonic period") {
    const auto recs = cmd_period(duffing_spec(0.0, 0.5));
    REQUIRE(recs.size() == 1);
    CHECK(*recs[0].T == doctest::Approx(2.0 * kPi).epsilon(1e-14));
}

TEST_CASE("all methods agree on a cubic shell") {
    ProblemSpec s = cubic_spec(0.1);
    s.method = MethodChoice::All;
    const auto recs = cmd_period(s);
    REQUIRE(recs.size() == 4);
    CHECK(recs[0].method == "quadrature");
    CHECK(recs[1].method == "series");
    CHECK(recs[2].method == "elliptic_apostol");
    CHECK(recs[3].method == "oracle");
    for (const auto& a : recs)
        for (const auto& b : recs) CHECK(std::abs(*a.T - *b.T) < 1e-8 * *b.T);
}

TEST_CASE("physical units scale the period by 1/w0") {
    ProblemSpec s = cubic_spec(0.1);
    const double t1 = *cmd_period(s)[0].T;
    s.omega0 = 3.0;
    s.mass = 2.0;
    // The energy is physical: U = V / (m w0^2).
    s.energy = 0.1 * 2.0 * 9.0;
    CHECK(*cmd_period(s)[0].T == doctest::Approx(t1 / 3.0).epsilon(1e-13));
}

TEST_CASE("log rho sweep approaches the large-amplitude constant from below") {
    ProblemSpec s = duffing_spec(1.0, 1.0);
    SweepSpec sw{SweepSpec::Param::Rho, 1e2, 1e6, 9, true};
    const auto recs = cmd_sweep(s, sw);
    REQUIRE(recs.size() == 9);
    CHECK(*recs.front().rho == doctest::Approx(100.0).epsilon(1e-15));
    double prev = 0.0;
    for (const auto& r : recs) {
        REQUIRE(r.sqrt_rho_T);
        CHECK(*r.sqrt_rho_T > prev);
        CHECK(*r.sqrt_rho_T < 7.4162988);
        prev = *r.sqrt_rho_T;
    }
    CHECK(std::abs(prev - 7.4162987) < 1e-5);
}

TEST_CASE("sweep validation") {
    ProblemSpec s = duffing_spec(1.0, 1.0);
    CHECK_THROWS_AS(cmd_sweep(s, {SweepSpec::Param::Rho, 1.0, 1.0, 5, false}), UsageError);
    CHECK_THROWS_AS(cmd_sweep(s, {SweepSpec::Param::Rho, 1.0, 2.0, 1, false}), UsageError);
    CHECK_THROWS_AS(cmd_sweep(s, {SweepSpec::Param::Rho, -1.0, 2.0, 3, true}), UsageError);
    s.method = MethodChoice::All;
    CHECK_THROWS_AS(cmd_sweep(s, {SweepSpec::Param::Rho, 1.0, 2.0, 3, false}), UsageError);
    CHECK(run_args({"sweep", "--preset", "duffing", "--param", "rho", "--from", "1", "--to", "1", "--steps", "3"})
              .code == 1);
}

TEST_CASE("cubic energy sweep increases toward the separatrix") {
    ProblemSpec s = cubic_spec(0.1);
    s.energy.reset();
    const auto recs = cmd_sweep(s, {SweepSpec::Param::Energy, 0.01, 0.166, 12, false});
    double prev = 0.0;
    for (const auto& r : recs) {
        CHECK(r.status == "ok");
        CHECK(*r.T > prev);
        prev = *r.T;
    }
}

TEST_CASE("sweep records past the separatrix carry an error status") {
    ProblemSpec s = cubic_spec(0.1);
    s.energy.reset();
    const auto recs = cmd_sweep(s, {SweepSpec::Param::Energy, 0.1, 0.2, 3, false});
    REQUIRE(recs.size() == 3);
    CHECK(recs[0].status == "ok");
    CHECK(recs[2].status == "error");
    CHECK(recs[2].error_code == 2);
}

TEST_CASE("convergence tables") {
    const auto t = cmd_converge(duffing_spec(1.0, 1.0), 8);
    REQUIRE(t.rows.size() == 9);
    CHECK(t.regime == "convergent");
    CHECK(t.closed_form);
    for (int n = 2; n < 8; ++n) {
        const double ratio = t.rows[n + 1].abs_error / t.rows[n].abs_error;
        CHECK(ratio == doctest::Approx(1.0 / 49.0).epsilon(0.3));
    }

    const auto h = cmd_converge(duffing_spec(0.0, 1.0), 5);
    for (const auto& r : h.rows) CHECK(r.abs_error < 1e-14);
    for (std::size_t n = 1; n < h.rows.size(); ++n) CHECK(h.rows[n].term == 0.0);

    ProblemSpec nay = duffing_spec(-0.8, 1.0);
    nay.frame = parse_frame("nayfeh");
    const auto d = cmd_converge(nay, 10);
    CHECK(d.regime == "divergent");
    REQUIRE(d.xi);
    CHECK(*d.xi == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(d.rows.back().abs_error > d.rows[3].abs_error);
}

TEST_CASE("verify exit codes") {
    CHECK(run_args({"verify", "--preset", "duffing", "--lambda", "1", "--amplitude", "1"}).code == 0);
    CHECK(run_args({"verify", "--preset", "duffing", "--lambda", "0", "--amplitude", "1"}).code == 0);
    const auto sep = run_args({"verify", "--preset", "cubic", "--lambda", "1", "--energy", "0.16666666666666666"});
    CHECK(sep.code == 2);
    const auto j = nlohmann::json::parse(sep.out);
    CHECK(j["status"] == "error");
    CHECK(j["error_code"] == 2);

    const auto v = cmd_verify(cubic_spec(0.15));
    CHECK(v.passed);
    CHECK(v.max_deviation < 1e-6);
    CHECK(v.records.size() == 4);
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run_args({}).code == 1);
    CHECK(run_args({"period", "--preset", "duffing", "--lambda", "1"}).code == 1);
    CHECK(run_args({"period", "--preset", "duffing", "--lambda", "1", "--energy", "1", "--amplitude", "1"}).code ==
          1);
    CHECK(run_args({"period", "--preset", "cubic", "--lambda", "1", "--amplitude", "0.2"}).code == 1);
    CHECK(run_args({"period", "--preset", "poly", "--coeffs", "0,0,1,x", "--energy", "1"}).code == 1);
    CHECK(run_args({"period", "--preset", "duffing", "--lambda", "1", "--energy", "1", "--frame", "wobbly"}).code ==
          1);
    CHECK(run_args({"--help"}).code == 0);
}

TEST_CASE("domain errors exit with code 2") {
    CHECK(run_args({"period", "--preset", "duffing", "--lambda", "1", "--energy", "-1"}).code == 2);
    CHECK(run_args({"period", "--preset", "duffing", "--lambda", "-1", "--amplitude", "1"}).code == 2);
    CHECK(run_args({"period", "--preset", "cubic", "--lambda", "1", "--energy", "0.2"}).code == 2);
}

TEST_CASE("general polynomial potentials") {
    const auto r = run_args({"period", "--preset", "poly", "--coeffs", "0,0,0.5,0,0.25", "--energy", "0.75",
                             "--method", "elliptic", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["T"].get<double>() == doctest::Approx(4.7680220291024602).epsilon(1e-13));
}

TEST_CASE("JSON records round-trip bit-exactly") {
    ProblemSpec s = cubic_spec(0.1);
    s.method = MethodChoice::Series;
    for (const auto& r : cmd_period(s)) {
        const auto text = to_json(r).dump();
        const OutputRecord back = record_from_json(nlohmann::json::parse(text));
        CHECK(*back.T == *r.T);
        CHECK(*back.xi == *r.xi);
        CHECK(back.partial_sums == r.partial_sums);
        CHECK(back.method == r.method);
        CHECK(to_json(back) == to_json(r));
    }
}

TEST_CASE("CSV layout") {
    const std::string header = csv_header();
    CHECK(header.rfind("preset,lambda,coeffs,energy,amplitude,mass,omega0,method,frame,N,T,", 0) == 0);
    CHECK(header.find("status,error_code,message") != std::string::npos);
    const auto recs = cmd_period(duffing_spec(1.0, 1.0));
    const std::string row = csv_row(recs[0]);
    CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("frame parsing and spec validation") {
    CHECK(parse_frame("balanced").strategy == FrameStrategy::Balanced);
    CHECK(parse_frame("nayfeh").strategy == FrameStrategy::Nayfeh);
    const auto f = parse_frame("fixed:1.25");
    CHECK(f.strategy == FrameStrategy::Fixed);
    CHECK(f.omega == 1.25);
    CHECK(frame_name(f) == "fixed:1.25");
    CHECK_THROWS_AS(parse_frame("fixed:"), UsageError);
    CHECK_THROWS_AS(parse_frame("fixed:-2"), UsageError);
    CHECK_THROWS_AS(parse_frame("other"), UsageError);

    ProblemSpec s = duffing_spec(1.0, 1.0);
    CHECK_NOTHROW(validate(s));
    s.energy = 1.0;
    CHECK_THROWS_AS(validate(s), UsageError);
    s = duffing_spec(1.0, 1.0);
    s.mass = 0.0;
    CHECK_THROWS_AS(validate(s), UsageError);
    s = duffing_spec(1.0, 1.0);
    s.N = -1;
    CHECK_THROWS_AS(validate(s), UsageError);
}
