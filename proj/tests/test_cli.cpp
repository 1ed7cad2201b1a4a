#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
    int code = -1;
    std::string out;
    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run run(const std::string& args) {
    const std::string cmd = std::string(FQM_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST(Cli, FreeAllMethodsAgree) {
    const auto r = run("--no-meta free --a 2 --x0 0 --x1 1 --N 4 --method all");
    ASSERT_EQ(r.code, 0) << r.out;
    const auto j = r.json();
    EXPECT_EQ(j["schema_version"], 1);
    EXPECT_EQ(j["command"], "free");
    EXPECT_NEAR(j["outputs"]["value"]["re"].get<double>(), 0.5, 1e-12);
    EXPECT_NEAR(j["outputs"]["value"]["im"].get<double>(), 0.5, 1e-12);
    EXPECT_EQ(j["outputs"]["methods"].size(), 4u);
    EXPECT_LT(j["deviations"]["max_cross_method_abs"].get<double>(), 1e-12);
    EXPECT_TRUE(j["outputs"]["reduction_exact"].get<bool>());
    EXPECT_FALSE(j.contains("meta"));
}

TEST(Cli, FreeDefaultsToMinimalN) {
    const auto j = run("--no-meta free --a 4 --x0 1/2 --x1 3/2").json();
    EXPECT_EQ(j["inputs"]["N"], 8);
    ASSERT_EQ(j["warnings"].size(), 1u);
}

TEST(Cli, OddScaleIsValidationError) {
    const auto r = run("--no-meta free --a 3 --x1 1 --N 6");
    EXPECT_EQ(r.code, 2);
    const auto j = r.json();
    EXPECT_EQ(j["error"]["kind"], "ValidationError");
    EXPECT_NE(j["error"]["message"].get<std::string>().find("a must be even"), std::string::npos);
    EXPECT_EQ(j["exit_code"], 2);
}

TEST(Cli, NonIntegerDisplacementIsRejected) {
    const auto r = run("--no-meta free --a 2 --x0 0 --x1 0.5 --N 4");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.json()["error"]["message"].get<std::string>().find("x1 - x0 must be an integer"), std::string::npos);
}

TEST(Cli, PhysicalModeSuggestsNearestEvenScale) {
    const auto r = run("--no-meta free --particle electron --time 1 --x1 1");
    EXPECT_EQ(r.code, 2);
    const auto d = r.json()["error"]["details"];
    EXPECT_EQ(d["nearest_even_a"].get<double>(), 8.0);
    EXPECT_NEAR(d["time_for_nearest_even_a"].get<double>(), 8.0 / 7.273895103253708, 1e-9);
}

TEST(Cli, OscillatorQuarterPeriod) {
    const auto r = run("--no-meta oscillator --t pi/2 --x0 0 --x1 0");
    ASSERT_EQ(r.code, 0) << r.out;
    const auto v = r.json()["outputs"]["value"];
    EXPECT_NEAR(v["abs"].get<double>(), 0.39894, 1e-5);
    EXPECT_NEAR(v["arg"].get<double>(), -std::numbers::pi / 4, 1e-12);
}

TEST(Cli, OscillatorAdmissibleScaleRunsAllMethods) {
    const auto r = run("--no-meta oscillator --a 4 --omega-t pi/3 --x0 1/2 --x1 5/2 --N 16");
    ASSERT_EQ(r.code, 0) << r.out;
    const auto j = r.json();
    EXPECT_EQ(j["outputs"]["methods"].size(), 4u);
    EXPECT_LT(j["deviations"]["max_cross_method_rel"].get<double>(), 1e-8);
    EXPECT_EQ(j["outputs"]["beta_b2_over_pi"], "-1/4");
}

TEST(Cli, OscillatorHalfPeriodIsSingular) {
    const auto r = run("--no-meta oscillator --t pi");
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(r.json()["error"]["kind"], "SingularityError");
}

TEST(Cli, GaussCheck) {
    const auto r = run("--no-meta gauss --c 1 --d 1 --g 5 --check");
    ASSERT_EQ(r.code, 0);
    const auto j = r.json();
    EXPECT_NEAR(j["outputs"]["value"]["abs"].get<double>(), std::sqrt(5.0), 1e-12);
    EXPECT_LT(j["deviations"]["direct_vs_reciprocity"].get<double>(), 1e-12);
}

TEST(Cli, SpaceSizeElectronHour) {
    const auto j = run("--no-meta space-size --particle electron --time 3600 --unit cm").json();
    EXPECT_NEAR(j["outputs"]["length_m"].get<double>(), 261.86, 0.01);
}

TEST(Cli, WeylHalfShift) {
    const auto j = run("--no-meta weyl --N 64 --shift 32 --s 1").json();
    EXPECT_EQ(j["outputs"]["wrapped_points"], 32);
    EXPECT_DOUBLE_EQ(j["outputs"]["fraction"].get<double>(), 0.5);
}

TEST(Cli, SweepJsonAndCsv) {
    const std::string path = ::testing::TempDir() + "fqm_sweep.json";
    std::ofstream(path) << R"({"quantity":"free_propagator","params":{"a":2,"x0":0,"x1":1},"chain":[4,8,16]})";
    const auto j = run("--no-meta sweep " + path + " --jobs 2").json();
    EXPECT_TRUE(j["outputs"]["stabilized"].get<bool>());
    EXPECT_EQ(j["outputs"]["stabilized_at"], 4);
    const auto csv = run("sweep " + path + " --csv");
    EXPECT_EQ(csv.code, 0);
    EXPECT_EQ(csv.out.rfind("N,", 0), 0u);
}

TEST(Cli, EmbedModeIsExactVVector) {
    const auto j = run("--no-meta embed --family mode --N 16 --n -3").json();
    EXPECT_EQ(j["outputs"]["v_index"], 13);
    EXPECT_TRUE(j["outputs"]["equals_v_exactly"].get<bool>());
}

TEST(Cli, UnknownFlagExitsTwo) { EXPECT_EQ(run("free --bogus 1").code, 2); }

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run("--help").code, 0); }

TEST(Cli, VerifyPasses) {
    const auto r = run("--no-meta verify --seed 7");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_TRUE(r.json()["outputs"]["passed"].get<bool>());
}

TEST(Cli, NoMetaOutputIsDeterministic) {
    const std::string args = "--no-meta free --a 6 --x0 1/3 --x1 7/3 --N 18";
    const auto a = run(args);
    const auto b = run(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, MetaBlockByDefault) {
    const auto j = run("gauss --c 1 --d 0 --g 4").json();
    ASSERT_TRUE(j.contains("meta"));
    EXPECT_EQ(j["meta"]["tool"], "fqm");
}
