#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace gjsoq::cli {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("gjsoq_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        std::ofstream(path("baseline.json"))
            << R"({"lambda0":0.15,"lambda1":0.05,"lambda2":0.01,"mu":0.44,"alpha1":0.25,"alpha2":0.1})";
        std::ofstream(path("weak.json"))
            << R"({"lambda0":0.01,"lambda1":0.12,"lambda2":0.0,"mu":1.0,"alpha1":0.5,"alpha2":0.5})";
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    static int call(std::vector<std::string> args) {
        args.insert(args.begin(), "gjsoq");
        return run(args);
    }

    static std::string slurp(const std::string& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    // Data rows of a CSV, skipping provenance comments and the header.
    static int csv_rows(const std::string& p) {
        std::ifstream in(p);
        std::string line;
        int rows = -1;
        while (std::getline(in, line))
            if (!line.empty() && line[0] != '#') ++rows;
        return rows;
    }

    fs::path dir_;
};

TEST_F(Cli, StabilityReportsLoads) {
    ASSERT_EQ(call({"stability", "--params", path("baseline.json"), "--out", path("s.json")}), kOk);
    const json j = json::parse(slurp(path("s.json")));
    EXPECT_NEAR(j["rates"]["rho"].get<double>(), 0.7636, 5e-5);
    EXPECT_EQ(j["provenance"]["parameter_source"], path("baseline.json"));
}

TEST_F(Cli, MissingParameterFileIsAnInputError) {
    ::testing::internal::CaptureStderr();
    const int code = call({"stability", "--params", path("absent.json")});
    const std::string err = ::testing::internal::GetCapturedStderr();
    EXPECT_EQ(code, kInputError);
    EXPECT_NE(err.find(path("absent.json")), std::string::npos);
}

TEST_F(Cli, InlineFlagsOverrideTheFile) {
    ASSERT_EQ(call({"stability", "--params", path("baseline.json"), "--mu", "0.5", "--out",
                    path("s.json")}),
              kOk);
    const json j = json::parse(slurp(path("s.json")));
    EXPECT_EQ(j["provenance"]["parameters"]["mu"], 0.5);
    EXPECT_EQ(j["provenance"]["overrides"]["mu"], 0.5);
    EXPECT_EQ(j["provenance"]["parameters"]["lambda0"], 0.15);
}

TEST_F(Cli, InlineOnlyNeedsEveryRate) {
    EXPECT_EQ(call({"stability", "--lambda0", "0.15"}), kInputError);
    EXPECT_EQ(call({"stability", "--lambda0", "0.15", "--lambda1", "0.05", "--lambda2", "0.01",
                    "--mu", "0.44", "--alpha1", "0.25", "--alpha2", "0.1", "--out",
                    path("s.json")}),
              kOk);
    EXPECT_EQ(json::parse(slurp(path("s.json")))["provenance"]["parameter_source"], "inline");
}

TEST_F(Cli, DecayRate) {
    ASSERT_EQ(call({"decay", "--params", path("baseline.json"), "--out", path("d.json")}), kOk);
    EXPECT_NEAR(json::parse(slurp(path("d.json")))["decay_rate"].get<double>(), 0.5831, 5e-5);
}

TEST_F(Cli, DecayRefusesWeakPooling) {
    ::testing::internal::CaptureStderr();
    const int code = call({"decay", "--params", path("weak.json")});
    const std::string err = ::testing::internal::GetCapturedStderr();
    EXPECT_EQ(code, kHypothesisViolation);
    EXPECT_NE(err.find("not strongly pooled"), std::string::npos);
}

TEST_F(Cli, DecayTable) {
    ASSERT_EQ(call({"decay", "--params", path("baseline.json"), "--table", "m_max=30",
                    "l_range=-5..5", "--table-out", path("t.csv")}),
              kOk);
    EXPECT_EQ(csv_rows(path("t.csv")), 31 * 11 * 2);
    EXPECT_EQ(call({"decay", "--params", path("baseline.json"), "--table", "m_max=x"}), kInputError);
    EXPECT_EQ(call({"decay", "--params", path("baseline.json"), "--table", "depth=3"}), kInputError);
}

TEST_F(Cli, ApproxGridAndRatio) {
    ASSERT_EQ(call({"approx", "--params", path("baseline.json"), "--i-max", "5", "--j-max", "4",
                    "--out", path("g.csv")}),
              kOk);
    EXPECT_EQ(csv_rows(path("g.csv")), 6 * 5 * 2);
    ASSERT_EQ(call({"approx", "--params", path("baseline.json"), "--ratio", "50", "--out",
                    path("r.csv")}),
              kOk);
    EXPECT_EQ(csv_rows(path("r.csv")), 51);
}

TEST_F(Cli, SolveWritesSolutionAndDiagnostics) {
    ASSERT_EQ(call({"solve", "--params", path("baseline.json"), "--n-max", "12", "--out",
                    path("p.csv"), "--diag", path("diag.json")}),
              kOk);
    EXPECT_EQ(csv_rows(path("p.csv")), 13 * 13 * 2);
    EXPECT_NEAR(json::parse(slurp(path("diag.json")))["total_probability"].get<double>(), 1.0,
                1e-12);
    ASSERT_EQ(call({"solve", "--params", path("baseline.json"), "--reference", "--n-max", "20",
                    "--out", path("ref.csv")}),
              kOk);
    EXPECT_EQ(csv_rows(path("ref.csv")), 21);
    EXPECT_EQ(call({"solve", "--params", path("baseline.json"), "--format", "xml"}), kInputError);
}

TEST_F(Cli, SimulateScenario) {
    ASSERT_EQ(call({"simulate", "--scenario", "criterion1-pooled", "--horizon", "1e4", "--seed",
                    "3", "--format", "json", "--out", path("sim.json")}),
              kOk);
    const json j = json::parse(slurp(path("sim.json")));
    EXPECT_EQ(j["scenario"], "criterion1-pooled");
    EXPECT_EQ(j["seed"], 3);
    EXPECT_EQ(j["provenance"]["parameter_source"], "preset:criterion1-pooled");
    EXPECT_EQ(call({"simulate", "--scenario", "nope"}), kInputError);
}

TEST_F(Cli, SimulateTrajectoryCsv) {
    ASSERT_EQ(call({"simulate", "--params", path("baseline.json"), "--horizon", "1e3",
                    "--sample-dt", "10", "--out", path("traj.csv"), "--summary",
                    path("sum.json")}),
              kOk);
    EXPECT_GE(csv_rows(path("traj.csv")), 100);
    EXPECT_TRUE(json::parse(slurp(path("sum.json"))).contains("summary"));
}

TEST_F(Cli, ValidateDefaultsPass) {
    ::testing::internal::CaptureStderr();
    const int code = call({"validate", "--out", path("v.json")});
    const std::string err = ::testing::internal::GetCapturedStderr();
    EXPECT_EQ(code, kOk) << err;
    const json j = json::parse(slurp(path("v.json")));
    EXPECT_TRUE(j["passed"].get<bool>());
    EXPECT_EQ(err.find("FAIL"), std::string::npos);
}

TEST_F(Cli, ValidateFailureExitCode) {
    // A truncation this coarse cannot resolve the decay window.
    ::testing::internal::CaptureStderr();
    const int code = call({"validate", "--n-max", "10", "--out", path("v.json")});
    const std::string err = ::testing::internal::GetCapturedStderr();
    EXPECT_EQ(code, kValidationFailure);
    EXPECT_NE(err.find("FAIL oracle-decay"), std::string::npos);
}

TEST_F(Cli, SweepWritesOneFilePerPoint) {
    const std::string out = path("sweep");
    ASSERT_EQ(call({"sweep", "--params", path("baseline.json"), "--command", "solve", "--grid",
                    "lambda0=0.1,0.15", "--grid", "alpha2=0.1:0.2:3", "--out-dir", out, "--jobs",
                    "2", "--", "--n-max", "8"}),
              kOk);
    EXPECT_EQ(csv_rows(out + "/index.csv"), 6);
    for (int n = 0; n < 6; ++n)
        EXPECT_EQ(csv_rows(out + "/point_" + std::to_string(n) + ".csv"), 9 * 9 * 2);
}

TEST_F(Cli, SweepReportsTheWorstPoint) {
    const std::string out = path("sweep");
    EXPECT_EQ(call({"sweep", "--params", path("baseline.json"), "--command", "decay", "--grid",
                    "lambda0=0.1,0.9", "--out-dir", out}),
              kHypothesisViolation);
    EXPECT_EQ(call({"sweep", "--params", path("baseline.json"), "--command", "decay", "--grid",
                    "kappa=1", "--out-dir", out}),
              kInputError);
}

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(call({}), kInputError);
    EXPECT_EQ(call({"frobnicate"}), kInputError);
    EXPECT_EQ(call({"stability", "--params", path("baseline.json"), "--bogus"}), kInputError);
    EXPECT_EQ(call({"stability", "--params", path("baseline.json"), "--", "x"}), kInputError);
    ::testing::internal::CaptureStdout();
    EXPECT_EQ(call({"--help"}), kOk);
    ::testing::internal::GetCapturedStdout();
}

}  // namespace
}  // namespace gjsoq::cli
