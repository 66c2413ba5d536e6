#include <dcc/cli.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "dcc");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = dcc::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

class TempDir : public ::testing::Test {
protected:
    std::filesystem::path dir =
        std::filesystem::temp_directory_path() / ("dcc_cli_test_" + std::to_string(::getpid()));
    void SetUp() override { std::filesystem::create_directories(dir); }
    void TearDown() override { std::filesystem::remove_all(dir); }
};

TEST(CliTable, HeaderAndClosedRows) {
    const auto r = run({"table", "--n-max", "5"});
    ASSERT_EQ(r.code, 0);
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,chi1_max,mean_error,per_axis_error,fidelity");
    EXPECT_EQ(rows[1], (std::vector<std::string>{"1", "1", "4", "0.3333333333", "0.5"}));
    EXPECT_EQ(rows[2], (std::vector<std::string>{"2", "1.618033989", "2.763932023", "0.2303276685",
                                                 "0.6545084972"}));
    for (std::size_t i = 2; i < rows.size(); ++i) {
        EXPECT_LT(std::stod(rows[i][2]), std::stod(rows[i - 1][2]));
        EXPECT_GT(std::stod(rows[i][4]), std::stod(rows[i - 1][4]));
    }
}

TEST(CliTable, JsonAndUsageErrors) {
    const auto r = run({"table", "--n-max", "2", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    ASSERT_EQ(doc.size(), 2u);
    EXPECT_NEAR(doc[1]["mean_error"].get<double>(), 5 - std::sqrt(5.0), 1e-12);
    EXPECT_EQ(run({"table", "--n-max", "0"}).code, 2);
    EXPECT_EQ(run({"table"}).code, 2);
    EXPECT_EQ(run({"table", "--n-max", "3", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"bogus"}).code, 2);
}

TEST(CliCoeffs, Rows) {
    EXPECT_EQ(run({"coeffs", "1"}).out, "two_j,a_j\n1,1\n");
    EXPECT_EQ(run({"coeffs", "2"}).out, "two_j,a_j\n2,0.8506508084\n0,0.5257311121\n");
    EXPECT_EQ(run({"coeffs", "3"}).out, "two_j,a_j\n3,0.7071067812\n1,0.7071067812\n");
    EXPECT_EQ(run({"coeffs", "0"}).code, 2);
}

TEST_F(TempDir, DesignWritesDeterministicCertifiedFile) {
    const auto path = (dir / "n2.json").string();
    const auto r = run({"design", "2", "--out", path});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("points=243"), std::string::npos);
    const std::string first = slurp(path);
    const auto doc = nlohmann::json::parse(first);
    EXPECT_EQ(doc["points"].size(), 243u);
    EXPECT_EQ(doc["n_spins"], 2);
    EXPECT_EQ(doc["j_max_twice"], 4);
    EXPECT_LE(doc["residual"].get<double>(), 1e-9);
    double total = 0.0;
    for (const auto& p : doc["points"]) {
        EXPECT_GE(p["q"][0].get<double>(), 0.0);
        total += p["weight"].get<double>();
    }
    EXPECT_NEAR(total, 1.0, 1e-12);

    ASSERT_EQ(run({"design", "2", "--out", path}).code, 0);
    EXPECT_EQ(slurp(path), first);

    const auto path4 = (dir / "n4.json").string();
    ASSERT_EQ(run({"design", "4", "--out", path4}).code, 0);
    EXPECT_EQ(nlohmann::json::parse(slurp(path4))["points"].size(), 676u);
}

TEST_F(TempDir, DesignReportsIoFailure) {
    const auto r = run({"design", "1", "--out", (dir / "missing" / "x.json").string()});
    EXPECT_EQ(r.code, 1);
}

TEST(CliSimulate, JsonSummaryIsDeterministic) {
    const auto a = run({"simulate", "2", "--trials", "20000", "--seed", "7"});
    ASSERT_EQ(a.code, 0) << a.err;
    const auto doc = nlohmann::json::parse(a.out);
    std::vector<std::string> keys;
    for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
    std::sort(keys.begin(), keys.end());
    EXPECT_EQ(keys, (std::vector<std::string>{"analytic_h", "design_size", "mean_h", "n_spins", "seed",
                                              "stderr_h", "trials", "z_score"}));
    EXPECT_NEAR(doc["analytic_h"].get<double>(), 2.7639320225002103, 1e-12);
    EXPECT_LE(std::abs(doc["z_score"].get<double>()), 3.0);
    EXPECT_EQ(run({"simulate", "2", "--trials", "20000", "--seed", "7"}).out, a.out);
    EXPECT_EQ(run({"simulate", "2", "--trials", "20000", "--seed", "7", "--threads", "4"}).out, a.out);
}

TEST(CliSimulate, SingleTrialReportsNull) {
    const auto r = run({"simulate", "1", "--trials", "1", "--seed", "3"});
    ASSERT_EQ(r.code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_TRUE(doc["stderr_h"].is_null());
    EXPECT_TRUE(doc["z_score"].is_null());
}

TEST(CliSimulate, CsvAndUsage) {
    const auto r = run({"simulate", "1", "--trials", "500", "--seed", "3", "--format", "csv"});
    ASSERT_EQ(r.code, 0);
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].size(), 8u);
    EXPECT_EQ(rows[1][0], "1");
    EXPECT_EQ(rows[1][1], "500");
    EXPECT_EQ(run({"simulate", "1", "--trials", "0", "--seed", "3"}).code, 2);
    EXPECT_EQ(run({"simulate", "1", "--seed", "3"}).code, 2);
}

TEST_F(TempDir, SimulateWithDesignFile) {
    const auto path = (dir / "n1.json").string();
    ASSERT_EQ(run({"design", "1", "--out", path}).code, 0);
    const auto with_file = run({"simulate", "1", "--trials", "3000", "--seed", "11", "--design", path});
    const auto built = run({"simulate", "1", "--trials", "3000", "--seed", "11"});
    ASSERT_EQ(with_file.code, 0) << with_file.err;
    EXPECT_EQ(with_file.out, built.out);

    EXPECT_EQ(run({"simulate", "2", "--trials", "10", "--seed", "1", "--design", path}).code, 1);

    const auto bad = (dir / "bad.json").string();
    std::ofstream(bad) << R"({"n_spins": 1, "j_max_twice": 3, "points": [{"q": [1,0,0,0], "weight": 1}], "residual": 0})";
    const auto r = run({"simulate", "1", "--trials", "10", "--seed", "1", "--design", bad});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("certification"), std::string::npos);
    EXPECT_EQ(run({"simulate", "1", "--trials", "10", "--seed", "1", "--design", (dir / "nope.json").string()}).code,
              1);
}

TEST(CliVerify, SmallNRunsEveryCheck) {
    for (const char* n : {"1", "2", "3", "4"}) {
        const auto r = run({"verify", n});
        EXPECT_EQ(r.code, 0) << r.out;
        EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
        EXPECT_NE(r.out.find("completeness"), std::string::npos);
    }
    EXPECT_NE(run({"verify", "2"}).out.find("explicit probabilities"), std::string::npos);
    EXPECT_NE(run({"verify", "3"}).out.find("multiplicity"), std::string::npos);
}

TEST(CliVerify, LargeNSkipsExplicitChecks) {
    const auto r = run({"verify", "12"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("completeness"), std::string::npos);
    EXPECT_EQ(r.out.find("explicit"), std::string::npos);
    EXPECT_EQ(run({"verify", "0"}).code, 2);
}

}  // namespace
