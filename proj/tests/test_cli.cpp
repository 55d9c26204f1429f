#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pcach/reports.hpp"
#include "pcach/synth_gen.hpp"
#include "pcach/trace_io.hpp"

namespace fs = std::filesystem;
using namespace pcach;

namespace {

const fs::path kWork = fs::path(PCACH_TEST_WORKDIR) / "cli";

int run(const std::string& args) {
    const std::string cmd = std::string("\"") + PCACH_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
protected:
    fs::path dir;
    void SetUp() override {
        dir = kWork / ::testing::UnitTest::GetInstance()->current_test_info()->name();
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    std::string p(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_F(Cli, GenerateWritesOneTracePerPhoneAndManifest) {
    ASSERT_EQ(run("--seed 7 generate --phones 10 --days 30 --out " + p("t")), 0);
    EXPECT_EQ(list_trace_files(p("t")).size(), 10u);
    EXPECT_TRUE(fs::exists(dir / "t" / "phone_000.jsonl"));
    const auto m = nlohmann::json::parse(slurp(dir / "t" / "manifest.json"));
    EXPECT_EQ(m["command"], "generate");
    EXPECT_EQ(m["seed"], 7);
    EXPECT_EQ(m["parameters"]["days"], 30);
}

TEST_F(Cli, GenerateIsByteIdenticalAcrossRuns) {
    ASSERT_EQ(run("--seed 7 generate --phones 3 --days 5 --out " + p("a")), 0);
    const auto first = slurp(dir / "a" / "phone_001.jsonl");
    const auto manifest = slurp(dir / "a" / "manifest.json");
    ASSERT_EQ(run("--seed 7 generate --phones 3 --days 5 --out " + p("a")), 0);
    EXPECT_EQ(slurp(dir / "a" / "phone_001.jsonl"), first);
    EXPECT_EQ(slurp(dir / "a" / "manifest.json"), manifest);
}

TEST_F(Cli, GeneratedTraceMatchesLibrary) {
    ASSERT_EQ(run("--seed 5 --format csv generate --phones 2 --days 4 --out " + p("t")), 0);
    auto cfg = paper_profile_config();
    cfg.seed = 5;
    cfg.days = 4;
    EXPECT_EQ(load_trace_file(dir / "t" / "phone_001.csv"), generate_trace(cfg, "phone_001"));
}

TEST_F(Cli, CustomConfigIsHonored) {
    auto cfg = paper_profile_config();
    cfg.app_catalog = {{"solo", true, 1, 1}};
    std::ofstream(dir / "cfg.json") << config_to_json(cfg);
    ASSERT_EQ(run("generate --phones 1 --days 2 --config " + p("cfg.json") + " --out " + p("t")), 0);
    const auto t = load_trace_file(dir / "t" / "phone_000.jsonl");
    for (const auto& s : t.samples)
        for (const auto& a : s.apps) ASSERT_EQ(a.app_id, "solo");
}

TEST_F(Cli, MineBoundHasOneRowPerPhoneAndHorizon) {
    ASSERT_EQ(run("--seed 3 generate --phones 4 --days 6 --out " + p("t")), 0);
    ASSERT_EQ(run("--format csv mine --traces " + p("t") + " --out " + p("m") + " --horizon 30,60,120"), 0);
    std::istringstream in(slurp(dir / "m" / "bound.csv"));
    std::string line;
    std::getline(in, line);
    std::map<std::string, int> rows;
    while (std::getline(in, line)) ++rows[line.substr(0, line.find(','))];
    EXPECT_EQ(rows.size(), 5u);  // four phones plus the pooled rows
    for (const auto& [phone, n] : rows) EXPECT_EQ(n, 3) << phone;
}

TEST_F(Cli, MineMatchesLibraryCalls) {
    ASSERT_EQ(run("--seed 3 generate --phones 3 --days 6 --out " + p("t")), 0);
    ASSERT_EQ(run("mine --traces " + p("t") + " --out " + p("m")), 0);
    std::vector<PhoneMining> mined;
    for (const auto& f : list_trace_files(p("t")))
        mined.push_back(mine_phone(load_trace_file(f), SlotClock(15), kDefaultHorizonsMinutes));
    EXPECT_EQ(slurp(dir / "m" / "mining_summary.json"), mining_summary_json(summarize_mining(mined)));
    std::ostringstream os;
    write_table(os, bound_table(mined), ReportFormat::Json);
    EXPECT_EQ(slurp(dir / "m" / "bound.json"), os.str());
}

TEST_F(Cli, BacktestSweepHasMonotoneTpr) {
    ASSERT_EQ(run("--seed 3 generate --phones 2 --days 16 --out " + p("t")), 0);
    ASSERT_EQ(run("--format csv backtest --traces " + p("t") + " --out " + p("b") +
                  " --predictor history --k 10 --sweep-k 1,2,3,4,5,6,7,10,15,20,25,30"),
              0);
    std::istringstream in(slurp(dir / "b" / "k_sweep.csv"));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "k,tpr,fpr,quality_gap,phones");
    double prev = -1;
    int n = 0;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string k, tpr;
        std::getline(ss, k, ',');
        std::getline(ss, tpr, ',');
        EXPECT_GE(std::stod(tpr), prev) << line;
        prev = std::stod(tpr);
        ++n;
    }
    EXPECT_EQ(n, 12);
    EXPECT_TRUE(fs::exists(dir / "b" / "evaluation_summary.json"));
}

TEST_F(Cli, AdaBoostBacktestWritesModels) {
    ASSERT_EQ(run("--seed 3 generate --phones 1 --days 10 --out " + p("t")), 0);
    ASSERT_EQ(run("backtest --traces " + p("t") + " --out " + p("b") + " --predictor adaboost --rounds 50"), 0);
    EXPECT_TRUE(fs::exists(dir / "b" / "models" / "phone_000.cut.json"));
    EXPECT_TRUE(fs::exists(dir / "b" / "cut_roc.json"));
}

TEST_F(Cli, ErrorsGiveNonZeroExit) {
    fs::create_directories(dir / "empty");
    EXPECT_NE(run("mine --traces " + p("empty") + " --out " + p("m")), 0);
    EXPECT_NE(run("mine --traces " + p("missing") + " --out " + p("m")), 0);
    EXPECT_NE(run("--slot-minutes 7 generate --phones 1 --days 1 --out " + p("t")), 0);
    EXPECT_NE(run("backtest --predictor svm --traces " + p("empty")), 0);
    EXPECT_NE(run("generate --phones 0 --out " + p("t")), 0);
    EXPECT_NE(run("bogus"), 0);
    std::ofstream(dir / "empty" / "bad.jsonl") << "{not json}\n";
    EXPECT_NE(run("gaps --traces " + p("empty") + " --out " + p("g")), 0);
}
