#include <gtest/gtest.h>

#include "pcach/backtest.hpp"
#include "pcach/errors.hpp"
#include "pcach/synth_gen.hpp"
#include "support.hpp"

using namespace pcach;
using namespace testsupport;

namespace {

GeneratorConfig corpus_config(int days = 20) {
    auto c = paper_profile_config();
    c.days = days;
    c.seed = 21;
    return c;
}

BacktestOptions options(const GeneratorConfig& c, PredictorKind kind) {
    BacktestOptions o;
    o.config.apps = pcachable_apps(c);
    o.config.predictor = kind;
    o.train_fraction = 0.5;
    o.rounds = 20;
    o.keep_training_snapshot = true;
    return o;
}

class TruthPredictor : public GapPredictor {
public:
    explicit TruthPredictor(GroundTruth t) : truth_(std::move(t)) {}
    bool predict_cut(const HistoryDB&, std::int64_t c) override { return truth_.cut_slots.contains(c + 1); }
    bool predict_resume_in(const HistoryDB&, std::int64_t, std::int64_t s) override {
        return truth_.resume_slots.contains(s);
    }

private:
    GroundTruth truth_;
};

}  // namespace

TEST(Backtest, ShortTraceIsDataError) {
    const auto c = corpus_config(1);
    EXPECT_THROW(backtest(generate_trace(c, "p"), options(c, PredictorKind::History)), DataError);
}

TEST(Backtest, TrainingIgnoresTestPeriod) {
    const auto c = corpus_config();
    for (auto kind : {PredictorKind::History, PredictorKind::AdaBoost}) {
        const auto clean = generate_trace(c, "phone_000");
        const auto o = options(c, kind);
        const auto a = backtest(clean, o);
        const auto b = backtest(poison_after(clean, a.test_start), o);
        EXPECT_EQ(a.test_start, b.test_start);
        EXPECT_EQ(a.training_snapshot, b.training_snapshot);
        EXPECT_EQ(a.cut_model, b.cut_model);
        EXPECT_EQ(a.resume_model, b.resume_model);
        // The poison does reach the test period.
        EXPECT_NE(a.cut, b.cut);
    }
}

TEST(Backtest, PerfectPredictorScoresPerfectly) {
    const auto c = corpus_config();
    const auto t = generate_trace(c, "phone_001");
    auto o = options(c, PredictorKind::History);
    o.resume_tolerance_slots = 0;
    TruthPredictor oracle(ground_truth(t, SlotClock(), o.config.apps));
    const auto r = backtest_with_predictor(t, o, oracle);
    EXPECT_GT(r.cut.tp, 0u);
    EXPECT_EQ(r.cut.fp, 0u);
    EXPECT_EQ(r.cut.fn, 0u);
    EXPECT_EQ(r.resume.fp, 0u);
    EXPECT_EQ(r.resume.fn, 0u);
    EXPECT_EQ(r.resume_slot_misses, 0u);
}

TEST(Backtest, ConfusionCountsCoverEveryTestSlot) {
    const auto c = corpus_config();
    const auto t = generate_trace(c, "phone_002");
    const auto r = backtest(t, options(c, PredictorKind::AdaBoost));
    EXPECT_EQ(r.cut.total(), r.test_slots);
    EXPECT_GT(r.resume.tp + r.resume.fn, 0u);
    EXPECT_FALSE(r.cut_roc.empty());
}

TEST(Backtest, AllAppsGiveFullRecall) {
    const auto c = corpus_config();
    auto o = options(c, PredictorKind::History);
    o.score_gaps = false;
    const int all = static_cast<int>(o.config.apps.size());
    o.app_ks = {1, 5, all};
    const auto r = backtest(generate_trace(c, "phone_003"), o);
    ASSERT_EQ(r.apps.size(), 3u);
    EXPECT_GT(r.apps[2].gaps_scored, 0u);
    EXPECT_DOUBLE_EQ(r.apps[2].mean.tpr, 1.0);
    EXPECT_LE(r.apps[0].mean.tpr, r.apps[1].mean.tpr);
    EXPECT_EQ(r.cut.total(), 0u);
}

TEST(Backtest, DeterministicGivenSeed) {
    const auto c = corpus_config();
    const auto t = generate_trace(c, "phone_004");
    const auto o = options(c, PredictorKind::History);
    const auto a = backtest(t, o), b = backtest(t, o);
    EXPECT_EQ(a.cut, b.cut);
    EXPECT_EQ(a.resume, b.resume);
}

TEST(Backtest, KSweepRowsMacroAverage) {
    PhoneReport a, b;
    a.apps = {{1, {0.2, 0.1, 1}, 3, 0}, {2, {0.6, 0.3, 2}, 3, 0}};
    b.apps = {{1, {0.4, 0.3, 1}, 2, 1}, {2, {0.0, 0.0, 2}, 0, 4}};
    std::vector<PhoneReport> reports = {a, b};
    const auto rows = k_sweep_rows(reports);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_DOUBLE_EQ(rows[0].mean.tpr, 0.3);
    EXPECT_DOUBLE_EQ(rows[0].mean.fpr, 0.2);
    EXPECT_EQ(rows[1].phones, 1u);  // phone b scored no gap at K=2
    EXPECT_DOUBLE_EQ(rows[1].quality_gap, quality_gap(0.6, 0.3));
}

TEST(Backtest, SummarySkipsUndefinedRates) {
    PhoneReport a, b;
    a.cut = {1, 1, 1, 1};
    b.cut = {0, 1, 0, 1};
    std::vector<PhoneReport> reports = {a, b};
    const auto s = summarize(reports);
    EXPECT_EQ(s.phones_skipped_cut, 1u);
    EXPECT_DOUBLE_EQ(s.cut.tpr, 0.5);
}
