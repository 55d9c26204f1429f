#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pcach/adaboost.hpp"
#include "pcach/errors.hpp"
#include "pcach/rng.hpp"

using namespace pcach;

namespace {

FeatureVector fv_from(const std::array<double, 9>& v) {
    FeatureVector f;
    f.home_wifi_night = v[0] > 0.5;
    f.work_wifi_day = v[1] > 0.5;
    f.is_weekday = v[2] > 0.5;
    f.n_visible_wifi = static_cast<int>(v[3]);
    f.top1_seen = v[4] > 0.5;
    f.top2_seen = v[5] > 0.5;
    f.top3_seen = v[6] > 0.5;
    f.slot_index = static_cast<int>(v[7]);
    f.slot_event_prob = v[8];
    return f;
}

std::vector<LabeledExample> noisy_examples(std::uint64_t seed, std::size_t n, double positive_rate = 0.3) {
    Rng r(seed);
    std::vector<LabeledExample> d;
    for (std::size_t i = 0; i < n; ++i) {
        std::array<double, 9> v{};
        for (int j : {0, 1, 2, 4, 5, 6}) v[static_cast<std::size_t>(j)] = r.bernoulli(0.5);
        v[3] = static_cast<double>(r.uniform_int(0, 8));
        v[7] = static_cast<double>(r.uniform_int(0, 95));
        v[8] = r.uniform();
        const bool noisy_positive = v[8] + 0.3 * (v[4] - 0.5) + 0.2 * (r.uniform() - 0.5) > 1 - positive_rate;
        d.push_back({fv_from(v), noisy_positive ? 1 : -1});
    }
    return d;
}

// Weighted error of the best stump, by trying every feature, every
// observed value as a threshold boundary, and both polarities.
double exhaustive_best_error(const std::vector<LabeledExample>& d, std::span<const double> w) {
    double best = 1.0;
    for (int f = 1; f <= 9; ++f) {
        std::vector<double> vals;
        for (const auto& e : d) vals.push_back(e.features[f]);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
            const double thr = (vals[i] + vals[i + 1]) / 2;
            for (int pol : {1, -1}) {
                Stump s{f, thr, pol, 0};
                double err = 0;
                for (std::size_t k = 0; k < d.size(); ++k)
                    if (s.vote(d[k].features) != d[k].label) err += w[k];
                best = std::min(best, err);
            }
        }
    }
    return best;
}

}  // namespace

TEST(AdaBoost, RejectsDegenerateInput) {
    EXPECT_THROW(adaboost_train({}, 5), DegenerateDataError);
    std::vector<LabeledExample> one_label(3, LabeledExample{FeatureVector{}, 1});
    EXPECT_THROW(adaboost_train(one_label, 5), DegenerateDataError);
    auto d = noisy_examples(1, 20);
    EXPECT_THROW(adaboost_train(d, 0), ParameterError);
}

TEST(AdaBoost, ConstantFeaturesGiveEmptyModel) {
    std::vector<LabeledExample> d = {{FeatureVector{}, 1}, {FeatureVector{}, -1}};
    const auto m = adaboost_train(d, 10);
    EXPECT_TRUE(m.stumps.empty());
    EXPECT_THROW(adaboost_predict(m, FeatureVector{}), ModelError);
}

TEST(AdaBoost, WeightsStayNormalizedAndErrorsBelowHalf) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto d = noisy_examples(seed, 300);
        int rounds_seen = 0;
        adaboost_train(d, 30, [&](const RoundInfo& info) {
            ++rounds_seen;
            const double sum = std::accumulate(info.updated_weights.begin(), info.updated_weights.end(), 0.0);
            EXPECT_NEAR(sum, 1.0, 1e-9);
            EXPECT_LT(info.weighted_error, 0.5);
            EXPECT_GT(info.stump.alpha, 0.0);
        });
        EXPECT_GT(rounds_seen, 0);
    }
}

TEST(AdaBoost, ChosenStumpIsTheExhaustiveOptimum) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto d = noisy_examples(seed, 120);
        adaboost_train(d, 8, [&](const RoundInfo& info) {
            EXPECT_NEAR(info.weighted_error, exhaustive_best_error(d, info.selection_weights), 1e-12);
        });
    }
}

TEST(AdaBoost, SeparableDataReachesZeroTrainingError) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng r(seed);
        const int feature = static_cast<int>(r.uniform_int(4, 9));
        std::vector<LabeledExample> d;
        for (int i = 0; i < 100; ++i) {
            std::array<double, 9> v{};
            for (auto& x : v) x = r.bernoulli(0.5);
            v[3] = static_cast<double>(r.uniform_int(0, 10));
            v[7] = static_cast<double>(r.uniform_int(0, 95));
            v[8] = r.uniform();
            d.push_back({fv_from(v), 0});
        }
        const double cut = d[0].features[feature];
        for (auto& e : d) e.label = e.features[feature] > cut ? 1 : -1;
        if (std::all_of(d.begin(), d.end(), [&](const auto& e) { return e.label == d[0].label; })) continue;
        std::vector<double> uniform(d.size(), 1.0 / static_cast<double>(d.size()));
        ASSERT_EQ(exhaustive_best_error(d, uniform), 0.0);  // separable by one stump
        const auto m = adaboost_train(d, 3);
        EXPECT_LE(m.stumps.size(), 3u);
        EXPECT_EQ(training_error(m, d), 0.0) << seed;
    }
}

TEST(AdaBoost, PredictionInvariantToStumpOrder) {
    const auto d = noisy_examples(3, 200);
    auto m = adaboost_train(d, 20);
    ASSERT_GT(m.stumps.size(), 2u);
    auto shuffled = m;
    std::reverse(shuffled.stumps.begin(), shuffled.stumps.end());
    std::rotate(shuffled.stumps.begin(), shuffled.stumps.begin() + 1, shuffled.stumps.end());
    for (const auto& e : d) EXPECT_EQ(adaboost_predict(m, e.features).label, adaboost_predict(shuffled, e.features).label);
}

TEST(AdaBoost, ZeroMarginVotesNegative) {
    AdaBoostModel m;
    m.stumps = {{9, 0.5, 1, 1.0}, {9, 0.5, -1, 1.0}};
    EXPECT_EQ(adaboost_predict(m, FeatureVector{}).label, -1);
    EXPECT_EQ(adaboost_predict(m, FeatureVector{}).margin, 0.0);
}

TEST(AdaBoost, LearnsSignalBetterThanChance) {
    const auto train = noisy_examples(10, 2000);
    const auto test = noisy_examples(11, 2000);
    const auto m = adaboost_train(train, 50);
    EXPECT_LT(training_error(m, test), 0.2);
}

TEST(AdaBoost, JsonRoundTrip) {
    const auto m = adaboost_train(noisy_examples(5, 200), 10);
    EXPECT_EQ(model_from_json(model_to_json(m)), m);
    EXPECT_THROW(model_from_json("[]"), ModelError);
    EXPECT_THROW(model_from_json(R"({"rounds":1,"stumps":[{"feature":12,"threshold":0,"polarity":1,"alpha":1}]})"),
                 ModelError);
}
