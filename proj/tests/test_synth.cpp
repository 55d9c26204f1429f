#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "pcach/errors.hpp"
#include "pcach/mining.hpp"
#include "pcach/synth_gen.hpp"
#include "support.hpp"

using namespace pcach;

namespace {

GeneratorConfig small(int days = 7, std::uint64_t seed = 3) {
    auto c = paper_profile_config();
    c.days = days;
    c.seed = seed;
    return c;
}

}  // namespace

TEST(Generator, DeterministicPerSeedAndPhone) {
    const auto c = small();
    EXPECT_EQ(generate_trace(c, "phone_001"), generate_trace(c, "phone_001"));
    EXPECT_NE(generate_trace(c, "phone_001").samples, generate_trace(c, "phone_002").samples);
    auto d = c;
    d.seed = 4;
    EXPECT_NE(generate_trace(c, "phone_001").samples, generate_trace(d, "phone_001").samples);
}

TEST(Generator, OutputPassesTraceInvariants) {
    for (int i = 0; i < 5; ++i) EXPECT_NO_THROW(validate_trace(generate_trace(small(), phone_name(i))));
}

TEST(Generator, ZeroDaysIsEmptyTrace) { EXPECT_THROW(generate_trace(small(0), "p"), EmptyTraceError); }

TEST(Generator, RejectsBadConfig) {
    auto c = small();
    c.app_catalog[0].traffic_weight = -1;
    EXPECT_THROW(generate_trace(c, "p"), ConfigurationError);
    c = small();
    c.cellular_share_target = 1.5;
    EXPECT_THROW(validate(c), ConfigurationError);
    c = small();
    for (auto& a : c.app_catalog) a.traffic_weight = 0;
    EXPECT_THROW(validate(c), ConfigurationError);
}

TEST(Generator, ScheduleMatchesDetectedGaps) {
    for (int i = 0; i < 10; ++i) {
        const auto g = generate_trace_with_schedule(small(14, 9), phone_name(i));
        const auto normalized = normalize_timeline(g.trace, derive_preferred_profile(g.trace));
        EXPECT_EQ(detect_gaps(normalized), g.gaps) << phone_name(i);
    }
}

TEST(Generator, CustomCatalogIsHonored) {
    auto c = small(3);
    c.app_catalog = {{"alpha", true, 70, 50}, {"beta", false, 30, 50}};
    c.app_install_probability = 1.0;
    const auto t = generate_trace(c, "p");
    std::set<std::string> seen;
    for (const auto& s : t.samples)
        for (const auto& a : s.apps) seen.insert(a.app_id);
    EXPECT_EQ(seen, (std::set<std::string>{"alpha", "beta"}));
    EXPECT_EQ(pcachable_apps(c), std::vector<std::string>{"alpha"});
}

TEST(Generator, DownUpRatioHeldPerRecord) {
    const auto c = small(3);
    std::uint64_t up = 0, down = 0;
    for (const auto& s : generate_trace(c, "p").samples)
        for (const auto& a : s.apps) {
            up += a.up_bytes;
            down += a.down_bytes;
        }
    ASSERT_GT(up, 0u);
    EXPECT_NEAR(static_cast<double>(down) / static_cast<double>(up), c.down_up_ratio, 0.05);
}

TEST(Generator, ConfigJsonRoundTrip) {
    const auto c = small();
    EXPECT_EQ(config_from_json(config_to_json(c)), c);
    EXPECT_EQ(config_from_json("{}"), paper_profile_config());
    EXPECT_THROW(config_from_json("{not json"), ConfigurationError);
    EXPECT_THROW(config_from_json(R"({"days": -1})"), ConfigurationError);
}

TEST(Generator, PaperCatalogCarriesTopAppTable) {
    const auto c = paper_profile_config();
    ASSERT_GE(c.app_catalog.size(), 21u);
    EXPECT_EQ(c.app_catalog[4].app_id, "Facebook");
    EXPECT_DOUBLE_EQ(c.app_catalog[4].traffic_weight, 14.01);
    EXPECT_TRUE(c.app_catalog[4].pcachable);
    EXPECT_FALSE(c.app_catalog[10].pcachable);  // Downloads
    EXPECT_DOUBLE_EQ(c.down_up_ratio, 4.26);
    EXPECT_GE(pcachable_apps(c).size(), 30u);
}

TEST(GapLengths, CdfMatchesCalibrationPoints) {
    const GapLengthDistribution d;
    EXPECT_NEAR(d.cdf(30 * 60), 0.65, 1e-3);
    EXPECT_NEAR(d.cdf(90 * 60), 0.80, 1e-3);
    EXPECT_NEAR(d.cdf(240 * 60), 0.90, 1e-3);
    EXPECT_DOUBLE_EQ(d.cdf(d.tail_max_s), 1.0);
}

TEST(GapLengths, SamplerFollowsCdf) {
    const GapLengthDistribution d;
    Rng rng(1);
    const int n = 40000;
    int below30 = 0, below240 = 0;
    for (int i = 0; i < n; ++i) {
        const double x = d.sample(rng);
        ASSERT_GT(x, 0);
        ASSERT_LE(x, d.tail_max_s);
        below30 += x <= 1800;
        below240 += x <= 14400;
    }
    EXPECT_NEAR(below30 / double(n), d.cdf(1800), 0.01);
    EXPECT_NEAR(below240 / double(n), d.cdf(14400), 0.01);
}

TEST(RngTest, StreamsAreIndependentAndRepeatable) {
    auto a = Rng::stream(1, "x", "t", 0), b = Rng::stream(1, "x", "t", 0), c = Rng::stream(1, "x", "t", 1);
    const auto va = a.next_u64();
    EXPECT_EQ(va, b.next_u64());
    EXPECT_NE(va, c.next_u64());
}

TEST(RngTest, UniformIntCoversRangeEvenly) {
    Rng r(2);
    std::vector<int> counts(5, 0);
    for (int i = 0; i < 50000; ++i) {
        const auto x = r.uniform_int(3, 7);
        ASSERT_GE(x, 3);
        ASSERT_LE(x, 7);
        ++counts[static_cast<std::size_t>(x - 3)];
    }
    for (int c : counts) EXPECT_NEAR(c / 50000.0, 0.2, 0.01);
}

TEST(RngTest, MomentsOfContinuousDraws) {
    Rng r(3);
    double sn = 0, sn2 = 0, se = 0, sl = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = r.normal();
        sn += z;
        sn2 += z * z;
        se += r.exponential(2.0);
        sl += r.lognormal_with_mean(5.0, 0.5);
    }
    EXPECT_NEAR(sn / n, 0.0, 0.01);
    EXPECT_NEAR(sn2 / n, 1.0, 0.01);
    EXPECT_NEAR(se / n, 0.5, 0.01);
    EXPECT_NEAR(sl / n, 5.0, 0.05);
}
