#include <gtest/gtest.h>

#include <sstream>

#include "pcach/errors.hpp"
#include "pcach/synth_gen.hpp"
#include "pcach/trace_io.hpp"
#include "support.hpp"

namespace pcach {
void PrintTo(TraceFormat f, std::ostream* os) { *os << (f == TraceFormat::Csv ? "csv" : "jsonl"); }
}  // namespace pcach

using namespace pcach;
using namespace testsupport;

TEST(Trace, ValidSampleShapesPass) {
    EXPECT_NO_THROW(validate_sample(wifi(0, "home", {"nbr"})));
    EXPECT_NO_THROW(validate_sample(cell(0, {"pub"})));
    EXPECT_NO_THROW(validate_sample(none(0)));
}

TEST(Trace, WifiNeedsVisibleConnectedSsid) {
    auto s = wifi(0, "home");
    s.visible_ssids.clear();
    EXPECT_THROW(validate_sample(s), ValidationError);
    s.connected_ssid.reset();
    EXPECT_THROW(validate_sample(s), ValidationError);
}

TEST(Trace, NonWifiMustNotCarrySsid) {
    auto s = cell(0, {"a"});
    s.connected_ssid = "a";
    EXPECT_THROW(validate_sample(s), ValidationError);
}

TEST(Trace, DuplicateAppIdsRejected) {
    auto s = with_app(with_app(cell(0), "x", 1, 1), "x", 2, 2);
    EXPECT_THROW(validate_sample(s), ValidationError);
}

TEST(Trace, TimestampsMustIncrease) {
    auto t = make_trace({wifi(10, "a"), wifi(10, "a")});
    EXPECT_THROW(validate_trace(t), ValidationError);
    t.samples[1].timestamp = 5;
    EXPECT_THROW(validate_trace(t), ValidationError);
}

TEST(Trace, RanCountsRunningOrBytes) {
    EXPECT_TRUE((AppTrafficRecord{"a", 0, 0, true}.ran()));
    EXPECT_TRUE((AppTrafficRecord{"a", 0, 3, false}.ran()));
    EXPECT_FALSE((AppTrafficRecord{"a", 0, 0, false}.ran()));
}

TEST(TraceIo, JsonlParsesSpecExample) {
    std::istringstream in(
        R"({"t":1000,"active":"WIFI","ssid":"home","visible":["home","x"],"apps":[{"id":"Facebook","up":10,"down":40,"running":true}]})"
        "\n"
        R"({"t":1300,"active":"CELL","ssid":null,"visible":[],"apps":[]})"
        "\n");
    const auto t = ingest_trace(in, TraceFormat::Jsonl, "ph");
    ASSERT_EQ(t.samples.size(), 2u);
    EXPECT_EQ(t.phone_id, "ph");
    EXPECT_EQ(t.samples[0].active, Network::Wifi);
    EXPECT_EQ(*t.samples[0].connected_ssid, "home");
    EXPECT_EQ(t.samples[0].apps[0].down_bytes, 40u);
    EXPECT_EQ(t.samples[1].active, Network::Cellular);
    EXPECT_EQ(t.nominal_period_s, 300);
}

TEST(TraceIo, EmptySourceIsError) {
    std::istringstream in("");
    EXPECT_THROW(ingest_trace(in, TraceFormat::Jsonl, "p"), EmptyTraceError);
    std::istringstream csv(std::string(kCsvHeader) + "\n");
    EXPECT_THROW(ingest_trace(csv, TraceFormat::Csv, "p"), EmptyTraceError);
}

TEST(TraceIo, NegativeBytesReportLine) {
    std::istringstream in(R"({"t":1,"active":"NONE","ssid":null,"visible":[],"apps":[]})"
                          "\n"
                          R"({"t":2,"active":"CELL","ssid":null,"visible":[],"apps":[{"id":"a","up":-1,"down":0,"running":false}]})"
                          "\n");
    try {
        ingest_trace(in, TraceFormat::Jsonl, "p");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(TraceIo, UnsortedInputIsSortedAndDuplicatesKeepLast) {
    std::istringstream in(R"({"t":600,"active":"CELL","ssid":null,"visible":[],"apps":[]})"
                          "\n"
                          R"({"t":300,"active":"NONE","ssid":null,"visible":[],"apps":[]})"
                          "\n"
                          R"({"t":600,"active":"WIFI","ssid":"h","visible":["h"],"apps":[]})"
                          "\n");
    const auto t = ingest_trace(in, TraceFormat::Jsonl, "p");
    ASSERT_EQ(t.samples.size(), 2u);
    EXPECT_EQ(t.samples[0].timestamp, 300);
    EXPECT_EQ(t.samples[1].active, Network::Wifi);
}

TEST(TraceIo, CsvParsesRowsAndGroupsBySample) {
    std::istringstream in(std::string(kCsvHeader) +
                          "\n"
                          "ph,100,WIFI,home,home;nbr,Maps,1,2,true\n"
                          "ph,100,WIFI,home,home;nbr,News apps,0,0,true\n"
                          "ph,400,CELL,,,,,,\n");
    const auto t = ingest_trace(in, TraceFormat::Csv);
    EXPECT_EQ(t.phone_id, "ph");
    ASSERT_EQ(t.samples.size(), 2u);
    EXPECT_EQ(t.samples[0].apps.size(), 2u);
    EXPECT_EQ(t.samples[0].visible_ssids.size(), 2u);
    EXPECT_TRUE(t.samples[1].apps.empty());
}

TEST(TraceIo, CsvRejectsMalformedRow) {
    std::istringstream in(std::string(kCsvHeader) + "\nph,abc,WIFI,home,home,,,,\n");
    EXPECT_THROW(ingest_trace(in, TraceFormat::Csv), ParseError);
}

TEST(TraceIo, CsvQuotesSpecialCharacters) {
    auto t = make_trace({with_app(wifi(0, "caf\xC3\xA9, \"free\""), "app,with,commas", 1, 2)}, "ph");
    std::ostringstream os;
    write_trace(os, t, TraceFormat::Csv);
    std::istringstream in(os.str());
    EXPECT_EQ(ingest_trace(in, TraceFormat::Csv), t);
}

class RoundTrip : public ::testing::TestWithParam<TraceFormat> {};

TEST_P(RoundTrip, GeneratedTraceSurvivesSerialization) {
    auto cfg = paper_profile_config();
    cfg.days = 5;
    cfg.seed = 11;
    const auto original = generate_trace(cfg, "phone_rt");
    std::stringstream buf;
    write_trace(buf, original, GetParam());
    const auto back = ingest_trace(buf, GetParam(), "phone_rt");
    ASSERT_EQ(back.samples.size(), original.samples.size());
    for (std::size_t i = 0; i < back.samples.size(); ++i) ASSERT_EQ(back.samples[i], original.samples[i]) << i;
    EXPECT_EQ(back, original);
}

TEST_P(RoundTrip, RandomTracesSurviveSerialization) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto original = random_trace(seed, 60);
        std::stringstream buf;
        write_trace(buf, original, GetParam());
        auto back = ingest_trace(buf, GetParam(), original.phone_id);
        back.nominal_period_s = original.nominal_period_s;
        EXPECT_EQ(back.samples, original.samples) << seed;
    }
}

INSTANTIATE_TEST_SUITE_P(Formats, RoundTrip, ::testing::Values(TraceFormat::Jsonl, TraceFormat::Csv),
                         [](const auto& info) { return info.param == TraceFormat::Csv ? "Csv" : "Jsonl"; });

TEST(TraceIo, FormatNames) {
    EXPECT_EQ(trace_format_from_string("jsonl"), TraceFormat::Jsonl);
    EXPECT_EQ(trace_format_from_string("csv"), TraceFormat::Csv);
    EXPECT_THROW(trace_format_from_string("xml"), ParameterError);
    EXPECT_EQ(network_from_string("CELL"), Network::Cellular);
    EXPECT_THROW(network_from_string("LTE"), ValidationError);
}
