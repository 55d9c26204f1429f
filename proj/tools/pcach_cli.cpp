// pcach: generate synthetic traces, mine them, and backtest the PCach loop.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcach/backtest.hpp"
#include "pcach/errors.hpp"
#include "pcach/parallel.hpp"
#include "pcach/reports.hpp"
#include "pcach/synth_gen.hpp"
#include "pcach/trace_io.hpp"

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;
using namespace pcach;

namespace {

struct Globals {
    int slot_minutes = 15;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::optional<std::int64_t> utc_offset_s;
};

struct Outputs {
    fs::path dir;
    std::vector<std::string> written;

    void put(const std::string& name, const std::string& text) {
        const auto path = dir / name;
        if (path.has_parent_path()) fs::create_directories(path.parent_path());
        write_text_file(path, text);
        written.push_back(path.string());
    }
    void put(const std::string& stem, const Table& table, ReportFormat f) {
        std::ostringstream os;
        write_table(os, table, f);
        put(stem + file_extension(f), os.str());
    }
};

void prepare_out(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir)) throw DataError("cannot create output directory '" + dir.string() + "'");
}

std::vector<fs::path> trace_inputs(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw DataError("trace directory '" + dir.string() + "' does not exist");
    auto files = list_trace_files(dir);
    if (files.empty()) throw DataError("no .jsonl or .csv traces in '" + dir.string() + "'");
    return files;
}

Trace load(const fs::path& file, const Globals& g) {
    auto t = load_trace_file(file);
    if (g.utc_offset_s) t.utc_offset_s = *g.utc_offset_s;
    return t;
}

ojson globals_json(const Globals& g) {
    ojson j;
    j["slot_minutes"] = g.slot_minutes;
    j["seed"] = g.seed;
    j["format"] = g.format;
    j["local_utc_offset_s"] = g.utc_offset_s ? ojson(*g.utc_offset_s) : ojson(nullptr);
    return j;
}

void finish(Outputs& out, const std::string& command, const ojson& params, const Globals& g,
            std::vector<std::string> inputs) {
    RunManifest m;
    m.command = command;
    m.parameters = params.dump();
    m.seed = g.seed;
    m.inputs = std::move(inputs);
    m.outputs = out.written;
    m.outputs.push_back((out.dir / "manifest.json").string());
    write_text_file(out.dir / "manifest.json", manifest_json(m));
}

std::vector<std::string> as_strings(const std::vector<fs::path>& files) {
    std::vector<std::string> v;
    for (const auto& f : files) v.push_back(f.string());
    return v;
}

GeneratorConfig load_config(const std::string& path) {
    if (path.empty()) return paper_profile_config();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigurationError("cannot read config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str());
}

// --- generate ---------------------------------------------------------------

struct GenerateArgs {
    std::size_t phones = 10;
    std::optional<int> days;
    std::string config;
    std::string out = "traces";
};

void cmd_generate(const GenerateArgs& a, const Globals& g) {
    auto cfg = load_config(a.config);
    cfg.seed = g.seed;
    if (a.days) cfg.days = *a.days;
    validate(cfg);
    if (a.phones == 0) throw ParameterError("--phones must be positive");
    const auto fmt = g.format == "csv" ? TraceFormat::Csv : TraceFormat::Jsonl;
    Outputs out{a.out, {}};
    prepare_out(out.dir);

    std::vector<std::string> texts(a.phones);
    parallel_for(a.phones, [&](std::size_t i) {
        std::ostringstream os;
        write_trace(os, generate_trace(cfg, phone_name(i)), fmt);
        texts[i] = os.str();
    });
    for (std::size_t i = 0; i < a.phones; ++i) out.put(phone_name(i) + file_extension(fmt), texts[i]);
    out.put("generator_config.json", config_to_json(cfg) + "\n");

    auto p = globals_json(g);
    p["phones"] = a.phones;
    p["days"] = cfg.days;
    p["config"] = a.config;
    p["out"] = a.out;
    finish(out, "generate", p, g, a.config.empty() ? std::vector<std::string>{} : std::vector<std::string>{a.config});
}

// --- mine / gaps / bound ------------------------------------------------------

struct MineArgs {
    std::string traces = "traces";
    std::string out = "mining";
    std::vector<int> horizons = kDefaultHorizonsMinutes;
};

std::vector<PhoneMining> mine_all(const std::vector<fs::path>& files, const Globals& g,
                                  const std::vector<int>& horizons) {
    std::vector<PhoneMining> mined(files.size());
    parallel_for(files.size(), [&](std::size_t i) {
        const auto t = load(files[i], g);
        mined[i] = mine_phone(t, SlotClock(g.slot_minutes, t.utc_offset_s), horizons);
    });
    return mined;
}

ojson mine_params(const MineArgs& a, const Globals& g, bool with_horizons) {
    auto p = globals_json(g);
    p["traces"] = a.traces;
    p["out"] = a.out;
    if (with_horizons) p["horizons_minutes"] = a.horizons;
    return p;
}

void cmd_mine(const MineArgs& a, const Globals& g) {
    const auto files = trace_inputs(a.traces);
    const auto f = report_format_from_string(g.format);
    Outputs out{a.out, {}};
    prepare_out(out.dir);
    const auto mined = mine_all(files, g, a.horizons);
    out.put("traffic_split", traffic_split_table(mined), f);
    out.put("gap_cdf", gap_cdf_table(mined), f);
    out.put("event_histogram", event_histogram_table(mined, g.slot_minutes), f);
    out.put("bound", bound_table(mined), f);
    out.put("mining_summary.json", mining_summary_json(summarize_mining(mined)));
    finish(out, "mine", mine_params(a, g, true), g, as_strings(files));
}

void cmd_gaps(const MineArgs& a, const Globals& g) {
    const auto files = trace_inputs(a.traces);
    const auto f = report_format_from_string(g.format);
    Outputs out{a.out, {}};
    prepare_out(out.dir);
    const auto mined = mine_all(files, g, {});
    Table t{{"phone_id", "cut_time", "resume_time", "end_time", "duration_s", "open", "excluded"}, {}};
    for (const auto& m : mined)
        for (const auto& gap : m.gaps)
            t.rows.push_back({Table::Cell{m.phone_id}, Table::Cell{std::int64_t{gap.cut_time}},
                              gap.resume_time ? Table::Cell{std::int64_t{*gap.resume_time}} : Table::Cell{std::string()},
                              Table::Cell{std::int64_t{gap.end_time}}, gap.duration_s() ? Table::Cell{std::int64_t{*gap.duration_s()}} : Table::Cell{std::string()},
                              Table::Cell{std::string(gap.closed() ? "false" : "true")},
                              Table::Cell{std::string(gap.excluded ? "true" : "false")}});
    out.put("gaps", t, f);
    out.put("gap_cdf", gap_cdf_table(mined), f);
    finish(out, "gaps", mine_params(a, g, false), g, as_strings(files));
}

void cmd_bound(const MineArgs& a, const Globals& g) {
    const auto files = trace_inputs(a.traces);
    const auto f = report_format_from_string(g.format);
    Outputs out{a.out, {}};
    prepare_out(out.dir);
    out.put("bound", bound_table(mine_all(files, g, a.horizons)), f);
    finish(out, "bound", mine_params(a, g, true), g, as_strings(files));
}

// --- backtest ---------------------------------------------------------------

struct BacktestArgs {
    std::string traces = "traces";
    std::string out = "backtest";
    std::string predictor = "history";
    int k = 10;
    int rounds = 50;
    double split = -1;
    std::vector<int> sweep_k;
    std::string config;
};

void cmd_backtest(const BacktestArgs& a, const Globals& g) {
    const auto files = trace_inputs(a.traces);
    const auto f = report_format_from_string(g.format);
    BacktestOptions o;
    o.config.predictor = predictor_kind_from_string(a.predictor);
    o.config.k = a.k;
    o.config.slot_minutes = g.slot_minutes;
    o.config.apps = pcachable_apps(load_config(a.config));
    o.config.validate();
    o.rounds = a.rounds;
    o.train_fraction = a.split;
    o.seed = g.seed;
    if (!a.sweep_k.empty()) {
        o.app_ks = a.sweep_k;
        if (std::find(o.app_ks.begin(), o.app_ks.end(), a.k) == o.app_ks.end()) o.app_ks.push_back(a.k);
    }
    Outputs out{a.out, {}};
    prepare_out(out.dir);

    std::vector<PhoneReport> reports(files.size());
    parallel_for(files.size(), [&](std::size_t i) { reports[i] = backtest(load(files[i], g), o); });

    const auto summary = summarize(reports);
    out.put("evaluation_summary.json", evaluation_summary_json(summary, reports));
    out.put("cut_roc", roc_table(std::span(&summary, 1)), f);
    if (!a.sweep_k.empty()) {
        auto rows = k_sweep_rows(reports);
        std::erase_if(rows, [&](const KSweepRow& r) {
            return std::find(a.sweep_k.begin(), a.sweep_k.end(), r.k) == a.sweep_k.end();
        });
        out.put("k_sweep", k_sweep_table(rows), f);
    }
    if (o.config.predictor == PredictorKind::AdaBoost)
        for (const auto& r : reports) {
            if (r.cut_model) out.put("models/" + r.phone_id + ".cut.json", model_to_json(*r.cut_model) + "\n");
            if (r.resume_model) out.put("models/" + r.phone_id + ".resume.json", model_to_json(*r.resume_model) + "\n");
        }

    auto p = globals_json(g);
    p["traces"] = a.traces;
    p["out"] = a.out;
    p["predictor"] = a.predictor;
    p["k"] = a.k;
    p["rounds"] = a.rounds;
    p["split"] = a.split;
    p["sweep_k"] = a.sweep_k;
    p["config"] = a.config;
    auto inputs = as_strings(files);
    if (!a.config.empty()) inputs.push_back(a.config);
    finish(out, "backtest", p, g, inputs);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pre-caching for WiFi gaps: synthetic traces, mining and predictor backtests"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--slot-minutes", g.slot_minutes, "Slot length in minutes")->capture_default_str();
    app.add_option("--seed", g.seed, "Seed for generation and randomized predictors")->capture_default_str();
    app.add_option("--format", g.format, "Output format for traces and series")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    std::int64_t offset = 0;
    auto* offset_opt = app.add_option("--local-utc-offset", offset, "Local time offset from UTC, seconds");

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write synthetic phone traces");
    generate->add_option("--phones", gen.phones)->capture_default_str();
    generate->add_option("--days", gen.days);
    generate->add_option("--config", gen.config, "Generator config JSON")->check(CLI::ExistingFile);
    generate->add_option("--out", gen.out)->capture_default_str();

    MineArgs mine_args, gaps_args, bound_args;
    auto add_mining = [&](CLI::App* sub, MineArgs& m, bool horizons) {
        sub->add_option("--traces", m.traces, "Directory of .jsonl/.csv traces")->capture_default_str();
        sub->add_option("--out", m.out)->capture_default_str();
        if (horizons)
            sub->add_option("--horizon", m.horizons, "Horizons in minutes, comma separated")
                ->delimiter(',')
                ->capture_default_str();
    };
    gaps_args.out = "gaps";
    bound_args.out = "bound";
    auto* mine = app.add_subcommand("mine", "Traffic split, gap CDF, event histograms and horizon bound");
    add_mining(mine, mine_args, true);
    auto* gaps = app.add_subcommand("gaps", "List WiFi gaps per phone");
    add_mining(gaps, gaps_args, false);
    auto* bound = app.add_subcommand("bound", "Pre-cacheable fraction per horizon");
    add_mining(bound, bound_args, true);

    BacktestArgs bt;
    auto* backtest_cmd = app.add_subcommand("backtest", "Chronological backtest of the pre-caching loop");
    backtest_cmd->add_option("--traces", bt.traces)->capture_default_str();
    backtest_cmd->add_option("--out", bt.out)->capture_default_str();
    backtest_cmd->add_option("--predictor", bt.predictor)
        ->check(CLI::IsMember({"history", "adaboost"}))
        ->capture_default_str();
    backtest_cmd->add_option("--k", bt.k)->capture_default_str();
    backtest_cmd->add_option("--rounds", bt.rounds)->capture_default_str();
    backtest_cmd->add_option("--split", bt.split, "Training share in (0,1); default depends on predictor");
    backtest_cmd->add_option("--sweep-k", bt.sweep_k, "K values for the app sweep")->delimiter(',');
    backtest_cmd->add_option("--config", bt.config, "Generator config JSON defining the app set")
        ->check(CLI::ExistingFile);

    auto* sweep = app.add_subcommand("sweep-k", "App-prediction sweep over K (backtest with --sweep-k)");
    BacktestArgs sw;
    sw.out = "sweep";
    sw.sweep_k = kPaperKs;
    sweep->add_option("--traces", sw.traces)->capture_default_str();
    sweep->add_option("--out", sw.out)->capture_default_str();
    sweep->add_option("--ks", sw.sweep_k)->delimiter(',')->capture_default_str();
    sweep->add_option("--predictor", sw.predictor)
        ->check(CLI::IsMember({"history", "adaboost"}))
        ->capture_default_str();
    sweep->add_option("--config", sw.config)->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);
    if (*offset_opt) g.utc_offset_s = offset;

    try {
        SlotClock check(g.slot_minutes);
        (void)check;
        if (*generate) cmd_generate(gen, g);
        if (*mine) cmd_mine(mine_args, g);
        if (*gaps) cmd_gaps(gaps_args, g);
        if (*bound) cmd_bound(bound_args, g);
        if (*backtest_cmd) cmd_backtest(bt, g);
        if (*sweep) {
            sw.k = sw.sweep_k.empty() ? 10 : sw.sweep_k.front();
            cmd_backtest(sw, g);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "pcach: error: %s\n", e.what());
        return 1;
    }
    return 0;
}
