#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "pcach/adaboost.hpp"
#include "pcach/connectivity.hpp"
#include "pcach/metrics.hpp"
#include "pcach/pcach.hpp"

namespace pcach {

struct BacktestOptions {
    PCachConfig config;
    /// Share of the trace used for training. Negative picks the default:
    /// seven days for the history predictor, half the trace for AdaBoost.
    double train_fraction = -1;
    int warmup_days = 7;
    int rounds = 50;
    HistoryEventParams history;
    ResumeSearch search;
    std::uint64_t seed = 0;
    int resume_tolerance_slots = 1;
    /// K values scored for app prediction; empty means {config.k}.
    std::vector<int> app_ks;
    /// When false only the app predictor is replayed (K sweeps).
    bool score_gaps = true;
    /// Cut thresholds, as fractions of the model's total alpha, swept to
    /// trace the AdaBoost ROC.
    std::vector<double> threshold_grid = default_threshold_grid();
    bool keep_training_snapshot = false;

    static std::vector<double> default_threshold_grid();
};

struct AppScore {
    int k = 0;
    RocPoint mean;  // mean of per-gap rates
    std::size_t gaps_scored = 0;
    std::size_t gaps_skipped = 0;  // undefined TPR or FPR
};

struct PhoneReport {
    std::string phone_id;
    PredictorKind predictor = PredictorKind::History;
    Timestamp test_start = 0;
    std::size_t test_slots = 0;
    ConfusionCounts cut;
    ConfusionCounts resume;
    std::size_t resume_slot_hits = 0;    // predicted resume slot within tolerance, on true cuts
    std::size_t resume_slot_misses = 0;
    std::vector<AppScore> apps;
    std::vector<RocPoint> cut_roc;       // AdaBoost threshold sweep
    std::optional<AdaBoostModel> cut_model;
    std::optional<AdaBoostModel> resume_model;
    std::string training_snapshot;       // HistoryDB JSON at the split
};

/// Ground truth on the offline timeline (whole-trace preferred profile).
struct GroundTruth {
    std::vector<WifiGap> gaps;
    std::set<std::int64_t> cut_slots;
    std::set<std::int64_t> resume_slots;
    std::vector<std::set<std::string>> used_apps;  // per gap: tracked apps that ran on cellular
};

GroundTruth ground_truth(const Trace& trace, const SlotClock& clock, std::span<const std::string> tracked_apps);

/// Chronological split, training on the prefix only, then a slot-by-slot
/// replay of the rest. Throws DataError for traces shorter than two days
/// or splits that leave no test period.
PhoneReport backtest(const Trace& trace, const BacktestOptions& options);

/// Same replay with a caller-supplied predictor and no training step.
PhoneReport backtest_with_predictor(const Trace& trace, const BacktestOptions& options, GapPredictor& predictor);

struct CorpusSummary {
    PredictorKind predictor = PredictorKind::History;
    std::size_t phones = 0;
    RocPoint cut;     // macro average over phones with defined rates
    RocPoint resume;
    std::vector<AppScore> apps;  // macro average per K
    std::vector<RocPoint> cut_roc;
    std::size_t phones_skipped_cut = 0;
    std::size_t phones_skipped_resume = 0;
};

CorpusSummary summarize(std::span<const PhoneReport> reports);

struct KSweepRow {
    int k = 0;
    RocPoint mean;
    double quality_gap = 0;
    std::size_t phones = 0;
};

std::vector<KSweepRow> k_sweep_rows(std::span<const PhoneReport> reports);

/// App-prediction backtest on every phone for each K, macro-averaged.
std::vector<KSweepRow> k_sweep(std::span<const Trace> traces, const BacktestOptions& base, std::span<const int> ks);

inline const std::vector<int> kPaperKs = {1, 2, 3, 4, 5, 6, 7, 10, 15, 20, 25, 30};

}  // namespace pcach
