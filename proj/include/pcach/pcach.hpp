#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcach/adaboost.hpp"
#include "pcach/event_prediction.hpp"
#include "pcach/features.hpp"
#include "pcach/history_db.hpp"

namespace pcach {

enum class PredictorKind { History, AdaBoost };

PredictorKind predictor_kind_from_string(const std::string& s);  // "history" | "adaboost"
std::string to_string(PredictorKind k);

struct PCachConfig {
    int k = 10;
    int slot_minutes = 15;
    std::vector<std::string> apps;  // pre-cachable set, in tie-break order
    PredictorKind predictor = PredictorKind::History;

    /// Throws ConfigurationError for an empty app list, ParameterError for K
    /// outside [1, |apps|] or a bad slot length.
    void validate() const;
};

/// Answers the two questions of the main loop. `current_slot` is the
/// absolute slot in which the loop runs.
class GapPredictor {
public:
    virtual ~GapPredictor() = default;

    /// Will WiFi be cut during slot current_slot + 1?
    virtual bool predict_cut(const HistoryDB& db, std::int64_t current_slot) = 0;
    /// Will WiFi resume during absolute slot `slot`?
    virtual bool predict_resume_in(const HistoryDB& db, std::int64_t current_slot, std::int64_t slot) = 0;
    /// First slot after current_slot where a resume is predicted.
    virtual std::int64_t predict_resume_slot(const HistoryDB& db, std::int64_t current_slot);

    ResumeSearch search;
};

/// Histogram rates fed through history_predict_event.
class HistoryGapPredictor : public GapPredictor {
public:
    HistoryGapPredictor(HistoryEventParams params, Rng rng) : params_(params), rng_(std::move(rng)) {}

    bool predict_cut(const HistoryDB& db, std::int64_t current_slot) override;
    bool predict_resume_in(const HistoryDB& db, std::int64_t current_slot, std::int64_t slot) override;

private:
    HistoryEventParams params_;
    Rng rng_;
};

/// One boosted classifier per event type, each fed its own slot rate.
class AdaBoostGapPredictor : public GapPredictor {
public:
    AdaBoostGapPredictor(AdaBoostModel cut_model, AdaBoostModel resume_model)
        : cut_(std::move(cut_model)), resume_(std::move(resume_model)) {}

    bool predict_cut(const HistoryDB& db, std::int64_t current_slot) override;
    bool predict_resume_in(const HistoryDB& db, std::int64_t current_slot, std::int64_t slot) override;

    double cut_margin(const HistoryDB& db, std::int64_t current_slot) const;
    const AdaBoostModel& cut_model() const { return cut_; }
    const AdaBoostModel& resume_model() const { return resume_; }

private:
    AdaBoostModel cut_;
    AdaBoostModel resume_;
};

/// Moment the loop runs in `current_slot`: the start of that slot.
Timestamp decision_time(const HistoryDB& db, std::int64_t current_slot);

struct PCachOutput {
    bool cut_predicted = false;
    std::optional<std::int64_t> resume_slot;
    std::vector<std::string> apps;  // PCachApps
};

/// One run of the main loop: update history with the samples gathered since
/// the last run, predict a cut in the next slot, and if one is coming,
/// predict the resume slot and return the union of top-K apps over
/// [current_slot + 1, resume slot].
PCachOutput pcach_step(HistoryDB& db, const PCachConfig& config, GapPredictor& predictor, std::int64_t current_slot,
                       std::span<const MeasurementSample> new_samples);

}  // namespace pcach
