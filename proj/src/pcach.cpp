#include "pcach/pcach.hpp"

#include "pcach/app_prediction.hpp"
#include "pcach/errors.hpp"

namespace pcach {

PredictorKind predictor_kind_from_string(const std::string& s) {
    if (s == "history") return PredictorKind::History;
    if (s == "adaboost") return PredictorKind::AdaBoost;
    throw ParameterError("unknown predictor '" + s + "' (expected history or adaboost)");
}

std::string to_string(PredictorKind k) { return k == PredictorKind::History ? "history" : "adaboost"; }

void PCachConfig::validate() const {
    if (apps.empty()) throw ConfigurationError("empty pre-cachable app list");
    if (k < 1 || static_cast<std::size_t>(k) > apps.size())
        throw ParameterError("K must lie in [1, " + std::to_string(apps.size()) + "], got " + std::to_string(k));
    SlotClock{slot_minutes};
}

std::int64_t GapPredictor::predict_resume_slot(const HistoryDB& db, std::int64_t current_slot) {
    for (int i = 1; i <= search.max_lookahead; ++i)
        if (predict_resume_in(db, current_slot, current_slot + i)) return current_slot + i;
    return current_slot + 1 + search.default_gap_slots;
}

bool HistoryGapPredictor::predict_cut(const HistoryDB& db, std::int64_t current_slot) {
    const auto slot = db.clock().slot_of_day_abs(current_slot + 1);
    return history_predict_event(db.cut_probability(slot), params_.draws, params_.tolerance, rng_);
}

bool HistoryGapPredictor::predict_resume_in(const HistoryDB& db, std::int64_t, std::int64_t slot) {
    const auto s = db.clock().slot_of_day_abs(slot);
    return history_predict_event(db.resume_probability(s), params_.draws, params_.tolerance, rng_);
}

Timestamp decision_time(const HistoryDB& db, std::int64_t current_slot) { return db.clock().slot_start(current_slot); }

// A model trained on one-sided data has no stumps and never fires.
double AdaBoostGapPredictor::cut_margin(const HistoryDB& db, std::int64_t current_slot) const {
    if (cut_.stumps.empty()) return 0.0;
    const auto fv = extract_features(db, current_slot + 1, decision_time(db, current_slot), EventTarget::Cut);
    return adaboost_predict(cut_, fv).margin;
}

bool AdaBoostGapPredictor::predict_cut(const HistoryDB& db, std::int64_t current_slot) {
    if (cut_.stumps.empty()) return false;
    const auto fv = extract_features(db, current_slot + 1, decision_time(db, current_slot), EventTarget::Cut);
    return adaboost_predict(cut_, fv).label > 0;
}

bool AdaBoostGapPredictor::predict_resume_in(const HistoryDB& db, std::int64_t current_slot, std::int64_t slot) {
    if (resume_.stumps.empty()) return false;
    const auto fv = extract_features(db, slot, decision_time(db, current_slot), EventTarget::Resume);
    return adaboost_predict(resume_, fv).label > 0;
}

PCachOutput pcach_step(HistoryDB& db, const PCachConfig& config, GapPredictor& predictor, std::int64_t current_slot,
                       std::span<const MeasurementSample> new_samples) {
    config.validate();
    update_history(db, new_samples, current_slot, config.apps);
    PCachOutput out;
    out.cut_predicted = predictor.predict_cut(db, current_slot);
    if (!out.cut_predicted) return out;
    out.resume_slot = predictor.predict_resume_slot(db, current_slot);
    const auto first = current_slot + 1;
    out.apps = predict_top_k_apps(db, config.apps, config.k, first, std::max(first, *out.resume_slot));
    return out;
}

}  // namespace pcach
