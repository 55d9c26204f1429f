#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pcach/features.hpp"

namespace pcach {

/// Axis-aligned decision stump: votes `polarity` when the feature exceeds
/// `threshold`, `-polarity` otherwise, weighted by `alpha`.
struct Stump {
    int feature = 1;  // 1..9
    double threshold = 0;
    int polarity = 1;
    double alpha = 0;

    int vote(const FeatureVector& fv) const { return fv[feature] > threshold ? polarity : -polarity; }

    bool operator==(const Stump&) const = default;
};

struct AdaBoostModel {
    std::vector<Stump> stumps;
    int rounds = 50;
    double decision_threshold = 0;

    double total_alpha() const;

    bool operator==(const AdaBoostModel&) const = default;
};

struct LabeledExample {
    FeatureVector features;
    int label = -1;  // +1 event, -1 no event
};

/// What the trainer saw in one boosting round. `selection_weights` are the
/// example weights the stump was chosen under, `updated_weights` the
/// normalized weights after reweighting.
struct RoundInfo {
    int round = 0;
    double weighted_error = 0;
    Stump stump;
    std::span<const double> selection_weights;
    std::span<const double> updated_weights;
};

using RoundObserver = std::function<void(const RoundInfo&)>;

inline constexpr double kMinWeightedError = 1e-10;

/// Discrete two-class AdaBoost over stumps. Candidate thresholds are the
/// midpoints between consecutive distinct feature values. Training stops
/// before adding a stump whose weighted error is >= 0.5, and after adding a
/// stump with zero error. Throws ParameterError for rounds < 1 and
/// DegenerateDataError for empty or single-label data.
AdaBoostModel adaboost_train(std::span<const LabeledExample> dataset, int rounds, const RoundObserver& observer = {});

struct BoostPrediction {
    int label = -1;
    double margin = 0;
};

/// margin = sum of alpha * vote; label is +1 only when margin exceeds the
/// model's decision threshold. Throws ModelError for an empty model.
BoostPrediction adaboost_predict(const AdaBoostModel& model, const FeatureVector& fv);

/// Fraction of misclassified examples at the model's decision threshold.
double training_error(const AdaBoostModel& model, std::span<const LabeledExample> dataset);

std::string model_to_json(const AdaBoostModel& model);
AdaBoostModel model_from_json(const std::string& text);

}  // namespace pcach
