#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace pcach {

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;

    std::uint64_t total() const { return tp + fp + fn + tn; }
    ConfusionCounts& operator+=(const ConfusionCounts& o) {
        tp += o.tp;
        fp += o.fp;
        fn += o.fn;
        tn += o.tn;
        return *this;
    }
    bool operator==(const ConfusionCounts&) const = default;
};

struct RocPoint {
    double tpr = 0;
    double fpr = 0;
    double parameter = 0;  // K or decision threshold
};

/// tp = predicted and used, fp = predicted only, fn = used only (within the
/// app set), tn = neither. Throws ValidationError if a predicted app is not
/// in `apps`.
ConfusionCounts score_app_prediction(const std::set<std::string>& predicted, const std::set<std::string>& used,
                                     std::span<const std::string> apps);

/// TP/(TP+FN) and FP/(FP+TN). Throws UndefinedRateError when either
/// denominator is zero.
RocPoint tpr_fpr(const ConfusionCounts& counts);

/// Distance to the perfect point (fpr 0, tpr 1) divided by sqrt(2).
double quality_gap(double tpr, double fpr);

/// Component-wise mean; an empty input gives (0, 0).
RocPoint mean_point(std::span<const RocPoint> points);

}  // namespace pcach
