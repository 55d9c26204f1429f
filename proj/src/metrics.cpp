#include "pcach/metrics.hpp"

#include <cmath>

#include "pcach/errors.hpp"

namespace pcach {

ConfusionCounts score_app_prediction(const std::set<std::string>& predicted, const std::set<std::string>& used,
                                     std::span<const std::string> apps) {
    const std::set<std::string> universe(apps.begin(), apps.end());
    for (const auto& p : predicted)
        if (!universe.contains(p)) throw ValidationError("predicted app '" + p + "' is not pre-cachable");
    ConfusionCounts c;
    for (const auto& a : universe) {
        const bool pred = predicted.contains(a);
        const bool use = used.contains(a);
        if (pred && use)
            ++c.tp;
        else if (pred)
            ++c.fp;
        else if (use)
            ++c.fn;
        else
            ++c.tn;
    }
    return c;
}

RocPoint tpr_fpr(const ConfusionCounts& c) {
    if (c.tp + c.fn == 0) throw UndefinedRateError("TPR undefined: no positives");
    if (c.fp + c.tn == 0) throw UndefinedRateError("FPR undefined: no negatives");
    return {static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn),
            static_cast<double>(c.fp) / static_cast<double>(c.fp + c.tn), 0.0};
}

double quality_gap(double tpr, double fpr) {
    return std::sqrt(fpr * fpr + (1.0 - tpr) * (1.0 - tpr)) / std::sqrt(2.0);
}

RocPoint mean_point(std::span<const RocPoint> points) {
    RocPoint m;
    if (points.empty()) return m;
    for (const auto& p : points) {
        m.tpr += p.tpr;
        m.fpr += p.fpr;
    }
    m.tpr /= static_cast<double>(points.size());
    m.fpr /= static_cast<double>(points.size());
    if (!points.empty()) m.parameter = points.front().parameter;
    return m;
}

}  // namespace pcach
