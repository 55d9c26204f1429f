#include "pcach/adaboost.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "pcach/errors.hpp"

namespace pcach {

double AdaBoostModel::total_alpha() const {
    double s = 0;
    for (const auto& st : stumps) s += st.alpha;
    return s;
}

namespace {

struct Column {
    std::vector<double> value;       // per example
    std::vector<std::size_t> order;  // examples sorted by value
};

struct Candidate {
    double error = 1.0;
    Stump stump;
};

Candidate best_stump(const std::vector<Column>& columns, std::span<const LabeledExample> data,
                     const std::vector<double>& w) {
    double pos_total = 0;
    for (std::size_t i = 0; i < data.size(); ++i)
        if (data[i].label > 0) pos_total += w[i];
    double neg_total = 0;
    for (std::size_t i = 0; i < data.size(); ++i)
        if (data[i].label < 0) neg_total += w[i];

    Candidate best;
    bool found = false;
    for (int f = 0; f < kFeatureCount; ++f) {
        const auto& col = columns[static_cast<std::size_t>(f)];
        double pos_le = 0, neg_le = 0;
        for (std::size_t j = 0; j + 1 < col.order.size(); ++j) {
            const auto i = col.order[j];
            (data[i].label > 0 ? pos_le : neg_le) += w[i];
            const double here = col.value[i];
            const double next = col.value[col.order[j + 1]];
            if (next == here) continue;
            const double thr = here + (next - here) / 2;
            // Polarity +1 predicts +1 above the threshold.
            const double err_plus = pos_le + (neg_total - neg_le);
            const double err_minus = neg_le + (pos_total - pos_le);
            if (!found || err_plus < best.error) {
                best = {err_plus, Stump{f + 1, thr, 1, 0}};
                found = true;
            }
            if (err_minus < best.error) best = {err_minus, Stump{f + 1, thr, -1, 0}};
        }
    }
    if (!found) best.error = 0.5;  // every feature is constant: nothing to split on
    return best;
}

}  // namespace

AdaBoostModel adaboost_train(std::span<const LabeledExample> data, int rounds, const RoundObserver& observer) {
    if (rounds < 1) throw ParameterError("AdaBoost needs at least one round");
    if (data.empty()) throw DegenerateDataError("empty training set");
    const bool has_pos = std::any_of(data.begin(), data.end(), [](const auto& e) { return e.label > 0; });
    const bool has_neg = std::any_of(data.begin(), data.end(), [](const auto& e) { return e.label < 0; });
    if (!has_pos || !has_neg) throw DegenerateDataError("training set has a single label");

    const auto n = data.size();
    std::vector<Column> columns(kFeatureCount);
    for (int f = 0; f < kFeatureCount; ++f) {
        auto& col = columns[static_cast<std::size_t>(f)];
        col.value.resize(n);
        for (std::size_t i = 0; i < n; ++i) col.value[i] = data[i].features[f + 1];
        col.order.resize(n);
        std::iota(col.order.begin(), col.order.end(), std::size_t{0});
        std::stable_sort(col.order.begin(), col.order.end(),
                         [&](std::size_t a, std::size_t b) { return col.value[a] < col.value[b]; });
    }

    AdaBoostModel model;
    model.rounds = rounds;
    const auto n_pos = static_cast<double>(std::count_if(data.begin(), data.end(), [](const auto& e) { return e.label > 0; }));
    const auto n_neg = static_cast<double>(n) - n_pos;
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = data[i].label > 0 ? 0.5 / n_pos : 0.5 / n_neg;
    std::vector<double> selection;
    for (int r = 0; r < rounds; ++r) {
        const auto cand = best_stump(columns, data, w);
        if (cand.error >= 0.5) break;
        const double eps = std::clamp(cand.error, kMinWeightedError, 1.0 - kMinWeightedError);
        Stump st = cand.stump;
        st.alpha = 0.5 * std::log((1.0 - eps) / eps);
        model.stumps.push_back(st);

        selection = w;
        double sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const int h = st.vote(data[i].features);
            w[i] *= std::exp(-st.alpha * data[i].label * h);
            sum += w[i];
        }
        for (auto& x : w) x /= sum;
        if (observer) observer(RoundInfo{r, cand.error, st, selection, w});
        if (cand.error == 0.0) break;
    }
    return model;
}

BoostPrediction adaboost_predict(const AdaBoostModel& model, const FeatureVector& fv) {
    if (model.stumps.empty()) throw ModelError("AdaBoost model has no stumps");
    double margin = 0;
    for (const auto& st : model.stumps) margin += st.alpha * st.vote(fv);
    return {margin - model.decision_threshold > 0 ? 1 : -1, margin};
}

double training_error(const AdaBoostModel& model, std::span<const LabeledExample> data) {
    if (data.empty()) return 0.0;
    std::size_t wrong = 0;
    for (const auto& e : data)
        if (adaboost_predict(model, e.features).label != e.label) ++wrong;
    return static_cast<double>(wrong) / static_cast<double>(data.size());
}

std::string model_to_json(const AdaBoostModel& model) {
    nlohmann::ordered_json j;
    j["rounds"] = model.rounds;
    j["stumps"] = nlohmann::ordered_json::array();
    for (const auto& s : model.stumps)
        j["stumps"].push_back(
            {{"feature", s.feature}, {"threshold", s.threshold}, {"polarity", s.polarity}, {"alpha", s.alpha}});
    j["decision_threshold"] = model.decision_threshold;
    return j.dump(2);
}

AdaBoostModel model_from_json(const std::string& text) {
    try {
        const auto j = nlohmann::json::parse(text);
        AdaBoostModel m;
        m.rounds = j.at("rounds").get<int>();
        m.decision_threshold = j.value("decision_threshold", 0.0);
        for (const auto& s : j.at("stumps")) {
            Stump st{s.at("feature").get<int>(), s.at("threshold").get<double>(), s.at("polarity").get<int>(),
                     s.at("alpha").get<double>()};
            if (st.feature < 1 || st.feature > kFeatureCount || (st.polarity != 1 && st.polarity != -1) ||
                !std::isfinite(st.alpha))
                throw ModelError("malformed stump in model document");
            m.stumps.push_back(st);
        }
        if (m.stumps.size() > static_cast<std::size_t>(std::max(m.rounds, 0)))
            throw ModelError("model has more stumps than rounds");
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ModelError(std::string("invalid model document: ") + e.what());
    }
}

}  // namespace pcach
