#include "pcach/event_prediction.hpp"

#include "pcach/errors.hpp"

namespace pcach {

bool history_predict_event(double p, int draws, double tolerance, Rng& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("event probability must lie in [0,1]");
    if (draws < 1) throw ParameterError("N must be positive");
    if (!(tolerance > 0.0 && tolerance < 1.0)) throw ParameterError("delta must lie in (0,1)");
    // A never-observed event is never predicted, although 0 lies in [0, 0].
    if (p == 0.0) return false;
    int hits = 0;
    for (int i = 0; i < draws; ++i)
        if (rng.uniform() < p) ++hits;
    // Compare counts with a little slack: (1 - delta) * p * N rounds up past
    // the integer bound for values such as p = 0.02, delta = 0.1.
    constexpr double slack = 1e-9;
    const double expected = p * draws;
    return hits >= (1.0 - tolerance) * expected - slack && hits <= (1.0 + tolerance) * expected + slack;
}

std::int64_t predict_resume_slot_history(const HistoryDB& db, std::int64_t current_slot, const HistoryEventParams& params,
                                         const ResumeSearch& search, Rng& rng) {
    const auto clock = db.clock();
    for (int i = 1; i <= search.max_lookahead; ++i) {
        const auto s = current_slot + i;
        if (history_predict_event(db.resume_probability(clock.slot_of_day_abs(s)), params.draws, params.tolerance, rng))
            return s;
    }
    return current_slot + 1 + search.default_gap_slots;
}

}  // namespace pcach
