#pragma once

#include <cstdint>

#include "pcach/history_db.hpp"
#include "pcach/rng.hpp"

namespace pcach {

struct HistoryEventParams {
    int draws = 10000;       // N
    double tolerance = 0.1;  // delta
};

/// Throws N uniforms and counts those below p. Fires when p > 0 and the
/// observed rate X/N lies within [(1 - delta) p, (1 + delta) p]. Throws
/// ParameterError for p outside [0,1], N < 1 or delta outside (0,1).
bool history_predict_event(double p, int draws, double tolerance, Rng& rng);

struct ResumeSearch {
    int max_lookahead = 96;     // one day of 15-minute slots
    int default_gap_slots = 2;  // fallback when nothing fires
};

/// First slot s in cSlt+1 .. cSlt+max_lookahead where the resume histogram
/// fires; cSlt + 1 + default_gap_slots otherwise.
std::int64_t predict_resume_slot_history(const HistoryDB& db, std::int64_t current_slot, const HistoryEventParams& params,
                                         const ResumeSearch& search, Rng& rng);

}  // namespace pcach
