#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pcach/history_db.hpp"

namespace pcach {

/// Top-K of `apps` in one slot of day: by app_hist count, descending, ties
/// in `apps` order. Returns min(K, |apps|) entries.
std::vector<std::string> top_k_in_slot(const HistoryDB& db, std::span<const std::string> apps, int k, int slot_of_day);

/// Union of the per-slot top-K selections over absolute slots
/// [first_slot, last_slot], in first-selected order. A range longer than a
/// day is clipped to one day since slots repeat. Throws ConfigurationError
/// for an empty app list and ParameterError for K outside [1, |apps|] or an
/// inverted range.
std::vector<std::string> predict_top_k_apps(const HistoryDB& db, std::span<const std::string> apps, int k,
                                            std::int64_t first_slot, std::int64_t last_slot);

}  // namespace pcach
