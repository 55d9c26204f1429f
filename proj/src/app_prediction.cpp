#include "pcach/app_prediction.hpp"

#include <algorithm>
#include <numeric>

#include "pcach/errors.hpp"

namespace pcach {

std::vector<std::string> top_k_in_slot(const HistoryDB& db, std::span<const std::string> apps, int k, int slot) {
    std::vector<std::pair<std::uint32_t, std::size_t>> ranked;
    ranked.reserve(apps.size());
    for (std::size_t i = 0; i < apps.size(); ++i) ranked.emplace_back(db.app_count(apps[i], slot), i);
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<std::string> out;
    const auto n = std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 0)), apps.size());
    for (std::size_t i = 0; i < n; ++i) out.push_back(apps[ranked[i].second]);
    return out;
}

std::vector<std::string> predict_top_k_apps(const HistoryDB& db, std::span<const std::string> apps, int k,
                                            std::int64_t first_slot, std::int64_t last_slot) {
    if (apps.empty()) throw ConfigurationError("empty pre-cachable app list");
    if (k < 1 || static_cast<std::size_t>(k) > apps.size())
        throw ParameterError("K must lie in [1, " + std::to_string(apps.size()) + "], got " + std::to_string(k));
    if (first_slot > last_slot) throw ParameterError("first_slot after last_slot");
    const auto clock = db.clock();
    last_slot = std::min(last_slot, first_slot + clock.slots_per_day() - 1);
    std::vector<std::string> out;
    for (auto s = first_slot; s <= last_slot; ++s) {
        for (auto& app : top_k_in_slot(db, apps, k, clock.slot_of_day_abs(s)))
            if (std::find(out.begin(), out.end(), app) == out.end()) out.push_back(std::move(app));
    }
    return out;
}

}  // namespace pcach
