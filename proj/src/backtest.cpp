#include "pcach/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pcach/app_prediction.hpp"
#include "pcach/errors.hpp"
#include "pcach/parallel.hpp"

namespace pcach {

std::vector<double> BacktestOptions::default_threshold_grid() {
    std::vector<double> g;
    for (int i = -100; i <= 100; ++i) g.push_back(i / 100.0);
    return g;
}

GroundTruth ground_truth(const Trace& trace, const SlotClock& clock, std::span<const std::string> tracked_apps) {
    GroundTruth t;
    const auto normalized = normalize_timeline(trace, derive_preferred_profile(trace));
    t.gaps = detect_gaps(normalized);
    const std::set<std::string> tracked(tracked_apps.begin(), tracked_apps.end());
    const auto& s = normalized.samples;
    for (const auto& g : t.gaps) {
        t.cut_slots.insert(clock.absolute_slot(g.cut_time));
        if (g.resume_time) t.resume_slots.insert(clock.absolute_slot(*g.resume_time));
        std::set<std::string> used;
        auto it = std::lower_bound(s.begin(), s.end(), g.cut_time,
                                   [](const MeasurementSample& m, Timestamp x) { return m.timestamp < x; });
        for (; it != s.end() && it->timestamp < g.end_time; ++it) {
            if (it->active != Network::Cellular) continue;
            for (const auto& a : it->apps)
                if (a.ran() && tracked.contains(a.app_id)) used.insert(a.app_id);
        }
        t.used_apps.push_back(std::move(used));
    }
    return t;
}

namespace {

struct Split {
    std::int64_t first_slot;
    std::int64_t last_slot;
    std::int64_t split_slot;  // first test slot
};

Split choose_split(const Trace& trace, const BacktestOptions& o, const SlotClock& clock) {
    if (trace.samples.empty()) throw DataError("cannot backtest an empty trace");
    Split s;
    s.first_slot = clock.absolute_slot(trace.samples.front().timestamp);
    s.last_slot = clock.absolute_slot(trace.samples.back().timestamp);
    const auto per_day = clock.slots_per_day();
    const auto span = s.last_slot - s.first_slot + 1;
    if (span < 2 * per_day)
        throw DataError("trace '" + trace.phone_id + "' spans " + std::to_string(span) +
                        " slots; backtests need at least two days");
    if (o.train_fraction >= 0) {
        if (o.train_fraction >= 1) throw ParameterError("train fraction must be below 1");
        s.split_slot = s.first_slot + static_cast<std::int64_t>(std::floor(o.train_fraction * static_cast<double>(span)));
    } else if (o.config.predictor == PredictorKind::History) {
        s.split_slot = s.first_slot + std::int64_t{o.warmup_days} * per_day;
    } else {
        s.split_slot = s.first_slot + span / 2;
    }
    if (s.split_slot <= s.first_slot + 1 || s.split_slot >= s.last_slot)
        throw DataError("split leaves no training or no test period for '" + trace.phone_id + "'");
    return s;
}

Trace prefix_of(const Trace& trace, Timestamp end) {
    Trace p;
    p.phone_id = trace.phone_id;
    p.nominal_period_s = trace.nominal_period_s;
    p.utc_offset_s = trace.utc_offset_s;
    for (const auto& s : trace.samples) {
        if (s.timestamp >= end) break;
        p.samples.push_back(s);
    }
    return p;
}

ConfusionCounts tolerant_counts(const std::set<std::int64_t>& predicted, const std::set<std::int64_t>& actual,
                                std::int64_t first, std::int64_t last, int tol) {
    auto near = [tol](const std::set<std::int64_t>& set, std::int64_t x) {
        auto it = set.lower_bound(x - tol);
        return it != set.end() && *it <= x + tol;
    };
    ConfusionCounts c;
    for (auto a : actual)
        (near(predicted, a) ? c.tp : c.fn)++;
    for (auto p : predicted)
        if (!near(actual, p)) ++c.fp;
    std::uint64_t either = 0;
    for (auto s = first; s <= last; ++s)
        if (predicted.contains(s) || actual.contains(s)) ++either;
    c.tn = static_cast<std::uint64_t>(last - first + 1) - either;
    return c;
}

struct Replay {
    const Trace& trace;
    const BacktestOptions& o;
    SlotClock clock;
    Split split;
    GroundTruth truth;
    std::vector<int> ks;
    std::map<std::int64_t, std::vector<std::size_t>> gaps_by_cut_slot;

    Replay(const Trace& t, const BacktestOptions& opts)
        : trace(t),
          o(opts),
          clock(opts.config.slot_minutes, t.utc_offset_s),
          split(choose_split(t, opts, clock)),
          truth(ground_truth(t, clock, opts.config.apps)),
          ks(opts.app_ks.empty() ? std::vector<int>{opts.config.k} : opts.app_ks) {
        o.config.validate();
        for (auto k : ks)
            if (k < 1 || static_cast<std::size_t>(k) > o.config.apps.size())
                throw ParameterError("K=" + std::to_string(k) + " outside [1, |apps|]");
        for (std::size_t i = 0; i < truth.gaps.size(); ++i)
            gaps_by_cut_slot[clock.absolute_slot(truth.gaps[i].cut_time)].push_back(i);
    }

    // Samples of absolute slot `slot`, starting the search at `cursor`.
    std::span<const MeasurementSample> batch(std::size_t& cursor, std::int64_t slot) const {
        const auto& s = trace.samples;
        const auto begin = cursor;
        while (cursor < s.size() && clock.absolute_slot(s[cursor].timestamp) <= slot) ++cursor;
        return {s.data() + begin, cursor - begin};
    }
};

struct AppAccumulator {
    std::vector<double> tpr_sum, fpr_sum;
    std::vector<std::size_t> scored, skipped;
    explicit AppAccumulator(std::size_t n) : tpr_sum(n, 0), fpr_sum(n, 0), scored(n, 0), skipped(n, 0) {}
};

void score_apps(const Replay& r, const HistoryDB& db, std::int64_t current_slot, AppAccumulator& acc) {
    auto it = r.gaps_by_cut_slot.find(current_slot + 1);
    if (it == r.gaps_by_cut_slot.end()) return;
    for (auto gi : it->second) {
        const auto& g = r.truth.gaps[gi];
        if (!g.closed()) continue;
        const auto resume_slot = r.clock.absolute_slot(*g.resume_time);
        for (std::size_t j = 0; j < r.ks.size(); ++j) {
            const auto pred = predict_top_k_apps(db, r.o.config.apps, r.ks[j], current_slot + 1,
                                                 std::max(current_slot + 1, resume_slot));
            const auto counts =
                score_app_prediction({pred.begin(), pred.end()}, r.truth.used_apps[gi], r.o.config.apps);
            if (counts.tp + counts.fn == 0 || counts.fp + counts.tn == 0) {
                ++acc.skipped[j];
                continue;
            }
            const auto p = tpr_fpr(counts);
            acc.tpr_sum[j] += p.tpr;
            acc.fpr_sum[j] += p.fpr;
            ++acc.scored[j];
        }
    }
}

// Replays the whole trace. `make_predictor` runs once, at the split, with
// the training examples collected so far.
template <class MakePredictor>
PhoneReport run(const Trace& trace, const BacktestOptions& o, MakePredictor&& make_predictor) {
    Replay r(trace, o);
    const auto split_time = r.clock.slot_start(r.split.split_slot);
    const auto prefix = prefix_of(trace, split_time);
    const auto profile = derive_preferred_profile(prefix);

    // Training labels come from the prefix alone.
    std::set<std::int64_t> train_cuts, train_resumes;
    for (const auto& g : detect_gaps(normalize_timeline(prefix, profile))) {
        train_cuts.insert(r.clock.absolute_slot(g.cut_time));
        if (g.resume_time) train_resumes.insert(r.clock.absolute_slot(*g.resume_time));
    }

    PhoneReport rep;
    rep.phone_id = trace.phone_id;
    rep.predictor = o.config.predictor;
    rep.test_start = split_time;

    HistoryDB db(o.config.slot_minutes, trace.utc_offset_s, profile);
    std::vector<LabeledExample> cut_examples, resume_examples;
    const bool collect = o.score_gaps && o.config.predictor == PredictorKind::AdaBoost;
    std::size_t cursor = 0;
    GapPredictor* predictor = nullptr;
    AppAccumulator apps(r.ks.size());
    std::set<std::int64_t> resume_predicted, resume_truth_in_test;
    std::vector<std::pair<double, bool>> margins;  // normalized cut margin, truth

    const auto first_target = r.split.split_slot + 1;
    for (auto slot = r.split.first_slot + 1; slot <= r.split.last_slot; ++slot) {
        const auto samples = r.batch(cursor, slot - 1);
        if (slot < r.split.split_slot) {
            update_history(db, samples, slot, o.config.apps);
            if (collect && slot + 1 < r.split.split_slot && !db.recent_samples.empty()) {
                const auto now = decision_time(db, slot);
                cut_examples.push_back(
                    {extract_features(db, slot + 1, now, EventTarget::Cut), train_cuts.contains(slot + 1) ? 1 : -1});
                resume_examples.push_back({extract_features(db, slot + 1, now, EventTarget::Resume),
                                           train_resumes.contains(slot + 1) ? 1 : -1});
            }
            continue;
        }
        if (slot == r.split.split_slot) {
            if (o.keep_training_snapshot) rep.training_snapshot = history_to_json(db);
            predictor = make_predictor(rep, cut_examples, resume_examples);
        }
        if (slot + 1 > r.split.last_slot) {
            update_history(db, samples, slot, o.config.apps);
            break;
        }
        ++rep.test_slots;
        const auto target = slot + 1;
        if (!o.score_gaps) {
            update_history(db, samples, slot, o.config.apps);
            score_apps(r, db, slot, apps);
            continue;
        }
        const bool actual = r.truth.cut_slots.contains(target);
        if (db.recent_samples.empty() && samples.empty()) {
            // Nothing observed yet: the slot counts as a negative prediction.
            (actual ? rep.cut.fn : rep.cut.tn)++;
            continue;
        }
        const auto out = pcach_step(db, o.config, *predictor, slot, samples);
        score_apps(r, db, slot, apps);
        if (out.cut_predicted && actual) {
            ++rep.cut.tp;
            for (auto gi : r.gaps_by_cut_slot.at(target)) {
                const auto& g = r.truth.gaps[gi];
                if (!g.resume_time || !out.resume_slot) continue;
                const auto true_resume = r.clock.absolute_slot(*g.resume_time);
                if (std::llabs(*out.resume_slot - true_resume) <= o.resume_tolerance_slots)
                    ++rep.resume_slot_hits;
                else
                    ++rep.resume_slot_misses;
            }
        } else if (out.cut_predicted) {
            ++rep.cut.fp;
        } else if (actual) {
            ++rep.cut.fn;
        } else {
            ++rep.cut.tn;
        }
        if (predictor->predict_resume_in(db, slot, target)) resume_predicted.insert(target);
        if (auto* ada = dynamic_cast<AdaBoostGapPredictor*>(predictor)) {
            const auto total = ada->cut_model().total_alpha();
            const auto m = total > 0 ? ada->cut_margin(db, slot) / total : 0.0;
            margins.emplace_back(m, actual);
        }
    }

    if (o.score_gaps) {
        for (auto s : r.truth.resume_slots)
            if (s >= first_target && s <= r.split.last_slot) resume_truth_in_test.insert(s);
        rep.resume = tolerant_counts(resume_predicted, resume_truth_in_test, first_target, r.split.last_slot,
                                     o.resume_tolerance_slots);
        if (!margins.empty()) {
            for (double q : o.threshold_grid) {
                ConfusionCounts c;
                for (const auto& [m, actual] : margins) {
                    const bool pred = m > q;
                    if (pred && actual) ++c.tp;
                    else if (pred) ++c.fp;
                    else if (actual) ++c.fn;
                    else ++c.tn;
                }
                if (c.tp + c.fn == 0 || c.fp + c.tn == 0) continue;
                auto p = tpr_fpr(c);
                p.parameter = q;
                rep.cut_roc.push_back(p);
            }
        }
    }
    for (std::size_t j = 0; j < r.ks.size(); ++j) {
        AppScore a;
        a.k = r.ks[j];
        a.gaps_scored = apps.scored[j];
        a.gaps_skipped = apps.skipped[j];
        a.mean.parameter = a.k;
        if (a.gaps_scored > 0) {
            a.mean.tpr = apps.tpr_sum[j] / static_cast<double>(a.gaps_scored);
            a.mean.fpr = apps.fpr_sum[j] / static_cast<double>(a.gaps_scored);
        }
        rep.apps.push_back(a);
    }
    return rep;
}

}  // namespace

PhoneReport backtest_with_predictor(const Trace& trace, const BacktestOptions& options, GapPredictor& predictor) {
    return run(trace, options, [&](PhoneReport&, auto&, auto&) { return &predictor; });
}

PhoneReport backtest(const Trace& trace, const BacktestOptions& options) {
    std::optional<HistoryGapPredictor> history;
    std::optional<AdaBoostGapPredictor> ada;
    auto make = [&](PhoneReport& rep, const std::vector<LabeledExample>& cuts,
                    const std::vector<LabeledExample>& resumes) -> GapPredictor* {
        if (options.config.predictor == PredictorKind::History) {
            history.emplace(options.history, Rng::stream(options.seed, trace.phone_id, "history-predictor", 0));
            history->search = options.search;
            return &*history;
        }
        auto train = [&](const std::vector<LabeledExample>& data) {
            try {
                return adaboost_train(data, options.rounds);
            } catch (const DegenerateDataError&) {
                AdaBoostModel empty;
                empty.rounds = options.rounds;
                return empty;
            }
        };
        ada.emplace(train(cuts), train(resumes));
        ada->search = options.search;
        rep.cut_model = ada->cut_model();
        rep.resume_model = ada->resume_model();
        return &*ada;
    };
    return run(trace, options, make);
}

CorpusSummary summarize(std::span<const PhoneReport> reports) {
    CorpusSummary s;
    s.phones = reports.size();
    if (reports.empty()) return s;
    s.predictor = reports.front().predictor;
    std::vector<RocPoint> cut, resume;
    for (const auto& r : reports) {
        try {
            cut.push_back(tpr_fpr(r.cut));
        } catch (const UndefinedRateError&) {
            ++s.phones_skipped_cut;
        }
        try {
            resume.push_back(tpr_fpr(r.resume));
        } catch (const UndefinedRateError&) {
            ++s.phones_skipped_resume;
        }
    }
    s.cut = mean_point(cut);
    s.resume = mean_point(resume);

    for (const auto& row : k_sweep_rows(reports)) {
        AppScore a;
        a.k = row.k;
        a.mean = row.mean;
        for (const auto& r : reports)
            for (const auto& x : r.apps)
                if (x.k == row.k) {
                    a.gaps_scored += x.gaps_scored;
                    a.gaps_skipped += x.gaps_skipped;
                }
        s.apps.push_back(a);
    }

    // Threshold sweep: average the phones that report each threshold.
    std::map<double, std::vector<RocPoint>> by_threshold;
    for (const auto& r : reports)
        for (const auto& p : r.cut_roc) by_threshold[p.parameter].push_back(p);
    for (const auto& [q, pts] : by_threshold) {
        auto m = mean_point(pts);
        m.parameter = q;
        s.cut_roc.push_back(m);
    }
    return s;
}

std::vector<KSweepRow> k_sweep_rows(std::span<const PhoneReport> reports) {
    std::map<int, std::vector<RocPoint>> by_k;
    for (const auto& r : reports)
        for (const auto& a : r.apps)
            if (a.gaps_scored > 0) by_k[a.k].push_back(a.mean);
    std::vector<KSweepRow> rows;
    for (const auto& [k, pts] : by_k) {
        KSweepRow row;
        row.k = k;
        row.mean = mean_point(pts);
        row.mean.parameter = k;
        row.quality_gap = quality_gap(row.mean.tpr, row.mean.fpr);
        row.phones = pts.size();
        rows.push_back(row);
    }
    return rows;
}

std::vector<KSweepRow> k_sweep(std::span<const Trace> traces, const BacktestOptions& base, std::span<const int> ks) {
    if (traces.empty()) throw DataError("k sweep needs at least one trace");
    auto opts = base;
    opts.app_ks.assign(ks.begin(), ks.end());
    opts.score_gaps = false;
    std::vector<PhoneReport> reports(traces.size());
    parallel_for(traces.size(), [&](std::size_t i) { reports[i] = backtest(traces[i], opts); });
    return k_sweep_rows(reports);
}

}  // namespace pcach
