#pragma once

#include <array>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "belldisc/detection.hpp"
#include "belldisc/evolution.hpp"
#include "belldisc/fock.hpp"

// Discrimination metrics: how well one circuit plus one detector
// configuration tells the four Bell states apart. The four states never
// enter together; the circuit is fixed and each state is evolved and
// measured separately, giving four conditioned outcome distributions.

namespace belldisc {

using ConditionedDistributions = std::array<OutcomeDistribution, 4>;

struct ConfusablePair {
    BellKind a;
    BellKind b;
    double total_variation;
};

struct DiscriminationReport {
    ConditionedDistributions conditioned;
    double bayes_success = 0.0;
    double unambiguous_success = 0.0;
    std::vector<ConfusablePair> confusable_pairs;
};

inline ConditionedDistributions conditioned_distributions(
    const CircuitSpec& spec, const DetectorConfig& cfg, int input_a = 1, int input_b = 2,
    bool flip_pnp_vblock = false) {
    spec.validate();
    cfg.validate(spec.spatial_mode_count);
    ConditionedDistributions out;
    int k = 0;
    for (BellKind kind : kAllBellKinds) {
        const PhotonicState evolved =
            evolve_circuit(bell_state(kind, input_a, input_b), spec, flip_pnp_vblock);
        out[k++] = outcome_distribution(evolved, cfg);
    }
    return out;
}

namespace detail {

inline std::set<DetectionEvent> event_union(const ConditionedDistributions& conditioned) {
    std::set<DetectionEvent> events;
    for (const auto& dist : conditioned)
        for (const auto& [ev, p] : dist) events.insert(ev);
    return events;
}

inline double probability_of(const OutcomeDistribution& dist, const DetectionEvent& ev) {
    auto it = dist.find(ev);
    return it == dist.end() ? 0.0 : it->second;
}

}  // namespace detail

// Maximum-a-posteriori guessing success under a uniform 1/4 prior:
// (1/4) * sum_events max_kind P(event | kind).
inline double bayes_success(const ConditionedDistributions& conditioned) {
    double total = 0.0;
    for (const auto& ev : detail::event_union(conditioned)) {
        double best = 0.0;
        for (const auto& dist : conditioned)
            best = std::max(best, detail::probability_of(dist, ev));
        total += best;
    }
    return total / 4.0;
}

// Unambiguous discrimination success under a uniform 1/4 prior: an event
// counts for a state only if every other state gives it zero probability
// (zero-tested at 1e-10).
inline double unambiguous_success(const ConditionedDistributions& conditioned) {
    double total = 0.0;
    for (const auto& ev : detail::event_union(conditioned)) {
        int holders = 0;
        double p = 0.0;
        for (const auto& dist : conditioned) {
            const double q = detail::probability_of(dist, ev);
            if (q > kProbabilityTol) {
                ++holders;
                p = q;
            }
        }
        if (holders == 1) total += p;
    }
    return total / 4.0;
}

inline double total_variation(const OutcomeDistribution& p, const OutcomeDistribution& q) {
    std::set<DetectionEvent> events;
    for (const auto& [ev, prob] : p) events.insert(ev);
    for (const auto& [ev, prob] : q) events.insert(ev);
    double tv = 0.0;
    for (const auto& ev : events)
        tv += std::abs(detail::probability_of(p, ev) - detail::probability_of(q, ev));
    return tv / 2.0;
}

// All six pairwise total-variation distances; 0 means the two states are
// indistinguishable by any post-processing of these detectors.
inline std::vector<ConfusablePair> confusability(const ConditionedDistributions& conditioned) {
    std::vector<ConfusablePair> pairs;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            pairs.push_back({kAllBellKinds[a], kAllBellKinds[b],
                             total_variation(conditioned[a], conditioned[b])});
    return pairs;
}

inline DiscriminationReport discrimination_report(const CircuitSpec& spec,
                                                  const DetectorConfig& cfg,
                                                  int input_a = 1, int input_b = 2) {
    DiscriminationReport report;
    report.conditioned = conditioned_distributions(spec, cfg, input_a, input_b);
    report.bayes_success = bayes_success(report.conditioned);
    report.unambiguous_success = unambiguous_success(report.conditioned);
    report.confusable_pairs = confusability(report.conditioned);
    return report;
}

}  // namespace belldisc
