#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "belldisc/fock.hpp"

// Born-rule detection: converts final states into probability distributions
// over detector click patterns under configurable detector capabilities.

namespace belldisc {

// Thrown when a state has support on unmonitored modes, i.e. photons would
// escape undetected and probability would leak.
struct CoverageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DetectorConfig {
    bool polarization_resolving = true;
    bool number_resolving = true;
    std::set<int> monitored_spatial_modes;

    static DetectorConfig full_resolving(int spatial_mode_count) {
        DetectorConfig cfg;
        for (int m = 1; m <= spatial_mode_count; ++m)
            cfg.monitored_spatial_modes.insert(m);
        return cfg;
    }

    void validate(int spatial_mode_count) const {
        if (monitored_spatial_modes.empty())
            throw InvalidInputError("detector config monitors no modes");
        for (int m : monitored_spatial_modes)
            if (m < 1 || m > spatial_mode_count)
                throw InvalidInputError("monitored mode " + std::to_string(m) +
                                        " outside circuit mode count");
    }
};

// A detector channel: a spatial mode, optionally split by polarization.
struct Channel {
    int spatial = 1;
    int pol = -1;  // -1 = polarization not resolved, else 0=H, 1=V

    friend auto operator<=>(const Channel&, const Channel&) = default;
};

// Counts per channel; with threshold (non-number-resolving) detectors the
// counts are collapsed to 0/1 clicks.
struct DetectionEvent {
    std::vector<std::pair<Channel, int>> counts;  // sorted by channel, nonzero

    int total() const {
        int t = 0;
        for (const auto& [ch, n] : counts) t += n;
        return t;
    }

    std::string str() const {
        std::string s;
        for (const auto& [ch, n] : counts) {
            if (!s.empty()) s += ',';
            s += std::to_string(n) + "@" + std::to_string(ch.spatial);
            if (ch.pol >= 0) s += (ch.pol == 0 ? 'H' : 'V');
        }
        return "(" + s + ")";
    }

    friend auto operator<=>(const DetectionEvent&, const DetectionEvent&) = default;
};

using OutcomeDistribution = std::map<DetectionEvent, double>;

namespace detail {

inline DetectionEvent coarse_grain(const OccupationVector& occ, const DetectorConfig& cfg) {
    std::map<Channel, int> acc;
    for (const auto& [label, n] : occ.entries()) {
        Channel ch;
        ch.spatial = label.spatial;
        ch.pol = cfg.polarization_resolving ? (label.pol == Polarization::V ? 1 : 0) : -1;
        acc[ch] += n;
    }
    DetectionEvent ev;
    for (auto& [ch, n] : acc)
        ev.counts.push_back({ch, cfg.number_resolving ? n : 1});
    return ev;
}

}  // namespace detail

inline OutcomeDistribution outcome_distribution(const PhotonicState& state,
                                                const DetectorConfig& cfg) {
    if (cfg.monitored_spatial_modes.empty())
        throw InvalidInputError("detector config monitors no modes");
    OutcomeDistribution dist;
    for (const auto& [occ, amp] : state.terms()) {
        for (const auto& [label, n] : occ.entries())
            if (!cfg.monitored_spatial_modes.count(label.spatial))
                throw CoverageError("state has support on unmonitored spatial mode " +
                                    std::to_string(label.spatial));
        dist[detail::coarse_grain(occ, cfg)] += std::norm(amp);
    }
    for (auto it = dist.begin(); it != dist.end();)
        it = (it->second < kAmplitudeTol) ? dist.erase(it) : std::next(it);
    return dist;
}

enum class Pattern { Split, Bunched };

// Split iff the two photons occupy distinct spatial modes; polarizations are
// irrelevant. Requires a number-resolved two-photon event.
inline Pattern classify_pattern(const DetectionEvent& ev) {
    if (ev.total() != 2)
        throw InvalidInputError("classify_pattern requires exactly two detected photons");
    std::set<int> spatials;
    for (const auto& [ch, n] : ev.counts) spatials.insert(ch.spatial);
    return spatials.size() == 1 ? Pattern::Bunched : Pattern::Split;
}

// P(Split) over a number-resolved two-photon distribution.
inline double split_probability(const OutcomeDistribution& dist) {
    double p = 0.0;
    for (const auto& [ev, prob] : dist)
        if (classify_pattern(ev) == Pattern::Split) p += prob;
    return p;
}

inline double bunch_probability(const OutcomeDistribution& dist) {
    double p = 0.0;
    for (const auto& [ev, prob] : dist)
        if (classify_pattern(ev) == Pattern::Bunched) p += prob;
    return p;
}

}  // namespace belldisc
