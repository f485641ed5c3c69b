#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "belldisc/discrimination.hpp"

// Exhaustive enumeration of bounded circuit families and evaluation of their
// discrimination metrics. The enumeration is index-addressable (depth-major,
// then lexicographic over element options), so parallel evaluation over
// disjoint index ranges reproduces the serial result exactly.

namespace belldisc {

struct SearchSpace {
    int spatial_mode_count = 3;  // photons enter modes 1 and 2; extra modes start empty
    int max_depth = 4;
    std::vector<ElementKind> element_kinds = {ElementKind::PPBS, ElementKind::PNPBS,
                                              ElementKind::PolRotator};
    std::vector<double> angle_set = {0.0, std::numbers::pi / 8.0, std::numbers::pi / 4.0};
    std::vector<DetectorConfig> detector_configs;

    static SearchSpace desk_scale() {
        SearchSpace space;
        space.detector_configs = {DetectorConfig::full_resolving(space.spatial_mode_count)};
        return space;
    }

    void validate() const {
        if (spatial_mode_count < 2)
            throw InvalidInputError("search space needs at least two spatial modes");
        if (max_depth < 1) throw InvalidInputError("search depth must be >= 1");
        if (element_kinds.empty()) throw InvalidInputError("no element kinds allowed");
        for (ElementKind k : element_kinds)
            if ((k == ElementKind::PolRotator || k == ElementKind::PhaseShifter) &&
                angle_set.empty())
                throw InvalidInputError("angle set empty but a parameterized kind is allowed");
        if (detector_configs.empty())
            throw InvalidInputError("search space needs at least one detector config");
        for (const auto& cfg : detector_configs) cfg.validate(spatial_mode_count);
    }
};

namespace detail {

// Fixed option order: kinds in declaration order, BS port pairs (i<j)
// lexicographic, single ports ascending, angles in the given order.
inline std::vector<ElementSpec> element_options(const SearchSpace& space) {
    std::vector<ElementSpec> options;
    for (ElementKind kind : {ElementKind::PPBS, ElementKind::PNPBS, ElementKind::PolRotator,
                             ElementKind::PhaseShifter}) {
        if (std::find(space.element_kinds.begin(), space.element_kinds.end(), kind) ==
            space.element_kinds.end())
            continue;
        if (kind == ElementKind::PPBS || kind == ElementKind::PNPBS) {
            for (int i = 1; i <= space.spatial_mode_count; ++i)
                for (int j = i + 1; j <= space.spatial_mode_count; ++j)
                    options.push_back({kind, {i, j}, 0.0});
        } else {
            for (int p = 1; p <= space.spatial_mode_count; ++p)
                for (double angle : space.angle_set)
                    options.push_back({kind, {p}, angle});
        }
    }
    return options;
}

}  // namespace detail

// Depth-major, lexicographic stream over every sequence of length 1..max_depth
// of allowed element options. Each circuit is addressable by a global index.
class CircuitEnumerator {
public:
    explicit CircuitEnumerator(const SearchSpace& space)
        : space_(space), options_(detail::element_options(space)) {
        space.validate();
        std::uint64_t pow = 1;
        total_ = 0;
        for (int d = 1; d <= space.max_depth; ++d) {
            pow *= options_.size();
            depth_start_.push_back(total_);
            total_ += pow;
        }
    }

    std::uint64_t total() const { return total_; }
    std::size_t option_count() const { return options_.size(); }

    CircuitSpec circuit_at(std::uint64_t index) const {
        if (index >= total_) throw InvalidInputError("circuit index out of range");
        int depth = 1;
        while (depth < static_cast<int>(depth_start_.size()) &&
               index >= depth_start_[depth])
            ++depth;
        std::uint64_t offset = index - depth_start_[depth - 1];
        CircuitSpec spec;
        spec.spatial_mode_count = space_.spatial_mode_count;
        spec.elements.resize(depth);
        const std::uint64_t base = options_.size();
        for (int slot = depth - 1; slot >= 0; --slot) {
            spec.elements[slot] = options_[offset % base];
            offset /= base;
        }
        return spec;
    }

private:
    SearchSpace space_;
    std::vector<ElementSpec> options_;
    std::vector<std::uint64_t> depth_start_;  // first global index of each depth
    std::uint64_t total_ = 0;
};

inline std::vector<CircuitSpec> enumerate_circuits(const SearchSpace& space) {
    CircuitEnumerator en(space);
    std::vector<CircuitSpec> out;
    out.reserve(en.total());
    for (std::uint64_t k = 0; k < en.total(); ++k) out.push_back(en.circuit_at(k));
    return out;
}

struct SearchHit {
    std::uint64_t circuit_index = 0;
    std::size_t detector_index = 0;
    double unambiguous = 0.0;
    double bayes = 0.0;
    CircuitSpec circuit;  // filled only for the recorded tie list
};

struct SearchResult {
    double best_unambiguous = 0.0;
    double best_bayes = 0.0;
    std::vector<SearchHit> best_circuits;  // ties on best_unambiguous, capped
    std::uint64_t total_ties = 0;
    std::uint64_t circuits_evaluated = 0;
    double wall_time_seconds = 0.0;
    bool ceiling_exceeded = false;  // best_unambiguous > 0.5 + 1e-9
    bool empty_family = false;
};

inline constexpr std::size_t kTieListCap = 1000;
inline constexpr double kCeilingSlack = 1e-9;

namespace detail {

struct WorkerAccumulator {
    double best_unambiguous = -1.0;
    double best_bayes = 0.0;
    std::vector<SearchHit> ties;  // within kProbabilityTol of local best, index order

    void record(const SearchHit& hit) {
        best_bayes = std::max(best_bayes, hit.bayes);
        if (hit.unambiguous > best_unambiguous + kProbabilityTol) {
            best_unambiguous = hit.unambiguous;
            std::erase_if(ties, [&](const SearchHit& t) {
                return t.unambiguous < best_unambiguous - kProbabilityTol;
            });
            ties.push_back(hit);
        } else if (hit.unambiguous >= best_unambiguous - kProbabilityTol) {
            best_unambiguous = std::max(best_unambiguous, hit.unambiguous);
            ties.push_back(hit);
        }
    }
};

}  // namespace detail

// Exhaustive evaluation of every (circuit, detector) pair in the space.
// Deterministic: the result is identical for any worker count.
inline SearchResult search_max_success(const SearchSpace& space, int workers = 0) {
    const auto t0 = std::chrono::steady_clock::now();
    space.validate();
    CircuitEnumerator en(space);

    SearchResult result;
    if (en.total() == 0) {
        result.empty_family = true;
        return result;
    }
    if (workers <= 0)
        workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const std::uint64_t n = en.total();
    workers = static_cast<int>(std::min<std::uint64_t>(workers, n));

    std::vector<detail::WorkerAccumulator> accs(workers);
    auto run_range = [&](int w, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            const CircuitSpec spec = en.circuit_at(idx);
            for (std::size_t d = 0; d < space.detector_configs.size(); ++d) {
                const auto conditioned =
                    conditioned_distributions(spec, space.detector_configs[d]);
                SearchHit hit;
                hit.circuit_index = idx;
                hit.detector_index = d;
                hit.unambiguous = unambiguous_success(conditioned);
                hit.bayes = bayes_success(conditioned);
                accs[w].record(hit);
            }
        }
    };

    std::vector<std::thread> pool;
    const std::uint64_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::uint64_t lo = w * chunk;
        const std::uint64_t hi = std::min(n, lo + chunk);
        if (lo >= hi) continue;
        pool.emplace_back(run_range, w, lo, hi);
    }
    for (auto& t : pool) t.join();

    for (const auto& acc : accs) {
        result.best_unambiguous = std::max(result.best_unambiguous, acc.best_unambiguous);
        result.best_bayes = std::max(result.best_bayes, acc.best_bayes);
    }
    // Worker blocks are ascending index ranges, so concatenation preserves order.
    for (const auto& acc : accs)
        for (const auto& hit : acc.ties)
            if (hit.unambiguous >= result.best_unambiguous - kProbabilityTol) {
                ++result.total_ties;
                if (result.best_circuits.size() < kTieListCap)
                    result.best_circuits.push_back(hit);
            }
    for (auto& hit : result.best_circuits) hit.circuit = en.circuit_at(hit.circuit_index);
    result.circuits_evaluated = n;
    result.ceiling_exceeded = result.best_unambiguous > 0.5 + kCeilingSlack;
    result.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

struct CascadeStage {
    double p_split = 0.0;
    double p_bunch = 0.0;
    double bunched_fidelity = 0.0;  // squared overlap with initial polarization content
};

namespace detail {

// Moves a single-spatial-mode state onto another spatial index.
inline PhotonicState relabel_spatial(const PhotonicState& s, int from, int to) {
    PhotonicState::TermMap terms;
    for (const auto& [occ, amp] : s.terms()) {
        OccupationVector moved;
        for (const auto& [label, n] : occ.entries()) {
            if (label.spatial != from)
                throw InvalidInputError("relabel_spatial: unexpected spatial mode");
            moved.add(ModeLabel{to, label.pol}, n);
        }
        terms[moved] = amp;
    }
    return PhotonicState(s.photon_number(), std::move(terms));
}

}  // namespace detail

// Sends a bunched two-photon state into a fresh PP beam splitter with an
// empty mode, once per stage, post-selecting the bunched branch each time.
// Reports per-stage split/bunch probabilities and the squared overlap of the
// renormalized bunched branch with the initial polarization content.
inline std::vector<CascadeStage> cascade_experiment(const PhotonicState& initial,
                                                    int stages) {
    if (stages < 1) throw InvalidInputError("cascade needs at least one stage");
    if (initial.photon_number() != 2)
        throw InvalidInputError("cascade expects a two-photon state");
    int home = -1;
    for (const auto& [occ, amp] : initial.terms())
        for (const auto& [label, n] : occ.entries()) {
            if (home == -1) home = label.spatial;
            if (label.spatial != home)
                throw InvalidInputError("cascade input must be bunched in one spatial mode");
        }
    if (home == -1) throw InvalidInputError("cascade input is the zero state");

    const PhotonicState reference = detail::relabel_spatial(initial, home, 1).normalized();
    const ModeUnitary bs = pp_bs_matrix(2, 1, 2);
    const DetectorConfig cfg = DetectorConfig::full_resolving(2);

    std::vector<CascadeStage> records;
    PhotonicState current = reference;
    for (int stage = 0; stage < stages; ++stage) {
        const PhotonicState out = apply_unitary(current, bs);
        const OutcomeDistribution dist = outcome_distribution(out, cfg);

        CascadeStage rec;
        rec.p_split = split_probability(dist);
        rec.p_bunch = bunch_probability(dist);

        // Bunched branch: both photons in one spatial mode.
        PhotonicState::TermMap bunched;
        for (const auto& [occ, amp] : out.terms()) {
            if (occ.entries().size() == 1 ||
                (occ.entries().size() == 2 &&
                 occ.entries()[0].first.spatial == occ.entries()[1].first.spatial))
                bunched[occ] = amp;
        }
        const PhotonicState branch = PhotonicState(2, std::move(bunched)).normalized();

        double fidelity = 0.0;
        for (int m : {1, 2}) {
            const PhotonicState ref_m = detail::relabel_spatial(reference, 1, m);
            fidelity += std::norm(inner_product(ref_m, branch));
        }
        rec.bunched_fidelity = fidelity;
        records.push_back(rec);

        // Continue with the mode-1 component of the bunched branch; both
        // components carry the same polarization content up to phase.
        PhotonicState::TermMap mode1;
        for (const auto& [occ, amp] : branch.terms())
            if (occ.entries()[0].first.spatial == 1) mode1[occ] = amp;
        current = PhotonicState(2, std::move(mode1)).normalized();
    }
    return records;
}

}  // namespace belldisc
