#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "belldisc/detection.hpp"
#include "belldisc/evolution.hpp"
#include "oracle.hpp"

using namespace belldisc;
using namespace belldisc_test;

namespace {
DetectionEvent event(std::initializer_list<std::pair<Channel, int>> counts) {
    DetectionEvent ev;
    ev.counts = counts;
    std::sort(ev.counts.begin(), ev.counts.end());
    return ev;
}
}  // namespace

TEST_CASE("psi+ after a PP beam splitter: bunched HV half-half") {
    const auto out = apply_unitary(bell_state(BellKind::PsiPlus, 1, 2), pp_bs_matrix(2, 1, 2));

    SECTION("full-resolving") {
        const auto dist = outcome_distribution(out, DetectorConfig::full_resolving(2));
        REQUIRE(dist.size() == 2);
        const auto hv1 = event({{{1, 0}, 1}, {{1, 1}, 1}});
        const auto hv2 = event({{{2, 0}, 1}, {{2, 1}, 1}});
        CHECK(dist.at(hv1) == Catch::Approx(0.5).margin(kProbabilityTol));
        CHECK(dist.at(hv2) == Catch::Approx(0.5).margin(kProbabilityTol));
    }

    SECTION("polarization-blind detectors see two photons in one mode") {
        DetectorConfig cfg = DetectorConfig::full_resolving(2);
        cfg.polarization_resolving = false;
        const auto dist = outcome_distribution(out, cfg);
        REQUIRE(dist.size() == 2);
        CHECK(dist.at(event({{{1, -1}, 2}})) == Catch::Approx(0.5).margin(kProbabilityTol));
        CHECK(dist.at(event({{{2, -1}, 2}})) == Catch::Approx(0.5).margin(kProbabilityTol));
    }
}

TEST_CASE("phi+ after a PP beam splitter: four bunched outcomes at 1/4") {
    const auto out = apply_unitary(bell_state(BellKind::PhiPlus, 1, 2), pp_bs_matrix(2, 1, 2));
    const auto dist = outcome_distribution(out, DetectorConfig::full_resolving(2));
    REQUIRE(dist.size() == 4);
    for (const auto& [ev, p] : dist) {
        CHECK(p == Catch::Approx(0.25).margin(kProbabilityTol));
        CHECK(classify_pattern(ev) == Pattern::Bunched);
    }
}

TEST_CASE("probabilities sum to one and coarse-graining is a marginal") {
    std::mt19937 rng(211);
    for (int trial = 0; trial < 100; ++trial) {
        const auto u = random_mode_unitary(3, rng);
        const auto s = apply_unitary(random_two_photon_state(3, rng), u);
        const auto full = outcome_distribution(s, DetectorConfig::full_resolving(3));

        double total = 0.0;
        for (const auto& [ev, p] : full) {
            CHECK(p >= 0.0);
            CHECK(p <= 1.0 + kProbabilityTol);
            total += p;
        }
        CHECK(total == Catch::Approx(1.0).margin(kProbabilityTol));

        // Polarization-blind distribution must equal the marginal of the
        // full-resolving one.
        DetectorConfig blind = DetectorConfig::full_resolving(3);
        blind.polarization_resolving = false;
        const auto coarse = outcome_distribution(s, blind);
        std::map<DetectionEvent, double> marginal;
        for (const auto& [ev, p] : full) {
            std::map<Channel, int> acc;
            for (const auto& [ch, n] : ev.counts) acc[Channel{ch.spatial, -1}] += n;
            DetectionEvent merged;
            for (const auto& [ch, n] : acc) merged.counts.push_back({ch, n});
            marginal[merged] += p;
        }
        for (const auto& [ev, p] : coarse)
            CHECK(p == Catch::Approx(marginal[ev]).margin(kProbabilityTol));
        CHECK(coarse.size() == marginal.size());

        // Split and bunch exhaust the two-photon outcomes.
        CHECK(split_probability(full) + bunch_probability(full) ==
              Catch::Approx(1.0).margin(kProbabilityTol));
    }
}

TEST_CASE("threshold detectors collapse counts to clicks") {
    PhotonicState::TermMap t;
    OccupationVector two;
    two.add(ModeLabel{1, Polarization::H}, 2);
    t[two] = 1.0;
    DetectorConfig cfg = DetectorConfig::full_resolving(1);
    cfg.number_resolving = false;
    const auto dist = outcome_distribution(PhotonicState(2, std::move(t)), cfg);
    REQUIRE(dist.size() == 1);
    const auto& [ev, p] = *dist.begin();
    CHECK(ev.counts.size() == 1);
    CHECK(ev.counts[0].second == 1);  // two photons, one click
    CHECK(p == Catch::Approx(1.0).margin(kProbabilityTol));
}

TEST_CASE("unmonitored support raises a coverage error") {
    DetectorConfig cfg;
    cfg.monitored_spatial_modes = {1};
    CHECK_THROWS_AS(outcome_distribution(bell_state(BellKind::PsiMinus, 1, 2), cfg),
                    CoverageError);
}

TEST_CASE("classify_pattern follows the split/bunch definition") {
    CHECK(classify_pattern(event({{{1, 0}, 1}, {{2, 1}, 1}})) == Pattern::Split);
    CHECK(classify_pattern(event({{{2, 0}, 1}, {{2, 1}, 1}})) == Pattern::Bunched);
    CHECK(classify_pattern(event({{{1, 0}, 2}})) == Pattern::Bunched);
    CHECK_THROWS_AS(classify_pattern(event({{{1, 0}, 1}})), InvalidInputError);
}
