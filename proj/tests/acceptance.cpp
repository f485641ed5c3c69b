// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Covers the operator identities of the two Mach-Zehnder
// composites, the split/bunch table, the standard-setup metrics,
// confusability, the beam-splitter cascade, the exhaustive desk-scale
// ceiling search and the randomized property suites.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "belldisc/json_io.hpp"
#include "belldisc/verify.hpp"
#include "oracle.hpp"

using namespace belldisc;
using namespace belldisc_test;

namespace {

int failures = 0;

void report(const char* name, bool pass, const std::string& detail) {
    std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", name, detail.c_str());
    if (!pass) ++failures;
}

OccupationVector occ(std::initializer_list<ModeLabel> photons) {
    return OccupationVector::from_photons(photons);
}

PhotonicState single_term(const OccupationVector& o, cplx amp = {1.0, 0.0}) {
    PhotonicState::TermMap t;
    t[o] = amp;
    return PhotonicState(2, std::move(t));
}

PhotonicState squared_pair(int spatial_h, int spatial_v, double sign) {
    const double r = 1.0 / std::sqrt(2.0);
    PhotonicState::TermMap t;
    OccupationVector h, v;
    h.add(ModeLabel{spatial_h, Polarization::H}, 2);
    v.add(ModeLabel{spatial_v, Polarization::V}, 2);
    t[h] = r;
    t[v] = sign * r;
    return PhotonicState(2, std::move(t));
}

double state_error(const PhotonicState& got, const PhotonicState& expect) {
    double worst = 0.0;
    for (const auto& [o, amp] : expect.terms())
        worst = std::max(worst, std::abs(got.amplitude(o) - amp));
    for (const auto& [o, amp] : got.terms())
        worst = std::max(worst, std::abs(expect.amplitude(o) - amp));
    return worst;
}

void criterion_1_eq2() {
    const auto t0 = std::chrono::steady_clock::now();
    const CircuitSpec mz{2, {{ElementKind::PPBS, {1, 2}, 0.0},
                             {ElementKind::PPBS, {1, 2}, 0.0}}};
    double worst = 0.0;
    {
        const auto in = single_term(occ({{1, Polarization::H}, {1, Polarization::V}}));
        const auto expect = single_term(occ({{2, Polarization::H}, {2, Polarization::V}}));
        worst = std::max(worst, state_error(evolve_circuit(in, mz), expect));
    }
    for (double sign : {-1.0, +1.0})
        worst = std::max(worst, state_error(evolve_circuit(squared_pair(1, 1, sign), mz),
                                            squared_pair(2, 2, sign)));
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report("criterion-1-pp-pp-mz", worst <= 1e-12 && elapsed < 1.0,
           "max amplitude error " + std::to_string(worst) + ", " +
               std::to_string(elapsed) + " s");
}

void criterion_2_eq3() {
    const CircuitSpec mz{2, {{ElementKind::PPBS, {1, 2}, 0.0},
                             {ElementKind::PNPBS, {1, 2}, 0.0}}};
    double worst = 0.0;
    {
        const auto in = single_term(occ({{1, Polarization::H}, {1, Polarization::V}}));
        const auto expect =
            single_term(occ({{2, Polarization::H}, {1, Polarization::V}}), {-1.0, 0.0});
        worst = std::max(worst, state_error(evolve_circuit(in, mz), expect));
    }
    for (double sign : {-1.0, +1.0})
        worst = std::max(worst, state_error(evolve_circuit(squared_pair(1, 1, sign), mz),
                                            squared_pair(2, 1, sign)));
    report("criterion-2-pp-pnp-mz", worst <= 1e-12,
           "max amplitude error " + std::to_string(worst));
}

void criterion_3_split_bunch_table() {
    const auto claim = claim_split_bunch_table(false);
    report("criterion-3-split-bunch-table", claim.pass, claim.detail);
}

void criterion_4_standard_setup() {
    const CircuitSpec single{2, {{ElementKind::PPBS, {1, 2}, 0.0}}};
    const auto cond = conditioned_distributions(single, DetectorConfig::full_resolving(2));
    const double u = unambiguous_success(cond);
    const double b = bayes_success(cond);
    report("criterion-4-standard-setup",
           std::abs(u - 0.5) <= 1e-10 && std::abs(b - 0.75) <= 1e-10,
           "unambiguous " + std::to_string(u) + " (expect 0.5), bayes " +
               std::to_string(b) + " (expect 0.75)");
}

void criterion_5_confusability() {
    const CircuitSpec single{2, {{ElementKind::PPBS, {1, 2}, 0.0}}};
    const auto cond = conditioned_distributions(single, DetectorConfig::full_resolving(2));
    double tv = -1.0;
    for (const auto& pair : confusability(cond))
        if (pair.a == BellKind::PhiMinus && pair.b == BellKind::PhiPlus)
            tv = pair.total_variation;
    report("criterion-5-confusability-phi-pair", std::abs(tv) <= 1e-10,
           "TV(phi+, phi-) = " + std::to_string(tv) + " (expect 0)");
}

void criterion_6_cascade() {
    double worst = 0.0;
    OccupationVector two_h;
    two_h.add(ModeLabel{1, Polarization::H}, 2);
    for (const auto& input :
         {single_term(occ({{1, Polarization::H}, {1, Polarization::V}})),
          single_term(two_h)}) {
        const auto stages = cascade_experiment(input, 5);
        for (const auto& stage : stages)
            worst = std::max({worst, std::abs(stage.p_split - 0.5),
                              std::abs(stage.p_bunch - 0.5),
                              std::abs(stage.bunched_fidelity - 1.0)});
    }
    report("criterion-6-cascade", worst <= 1e-10,
           "5 stages, |HV> and |2H> inputs, max error " + std::to_string(worst));
}

void criterion_7_ceiling_search() {
    const SearchSpace space = SearchSpace::desk_scale();
    const SearchResult result = search_max_success(space);
    const bool pass = std::abs(result.best_unambiguous - 0.5) <= 1e-9 &&
                      !result.ceiling_exceeded && result.wall_time_seconds < 600.0;
    report("criterion-7-ceiling-search", pass,
           std::to_string(result.circuits_evaluated) + " circuits, best unambiguous " +
               std::to_string(result.best_unambiguous) + " (expect 0.5), ceiling_exceeded " +
               (result.ceiling_exceeded ? "true" : "false") + ", " +
               std::to_string(result.wall_time_seconds) + " s");
}

void criterion_8_property_suites() {
    std::mt19937 rng(20240229);
    int oracle_cases = 0;
    double worst = 0.0;
    std::string failure;

    // Oracle equivalence of apply_unitary against the permanent formula,
    // plus norm preservation, over >= 1000 randomized cases.
    for (int trial = 0; trial < 1000; ++trial) {
        const int modes = 2 + trial % 2;
        const auto u = random_mode_unitary(modes, rng);
        const auto s = random_two_photon_state(modes, rng);
        const auto evolved = apply_unitary(s, u);
        const auto oracle = permanent_oracle_apply(s, u);
        worst = std::max(worst, state_error(evolved, oracle));
        worst = std::max(worst, std::abs(evolved.norm() - 1.0));
        ++oracle_cases;
    }
    if (worst > 1e-10) failure += " oracle/norm error " + std::to_string(worst) + ";";

    // Unitarity of every element constructor over random parameters.
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        if (!pp_bs_matrix(3, 1, 2).is_unitary() || !pnp_bs_matrix(3, 2, 3).is_unitary() ||
            !pol_rotator_matrix(3, 1, angle(rng)).is_unitary() ||
            !phase_shifter_matrix(3, 2, angle(rng)).is_unitary()) {
            failure += " element unitarity failure;";
            break;
        }
    }

    // Composition coherence: folding elementwise equals the composed matrix.
    for (int trial = 0; trial < 100; ++trial) {
        CircuitSpec spec{3, {{ElementKind::PPBS, {1, 3}, 0.0},
                             {ElementKind::PolRotator, {2}, angle(rng)},
                             {ElementKind::PNPBS, {2, 3}, 0.0},
                             {ElementKind::PhaseShifter, {3}, angle(rng)}}};
        const auto s = random_two_photon_state(3, rng);
        const double err =
            state_error(evolve_circuit(s, spec), apply_unitary(s, compose_circuit(spec)));
        if (err > 1e-10) {
            failure += " composition coherence error " + std::to_string(err) + ";";
            break;
        }
    }

    // Parallel/serial determinism of the search reduction.
    SearchSpace small;
    small.spatial_mode_count = 2;
    small.max_depth = 3;
    small.element_kinds = {ElementKind::PPBS, ElementKind::PNPBS};
    small.detector_configs = {DetectorConfig::full_resolving(2)};
    const auto serial = search_max_success(small, 1);
    const auto parallel = search_max_success(small, 4);
    if (serial.best_unambiguous != parallel.best_unambiguous ||
        serial.best_bayes != parallel.best_bayes ||
        serial.total_ties != parallel.total_ties ||
        serial.best_circuits.size() != parallel.best_circuits.size())
        failure += " parallel/serial mismatch;";

    report("criterion-8-property-suites", failure.empty(),
           failure.empty() ? std::to_string(oracle_cases) +
                                 " randomized oracle cases, max error " +
                                 std::to_string(worst)
                           : failure);
}

}  // namespace

int main() {
    criterion_1_eq2();
    criterion_2_eq3();
    criterion_3_split_bunch_table();
    criterion_4_standard_setup();
    criterion_5_confusability();
    criterion_6_cascade();
    criterion_7_ceiling_search();
    criterion_8_property_suites();
    std::printf("%s\n", failures == 0 ? "all acceptance criteria pass"
                                      : "ACCEPTANCE FAILURES PRESENT");
    return failures == 0 ? 0 : 1;
}
