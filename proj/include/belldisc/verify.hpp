#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "belldisc/discrimination.hpp"
#include "belldisc/search.hpp"

// Fixed suite of operator-identity and probability claims about the two
// beam-splitter types, their Mach-Zehnder composites, the split/bunch table,
// the beam-splitter cascade and the 50% standard-setup ceiling.

namespace belldisc {

struct ClaimResult {
    std::string name;
    std::string detail;
    bool pass = false;
};

struct VerifyOptions {
    // Regression hook: run the suite against the uncalibrated PNP V-block
    // signs. The Mach-Zehnder split claim must then fail.
    bool flip_pnp_vblock = false;
};

namespace detail {

inline PhotonicState bunched_hv(int spatial) {
    PhotonicState::TermMap t;
    t[OccupationVector::from_photons({ModeLabel{spatial, Polarization::H},
                                      ModeLabel{spatial, Polarization::V}})] = 1.0;
    return PhotonicState(2, std::move(t));
}

inline PhotonicState bunched_pair(int spatial, Polarization pol) {
    PhotonicState::TermMap t;
    OccupationVector occ;
    occ.add(ModeLabel{spatial, pol}, 2);
    t[occ] = 1.0;
    return PhotonicState(2, std::move(t));
}

// (|2H at s> + sign * |2V at s>)/sqrt2
inline PhotonicState squared_superposition(int spatial_h, int spatial_v, double sign) {
    const double r = 1.0 / std::sqrt(2.0);
    PhotonicState::TermMap t;
    OccupationVector h, v;
    h.add(ModeLabel{spatial_h, Polarization::H}, 2);
    v.add(ModeLabel{spatial_v, Polarization::V}, 2);
    t[h] = r;
    t[v] = sign * r;
    return PhotonicState(2, std::move(t));
}

inline std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

}  // namespace detail

inline ClaimResult claim_bs_unitarity() {
    const double d1 = pp_bs_matrix(2, 1, 2).unitarity_defect();
    const double d2 = pnp_bs_matrix(2, 1, 2).unitarity_defect();
    ClaimResult r;
    r.name = "beam-splitter-unitarity";
    r.pass = d1 <= kAmplitudeTol && d2 <= kAmplitudeTol;
    r.detail = "max |U^dag U - I| = " + detail::fmt(std::max(d1, d2)) +
               " (expected <= 1e-12)";
    return r;
}

inline ClaimResult claim_split_bunch_table(bool flip_pnp_vblock) {
    const DetectorConfig cfg = DetectorConfig::full_resolving(2);
    bool ok = true;
    std::string notes;
    for (bool pnp : {false, true}) {
        const ModeUnitary bs =
            pnp ? pnp_bs_matrix(2, 1, 2, flip_pnp_vblock) : pp_bs_matrix(2, 1, 2);
        const BellKind splitter = pnp ? BellKind::PsiPlus : BellKind::PsiMinus;
        for (BellKind kind : kAllBellKinds) {
            const PhotonicState out = apply_unitary(bell_state(kind, 1, 2), bs);
            const OutcomeDistribution dist = outcome_distribution(out, cfg);
            const double p_split = split_probability(dist);
            const double want_split = (kind == splitter) ? 1.0 : 0.0;
            if (std::abs(p_split - want_split) > kProbabilityTol) {
                ok = false;
                notes += std::string(pnp ? " PNP " : " PP ") + bell_name(kind) +
                         " P(split)=" + detail::fmt(p_split) +
                         " expected " + detail::fmt(want_split) + ";";
            }
            // Bunched Psi states must carry exactly one H and one V.
            if ((kind == BellKind::PsiPlus || kind == BellKind::PsiMinus) &&
                kind != splitter) {
                for (const auto& [occ, amp] : out.terms()) {
                    int h = 0, v = 0;
                    for (const auto& [label, n] : occ.entries())
                        (label.pol == Polarization::H ? h : v) += n;
                    if (h != 1 || v != 1) {
                        ok = false;
                        notes += std::string(" bunched ") + bell_name(kind) +
                                 " term " + occ.str() + " is not |HV>;";
                    }
                }
            }
        }
    }
    ClaimResult r;
    r.name = "split-bunch-table";
    r.pass = ok;
    r.detail = ok ? "psi- splits at PP, psi+ splits at PNP, others bunch; "
                    "bunched psi states are |HV>"
                  : notes;
    return r;
}

inline ClaimResult claim_pp_pp_mz(bool flip_pnp_vblock) {
    (void)flip_pnp_vblock;  // PP-only composite
    CircuitSpec mz{2, {{ElementKind::PPBS, {1, 2}, 0.0},
                       {ElementKind::PPBS, {1, 2}, 0.0}}};
    double worst = 0.0;
    {
        const PhotonicState out = evolve_circuit(detail::bunched_hv(1), mz);
        worst = std::max(worst, [&] {
            PhotonicState expect = detail::bunched_hv(2);
            return std::abs(inner_product(expect, out) - cplx{1.0, 0.0});
        }());
        worst = std::max(worst, std::abs(out.norm() - 1.0));
    }
    for (double sign : {-1.0, +1.0}) {
        const PhotonicState in = detail::squared_superposition(1, 1, sign);
        const PhotonicState expect = detail::squared_superposition(2, 2, sign);
        const PhotonicState out = evolve_circuit(in, mz);
        worst = std::max(worst, std::abs(inner_product(expect, out) - cplx{1.0, 0.0}));
    }
    ClaimResult r;
    r.name = "pp-pp-mz-rebunch";
    r.pass = worst <= kAmplitudeTol;
    r.detail = "bunched inputs re-bunch in mode 2; max amplitude error " +
               detail::fmt(worst);
    return r;
}

inline ClaimResult claim_pp_pnp_mz(bool flip_pnp_vblock) {
    CircuitSpec mz{2, {{ElementKind::PPBS, {1, 2}, 0.0},
                       {ElementKind::PNPBS, {1, 2}, 0.0}}};
    double worst = 0.0;
    {
        // a^dag_1H a^dag_1V -> -c^dag_2H c^dag_1V
        const PhotonicState out = evolve_circuit(detail::bunched_hv(1), mz, flip_pnp_vblock);
        PhotonicState::TermMap t;
        t[OccupationVector::from_photons({ModeLabel{2, Polarization::H},
                                          ModeLabel{1, Polarization::V}})] = -1.0;
        const PhotonicState expect(2, std::move(t));
        worst = std::max(worst, std::abs(inner_product(expect, out) - cplx{1.0, 0.0}));
    }
    for (double sign : {-1.0, +1.0}) {
        // (a^dag2_1H + sign a^dag2_1V)/2 -> (c^dag2_2H + sign c^dag2_1V)/2
        const PhotonicState in = detail::squared_superposition(1, 1, sign);
        const PhotonicState expect = detail::squared_superposition(2, 1, sign);
        const PhotonicState out = evolve_circuit(in, mz, flip_pnp_vblock);
        worst = std::max(worst, std::abs(inner_product(expect, out) - cplx{1.0, 0.0}));
    }
    ClaimResult r;
    r.name = "pp-pnp-mz-split";
    r.pass = worst <= kAmplitudeTol;
    r.detail = "bunched inputs split, H to mode 2 and V to mode 1; "
               "max amplitude error " + detail::fmt(worst);
    return r;
}

inline ClaimResult claim_cascade() {
    bool ok = true;
    double worst = 0.0;
    for (const PhotonicState& input :
         {detail::bunched_hv(1), detail::bunched_pair(1, Polarization::H)}) {
        for (const auto& stage : cascade_experiment(input, 5)) {
            worst = std::max({worst, std::abs(stage.p_split - 0.5),
                              std::abs(stage.p_bunch - 0.5),
                              std::abs(stage.bunched_fidelity - 1.0)});
        }
    }
    ok = worst <= kProbabilityTol;
    ClaimResult r;
    r.name = "cascade-no-progress";
    r.pass = ok;
    r.detail = "every stage: P(split)=P(bunch)=1/2, bunched branch keeps the "
               "input polarization content; max error " + detail::fmt(worst);
    return r;
}

inline ClaimResult claim_standard_setup() {
    CircuitSpec single{2, {{ElementKind::PPBS, {1, 2}, 0.0}}};
    const auto conditioned =
        conditioned_distributions(single, DetectorConfig::full_resolving(2));
    const double u = unambiguous_success(conditioned);
    const double b = bayes_success(conditioned);
    double tv_phi = -1.0;
    for (const auto& p : confusability(conditioned))
        if (p.a == BellKind::PhiMinus && p.b == BellKind::PhiPlus)
            tv_phi = p.total_variation;
    ClaimResult r;
    r.name = "standard-setup-50-percent";
    r.pass = std::abs(u - 0.5) <= kProbabilityTol &&
             std::abs(b - 0.75) <= kProbabilityTol && std::abs(tv_phi) <= kProbabilityTol;
    r.detail = "single PP BS: unambiguous=" + detail::fmt(u) + " (expect 0.5), bayes=" +
               detail::fmt(b) + " (expect 0.75), TV(phi+,phi-)=" + detail::fmt(tv_phi) +
               " (expect 0)";
    return r;
}

inline std::vector<ClaimResult> verify_all(const VerifyOptions& opts = {}) {
    return {
        claim_bs_unitarity(),
        claim_split_bunch_table(opts.flip_pnp_vblock),
        claim_pp_pp_mz(opts.flip_pnp_vblock),
        claim_pp_pnp_mz(opts.flip_pnp_vblock),
        claim_cascade(),
        claim_standard_setup(),
    };
}

}  // namespace belldisc
