#pragma once

#include <cmath>
#include <vector>

#include "belldisc/elements.hpp"
#include "belldisc/fock.hpp"

// Applies a mode unitary to a photonic state by creation-operator
// substitution: each basis ket is written as prod (a^dag)^n / sqrt(n!) |0>,
// every a^dag_in is replaced by sum_out U[out][in] b^dag_out, the product is
// expanded, like monomials are collected and the result is converted back
// through the sqrt(n!) normalization.

namespace belldisc {

namespace detail {

// Expands the product of one substituted operator per photon, accumulating
// monomial coefficients into `out`.
inline void expand_photons(const ModeUnitary& u, const std::vector<ModeLabel>& photons,
                           std::size_t next, cplx coeff, OccupationVector& partial,
                           PhotonicState::TermMap& out) {
    if (next == photons.size()) {
        out[partial] += coeff;
        return;
    }
    const int in = mode_index(photons[next]);
    for (int o = 0; o < u.dim(); ++o) {
        const cplx w = u.at(o, in);
        if (std::abs(w) < kAmplitudeTol) continue;
        OccupationVector extended = partial;
        extended.add(mode_from_index(o), 1);
        expand_photons(u, photons, next + 1, coeff * w, extended, out);
    }
}

}  // namespace detail

inline PhotonicState apply_unitary(const PhotonicState& state, const ModeUnitary& u) {
    if (state.max_spatial() > u.spatial_modes())
        throw InvalidInputError("state occupies modes outside the unitary's mode set");
    if (!u.is_unitary(1e-9))
        throw InvalidInputError("apply_unitary requires a unitary mode matrix");

    PhotonicState::TermMap monomials;  // keyed by output occupation, operator coefficients
    for (const auto& [occ, amp] : state.terms()) {
        const cplx op_coeff = amp / std::sqrt(occ.factorial_product());
        OccupationVector empty;
        detail::expand_photons(u, occ.photon_list(), 0, op_coeff, empty, monomials);
    }

    PhotonicState::TermMap kets;
    for (const auto& [occ, coeff] : monomials) {
        const cplx amp = coeff * std::sqrt(occ.factorial_product());
        if (std::abs(amp) >= kAmplitudeTol) kets[occ] = amp;
    }
    return PhotonicState(state.photon_number(), std::move(kets));
}

inline PhotonicState evolve_circuit(const PhotonicState& state, const CircuitSpec& spec,
                                    bool flip_pnp_vblock = false) {
    spec.validate();
    if (state.max_spatial() > spec.spatial_mode_count)
        throw InvalidInputError("state occupies modes outside the circuit");
    PhotonicState current = state;
    for (const auto& e : spec.elements)
        current = apply_unitary(current, element_matrix(spec.spatial_mode_count, e,
                                                        flip_pnp_vblock));
    return current;
}

}  // namespace belldisc
