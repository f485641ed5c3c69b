#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "belldisc/fock.hpp"

// Mode matrices for the optical elements and their composition into circuits.
//
// A ModeUnitary stores the creation-operator substitution table of an element:
//   a^dag_in = sum_out U[out][in] b^dag_out
// where `in` labels the element's input modes and `out` its output modes.

namespace belldisc {

class ModeUnitary {
public:
    explicit ModeUnitary(int spatial_modes)
        : spatial_modes_(spatial_modes), dim_(2 * spatial_modes),
          data_(static_cast<std::size_t>(dim_) * dim_, cplx{0.0, 0.0}) {
        if (spatial_modes <= 0) throw InvalidInputError("mode count must be positive");
        for (int k = 0; k < dim_; ++k) at(k, k) = 1.0;
    }

    int spatial_modes() const { return spatial_modes_; }
    int dim() const { return dim_; }

    cplx& at(int out, int in) { return data_[static_cast<std::size_t>(out) * dim_ + in]; }
    const cplx& at(int out, int in) const {
        return data_[static_cast<std::size_t>(out) * dim_ + in];
    }

    cplx& at(const ModeLabel& out, const ModeLabel& in) {
        return at(mode_index(out), mode_index(in));
    }
    const cplx& at(const ModeLabel& out, const ModeLabel& in) const {
        return at(mode_index(out), mode_index(in));
    }

    // max |(U^dag U - I)_{jk}|
    double unitarity_defect() const {
        double worst = 0.0;
        for (int j = 0; j < dim_; ++j) {
            for (int k = 0; k < dim_; ++k) {
                cplx acc{0.0, 0.0};
                for (int m = 0; m < dim_; ++m)
                    acc += std::conj(at(m, j)) * at(m, k);
                if (j == k) acc -= 1.0;
                worst = std::max(worst, std::abs(acc));
            }
        }
        return worst;
    }

    bool is_unitary(double tol = kAmplitudeTol) const { return unitarity_defect() <= tol; }

    // (this * rhs): substitution for "rhs applied first, then this".
    ModeUnitary then_after(const ModeUnitary& rhs) const {
        if (spatial_modes_ != rhs.spatial_modes_)
            throw InvalidInputError("mode count mismatch in composition");
        ModeUnitary out(spatial_modes_);
        for (int o = 0; o < dim_; ++o) {
            for (int i = 0; i < dim_; ++i) {
                cplx acc{0.0, 0.0};
                for (int m = 0; m < dim_; ++m) acc += at(o, m) * rhs.at(m, i);
                out.at(o, i) = acc;
            }
        }
        return out;
    }

private:
    int spatial_modes_;
    int dim_;
    std::vector<cplx> data_;  // row-major, data[out*dim + in]
};

enum class ElementKind { PPBS, PNPBS, PolRotator, PhaseShifter };

inline const char* element_kind_name(ElementKind k) {
    switch (k) {
        case ElementKind::PPBS: return "ppbs";
        case ElementKind::PNPBS: return "pnpbs";
        case ElementKind::PolRotator: return "rotator";
        case ElementKind::PhaseShifter: return "phase";
    }
    return "?";
}

struct ElementSpec {
    ElementKind kind = ElementKind::PPBS;
    std::vector<int> ports;  // two distinct ports for BS kinds, one otherwise
    double angle = 0.0;      // radians; rotator/phase only

    void validate(int spatial_mode_count) const {
        const bool two_port = kind == ElementKind::PPBS || kind == ElementKind::PNPBS;
        if (two_port) {
            if (ports.size() != 2 || ports[0] == ports[1])
                throw InvalidInputError("beam splitter needs two distinct ports");
        } else {
            if (ports.size() != 1)
                throw InvalidInputError("single-mode element needs exactly one port");
        }
        for (int p : ports)
            if (p < 1 || p > spatial_mode_count)
                throw InvalidInputError("port " + std::to_string(p) +
                                        " outside declared mode count " +
                                        std::to_string(spatial_mode_count));
        if (!std::isfinite(angle)) throw InvalidInputError("element angle must be finite");
    }
};

struct CircuitSpec {
    int spatial_mode_count = 2;
    std::vector<ElementSpec> elements;  // application order, first element acts first

    void validate() const {
        if (spatial_mode_count < 1)
            throw InvalidInputError("circuit needs at least one spatial mode");
        for (std::size_t k = 0; k < elements.size(); ++k) {
            try {
                elements[k].validate(spatial_mode_count);
            } catch (const InvalidInputError& e) {
                throw InvalidInputError("element " + std::to_string(k) + ": " + e.what());
            }
        }
    }
};

// Polarization-preserving beam splitter (upper-sign convention), both
// polarizations p:
//   a^dag_{i,p} -> (b^dag_{i,p} - b^dag_{j,p})/sqrt(2)
//   a^dag_{j,p} -> (b^dag_{i,p} + b^dag_{j,p})/sqrt(2)
inline ModeUnitary pp_bs_matrix(int spatial_modes, int port_i, int port_j) {
    if (port_i == port_j) throw InvalidInputError("beam splitter ports must differ");
    if (port_i < 1 || port_j < 1 || port_i > spatial_modes || port_j > spatial_modes)
        throw InvalidInputError("beam splitter port outside mode count");
    ModeUnitary u(spatial_modes);
    const double r = 1.0 / std::sqrt(2.0);
    for (Polarization p : {Polarization::H, Polarization::V}) {
        const ModeLabel i{port_i, p}, j{port_j, p};
        u.at(i, i) = r;
        u.at(j, i) = -r;
        u.at(i, j) = r;
        u.at(j, j) = r;
    }
    return u;
}

// Polarization-non-preserving beam splitter. H-block identical to the PP case;
// V-block:
//   a^dag_{i,V} -> (b^dag_{i,V} + b^dag_{j,V})/sqrt(2)
//   a^dag_{j,V} -> (-b^dag_{i,V} + b^dag_{j,V})/sqrt(2)
// This V-block sign placement is calibrated so that a PP-then-PNP
// Mach-Zehnder maps a^dag_{1H} a^dag_{1V} |0> to -c^dag_{2H} c^dag_{1V} |0>
// and a single PNP BS splits Psi+ while bunching Psi- as |HV>.
// `flip_vblock_sign` swaps the V-block signs to the uncalibrated reading; it
// exists only as a regression hook for the calibration tests.
inline ModeUnitary pnp_bs_matrix(int spatial_modes, int port_i, int port_j,
                                 bool flip_vblock_sign = false) {
    if (port_i == port_j) throw InvalidInputError("beam splitter ports must differ");
    if (port_i < 1 || port_j < 1 || port_i > spatial_modes || port_j > spatial_modes)
        throw InvalidInputError("beam splitter port outside mode count");
    ModeUnitary u(spatial_modes);
    const double r = 1.0 / std::sqrt(2.0);
    const ModeLabel iH{port_i, Polarization::H}, jH{port_j, Polarization::H};
    u.at(iH, iH) = r;
    u.at(jH, iH) = -r;
    u.at(iH, jH) = r;
    u.at(jH, jH) = r;
    const ModeLabel iV{port_i, Polarization::V}, jV{port_j, Polarization::V};
    const double s = flip_vblock_sign ? -1.0 : 1.0;
    u.at(iV, iV) = r;
    u.at(jV, iV) = r;
    u.at(iV, jV) = -s * r;
    u.at(jV, jV) = s * r;
    return u;
}

// Real rotation by `angle` in the (H,V) plane of one spatial mode:
//   H -> cos t * H + sin t * V,  V -> -sin t * H + cos t * V
inline ModeUnitary pol_rotator_matrix(int spatial_modes, int port, double angle) {
    if (port < 1 || port > spatial_modes)
        throw InvalidInputError("rotator port outside mode count");
    if (!std::isfinite(angle)) throw InvalidInputError("angle must be finite");
    ModeUnitary u(spatial_modes);
    const ModeLabel h{port, Polarization::H}, v{port, Polarization::V};
    const double c = std::cos(angle), s = std::sin(angle);
    u.at(h, h) = c;
    u.at(v, h) = s;
    u.at(h, v) = -s;
    u.at(v, v) = c;
    return u;
}

// Multiplies both polarization amplitudes of `port` by e^{i angle}.
inline ModeUnitary phase_shifter_matrix(int spatial_modes, int port, double angle) {
    if (port < 1 || port > spatial_modes)
        throw InvalidInputError("phase shifter port outside mode count");
    if (!std::isfinite(angle)) throw InvalidInputError("angle must be finite");
    ModeUnitary u(spatial_modes);
    const cplx phase = std::exp(cplx{0.0, angle});
    u.at(ModeLabel{port, Polarization::H}, ModeLabel{port, Polarization::H}) = phase;
    u.at(ModeLabel{port, Polarization::V}, ModeLabel{port, Polarization::V}) = phase;
    return u;
}

inline ModeUnitary element_matrix(int spatial_modes, const ElementSpec& e,
                                  bool flip_pnp_vblock = false) {
    e.validate(spatial_modes);
    switch (e.kind) {
        case ElementKind::PPBS:
            return pp_bs_matrix(spatial_modes, e.ports[0], e.ports[1]);
        case ElementKind::PNPBS:
            return pnp_bs_matrix(spatial_modes, e.ports[0], e.ports[1], flip_pnp_vblock);
        case ElementKind::PolRotator:
            return pol_rotator_matrix(spatial_modes, e.ports[0], e.angle);
        case ElementKind::PhaseShifter:
            return phase_shifter_matrix(spatial_modes, e.ports[0], e.angle);
    }
    throw InvalidInputError("unknown element kind");
}

// Product of embedded element matrices in application order; the empty
// circuit composes to the identity.
inline ModeUnitary compose_circuit(const CircuitSpec& spec, bool flip_pnp_vblock = false) {
    spec.validate();
    ModeUnitary acc(spec.spatial_mode_count);
    for (const auto& e : spec.elements)
        acc = element_matrix(spec.spatial_mode_count, e, flip_pnp_vblock).then_after(acc);
    return acc;
}

}  // namespace belldisc
