#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <compare>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Two-photon bosonic Fock states over labeled polarization/spatial modes.
// Amplitude convention: the amplitude stored for an occupation vector n is
// the coefficient of the normalized ket |n> = prod_m (a^dag_m)^{n_m}/sqrt(n_m!) |0>.

namespace belldisc {

using cplx = std::complex<double>;

inline constexpr double kAmplitudeTol = 1e-12;
inline constexpr double kProbabilityTol = 1e-10;

struct InvalidInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when destructive interference wipes a state out entirely,
// e.g. the formal combination |HV>_11 - |VH>_11 = 0.
struct DegenerateStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Polarization { H, V };

inline char pol_char(Polarization p) { return p == Polarization::H ? 'H' : 'V'; }

// One optical mode: a 1-based spatial port plus a polarization.
// Ordering is spatial-major with H before V, so canonical forms are unique.
struct ModeLabel {
    int spatial = 1;
    Polarization pol = Polarization::H;

    friend auto operator<=>(const ModeLabel&, const ModeLabel&) = default;
};

// Flattened index in the canonical mode order (spatial-major, H before V).
inline int mode_index(const ModeLabel& m) {
    return 2 * (m.spatial - 1) + (m.pol == Polarization::V ? 1 : 0);
}

inline ModeLabel mode_from_index(int idx) {
    return ModeLabel{idx / 2 + 1, (idx % 2) ? Polarization::V : Polarization::H};
}

// Photon counts per mode, zero entries absent. This is the exponent vector
// of a normal-ordered creation monomial; operator ordering cannot be
// represented, which is exactly the bosonic symmetry.
class OccupationVector {
public:
    OccupationVector() = default;

    // Build from one label per photon (repeats allowed).
    static OccupationVector from_photons(std::initializer_list<ModeLabel> photons) {
        return from_photons(std::vector<ModeLabel>(photons));
    }

    static OccupationVector from_photons(const std::vector<ModeLabel>& photons) {
        OccupationVector occ;
        for (const auto& m : photons) occ.add(m, 1);
        return occ;
    }

    void add(const ModeLabel& m, int count) {
        if (count < 0) throw InvalidInputError("negative photon count");
        if (count == 0) return;
        auto it = std::lower_bound(
            counts_.begin(), counts_.end(), m,
            [](const auto& entry, const ModeLabel& key) { return entry.first < key; });
        if (it != counts_.end() && it->first == m)
            it->second += count;
        else
            counts_.insert(it, {m, count});
    }

    int count(const ModeLabel& m) const {
        for (const auto& [label, n] : counts_)
            if (label == m) return n;
        return 0;
    }

    int total() const {
        int t = 0;
        for (const auto& [label, n] : counts_) t += n;
        return t;
    }

    // prod_m n_m!
    double factorial_product() const {
        double f = 1.0;
        for (const auto& [label, n] : counts_)
            for (int k = 2; k <= n; ++k) f *= k;
        return f;
    }

    int max_spatial() const {
        int m = 0;
        for (const auto& [label, n] : counts_) m = std::max(m, label.spatial);
        return m;
    }

    // One entry per photon, in canonical order.
    std::vector<ModeLabel> photon_list() const {
        std::vector<ModeLabel> out;
        for (const auto& [label, n] : counts_)
            for (int k = 0; k < n; ++k) out.push_back(label);
        return out;
    }

    const std::vector<std::pair<ModeLabel, int>>& entries() const { return counts_; }

    std::string str() const {
        std::string s;
        for (const auto& [label, n] : counts_) {
            if (!s.empty()) s += ',';
            if (n > 1) s += std::to_string(n);
            s += std::to_string(label.spatial);
            s += pol_char(label.pol);
        }
        return "|" + s + ">";
    }

    friend auto operator<=>(const OccupationVector&, const OccupationVector&) = default;

private:
    std::vector<std::pair<ModeLabel, int>> counts_;  // sorted, no zero entries
};

// Pure state of a fixed total photon number: sparse complex amplitudes over
// occupation vectors. Immutable after construction apart from builder helpers.
class PhotonicState {
public:
    using TermMap = std::map<OccupationVector, cplx>;

    explicit PhotonicState(int photon_number) : photon_number_(photon_number) {
        if (photon_number <= 0) throw InvalidInputError("photon number must be positive");
    }

    PhotonicState(int photon_number, TermMap terms)
        : photon_number_(photon_number), terms_(std::move(terms)) {
        if (photon_number <= 0) throw InvalidInputError("photon number must be positive");
        for (const auto& [occ, amp] : terms_)
            if (occ.total() != photon_number_)
                throw InvalidInputError("occupation vector " + occ.str() +
                                        " does not match photon number " +
                                        std::to_string(photon_number_));
        prune();
    }

    int photon_number() const { return photon_number_; }
    const TermMap& terms() const { return terms_; }

    cplx amplitude(const OccupationVector& occ) const {
        auto it = terms_.find(occ);
        return it == terms_.end() ? cplx{0.0, 0.0} : it->second;
    }

    double norm_squared() const {
        double n2 = 0.0;
        for (const auto& [occ, amp] : terms_) n2 += std::norm(amp);
        return n2;
    }

    double norm() const { return std::sqrt(norm_squared()); }

    int max_spatial() const {
        int m = 0;
        for (const auto& [occ, amp] : terms_) m = std::max(m, occ.max_spatial());
        return m;
    }

    PhotonicState normalized() const {
        const double n = norm();
        if (n < kAmplitudeTol)
            throw DegenerateStateError("cannot normalize a zero state");
        PhotonicState out(photon_number_);
        for (const auto& [occ, amp] : terms_) out.terms_[occ] = amp / n;
        out.prune();
        return out;
    }

    PhotonicState scaled(cplx factor) const {
        PhotonicState out(photon_number_);
        for (const auto& [occ, amp] : terms_) out.terms_[occ] = amp * factor;
        out.prune();
        return out;
    }

    friend PhotonicState operator+(const PhotonicState& a, const PhotonicState& b) {
        if (a.photon_number_ != b.photon_number_)
            throw InvalidInputError("photon number mismatch in state sum");
        PhotonicState out(a.photon_number_);
        out.terms_ = a.terms_;
        for (const auto& [occ, amp] : b.terms_) out.terms_[occ] += amp;
        out.prune();
        return out;
    }

    friend PhotonicState operator*(cplx factor, const PhotonicState& s) {
        return s.scaled(factor);
    }

    bool approx_equal(const PhotonicState& other, double tol = kAmplitudeTol) const {
        if (photon_number_ != other.photon_number_) return false;
        auto check = [tol](const PhotonicState& x, const PhotonicState& y) {
            for (const auto& [occ, amp] : x.terms_)
                if (std::abs(amp - y.amplitude(occ)) > tol) return false;
            return true;
        };
        return check(*this, other) && check(other, *this);
    }

    std::string str() const {
        std::string s;
        for (const auto& [occ, amp] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + std::to_string(amp.real()) + (amp.imag() < 0 ? "" : "+") +
                 std::to_string(amp.imag()) + "i)" + occ.str();
        }
        return s.empty() ? "0" : s;
    }

private:
    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = (std::abs(it->second) < kAmplitudeTol) ? terms_.erase(it) : std::next(it);
    }

    int photon_number_;
    TermMap terms_;
};

enum class BellKind { PsiMinus, PsiPlus, PhiMinus, PhiPlus };

inline constexpr BellKind kAllBellKinds[] = {BellKind::PsiMinus, BellKind::PsiPlus,
                                             BellKind::PhiMinus, BellKind::PhiPlus};

inline const char* bell_name(BellKind k) {
    switch (k) {
        case BellKind::PsiMinus: return "psi-";
        case BellKind::PsiPlus: return "psi+";
        case BellKind::PhiMinus: return "phi-";
        case BellKind::PhiPlus: return "phi+";
    }
    return "?";
}

// Standard two-photon polarization Bell states on two distinct spatial modes:
//   Psi+- = (|H>_a|V>_b +- |V>_a|H>_b)/sqrt(2)
//   Phi+- = (|H>_a|H>_b +- |V>_a|V>_b)/sqrt(2)
inline PhotonicState bell_state(BellKind kind, int spatial_a, int spatial_b) {
    if (spatial_a == spatial_b)
        throw InvalidInputError("bell_state requires two distinct spatial modes");
    const ModeLabel aH{spatial_a, Polarization::H}, aV{spatial_a, Polarization::V};
    const ModeLabel bH{spatial_b, Polarization::H}, bV{spatial_b, Polarization::V};
    const double r = 1.0 / std::sqrt(2.0);
    PhotonicState::TermMap terms;
    switch (kind) {
        case BellKind::PsiMinus:
            terms[OccupationVector::from_photons({aH, bV})] = r;
            terms[OccupationVector::from_photons({aV, bH})] = -r;
            break;
        case BellKind::PsiPlus:
            terms[OccupationVector::from_photons({aH, bV})] = r;
            terms[OccupationVector::from_photons({aV, bH})] = r;
            break;
        case BellKind::PhiMinus:
            terms[OccupationVector::from_photons({aH, bH})] = r;
            terms[OccupationVector::from_photons({aV, bV})] = -r;
            break;
        case BellKind::PhiPlus:
            terms[OccupationVector::from_photons({aH, bH})] = r;
            terms[OccupationVector::from_photons({aV, bV})] = r;
            break;
    }
    return PhotonicState(2, std::move(terms));
}

// <a|b> in the orthonormal Fock basis; conjugate-linear in the first argument.
inline cplx inner_product(const PhotonicState& a, const PhotonicState& b) {
    if (a.photon_number() != b.photon_number())
        throw InvalidInputError("inner_product: photon number mismatch");
    cplx acc{0.0, 0.0};
    for (const auto& [occ, amp] : a.terms())
        acc += std::conj(amp) * b.amplitude(occ);
    return acc;
}

inline PhotonicState normalize(const PhotonicState& s) { return s.normalized(); }

}  // namespace belldisc
