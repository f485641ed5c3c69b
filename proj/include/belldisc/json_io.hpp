#pragma once

#include <string>

#include <json.hpp>

#include "belldisc/search.hpp"

// JSON schemas for circuits, search spaces and reports.
// Complex numbers serialize as [re, im] pairs; angles are radians.

namespace belldisc {

using json = nlohmann::json;

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw InvalidInputError("complex number must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline ElementKind element_kind_from_name(const std::string& name) {
    if (name == "ppbs") return ElementKind::PPBS;
    if (name == "pnpbs") return ElementKind::PNPBS;
    if (name == "rotator") return ElementKind::PolRotator;
    if (name == "phase") return ElementKind::PhaseShifter;
    throw InvalidInputError("unknown element kind \"" + name + "\"");
}

inline json to_json(const ElementSpec& e) {
    json j;
    j["kind"] = element_kind_name(e.kind);
    j["ports"] = e.ports;
    if (e.kind == ElementKind::PolRotator || e.kind == ElementKind::PhaseShifter)
        j["angle"] = e.angle;
    return j;
}

inline ElementSpec element_from_json(const json& j) {
    ElementSpec e;
    e.kind = element_kind_from_name(j.at("kind").get<std::string>());
    e.ports = j.at("ports").get<std::vector<int>>();
    e.angle = j.value("angle", 0.0);
    return e;
}

inline json to_json(const CircuitSpec& spec) {
    json elements = json::array();
    for (const auto& e : spec.elements) elements.push_back(to_json(e));
    return json{{"modes", spec.spatial_mode_count}, {"elements", elements}};
}

inline CircuitSpec circuit_from_json(const json& j) {
    CircuitSpec spec;
    spec.spatial_mode_count = j.at("modes").get<int>();
    for (const auto& je : j.at("elements")) spec.elements.push_back(element_from_json(je));
    spec.validate();
    return spec;
}

inline json to_json(const DetectorConfig& cfg) {
    return json{{"polarization_resolving", cfg.polarization_resolving},
                {"number_resolving", cfg.number_resolving},
                {"monitored_modes", cfg.monitored_spatial_modes}};
}

inline DetectorConfig detector_from_json(const json& j) {
    DetectorConfig cfg;
    cfg.polarization_resolving = j.value("polarization_resolving", true);
    cfg.number_resolving = j.value("number_resolving", true);
    for (int m : j.at("monitored_modes").get<std::vector<int>>())
        cfg.monitored_spatial_modes.insert(m);
    return cfg;
}

inline json to_json(const PhotonicState& s) {
    json terms = json::array();
    for (const auto& [occ, amp] : s.terms()) {
        json occ_j = json::array();
        for (const auto& [label, n] : occ.entries())
            occ_j.push_back(json{{"mode", label.spatial},
                                 {"pol", std::string(1, pol_char(label.pol))},
                                 {"count", n}});
        terms.push_back(json{{"occupation", occ_j}, {"amplitude", to_json(amp)}});
    }
    return json{{"photon_number", s.photon_number()}, {"terms", terms}};
}

inline PhotonicState state_from_json(const json& j) {
    PhotonicState::TermMap terms;
    for (const auto& jt : j.at("terms")) {
        OccupationVector occ;
        for (const auto& jo : jt.at("occupation")) {
            const std::string p = jo.at("pol").get<std::string>();
            if (p != "H" && p != "V")
                throw InvalidInputError("polarization must be \"H\" or \"V\"");
            occ.add(ModeLabel{jo.at("mode").get<int>(),
                              p == "H" ? Polarization::H : Polarization::V},
                    jo.value("count", 1));
        }
        terms[occ] = complex_from_json(jt.at("amplitude"));
    }
    return PhotonicState(j.at("photon_number").get<int>(), std::move(terms));
}

inline json to_json(const DetectionEvent& ev) {
    json channels = json::array();
    for (const auto& [ch, n] : ev.counts) {
        json jc{{"mode", ch.spatial}, {"count", n}};
        if (ch.pol >= 0) jc["pol"] = std::string(1, ch.pol == 0 ? 'H' : 'V');
        channels.push_back(jc);
    }
    return channels;
}

inline json to_json(const OutcomeDistribution& dist) {
    json out = json::array();
    for (const auto& [ev, p] : dist)
        out.push_back(json{{"event", to_json(ev)}, {"probability", p}});
    return out;
}

// Conventions block embedded in every report so results are interpretable
// standalone.
inline json conventions_json() {
    return json{
        {"bell_phases",
         "psi+- = (|H>_a|V>_b +- |V>_a|H>_b)/sqrt2; phi+- = (|H>_a|H>_b +- |V>_a|V>_b)/sqrt2"},
        {"pp_bs", "a_i -> (b_i - b_j)/sqrt2, a_j -> (b_i + b_j)/sqrt2, both polarizations"},
        {"pnp_bs",
         "H-block as PP; V-block a_i -> (b_i + b_j)/sqrt2, a_j -> (-b_i + b_j)/sqrt2, "
         "calibrated so the PP-PNP Mach-Zehnder splits bunched |HV> as -|2H,1V>"},
        {"amplitudes", "complex numbers serialized as [re, im]; angles in radians"},
    };
}

inline json to_json(const DiscriminationReport& report) {
    json conditioned;
    for (int k = 0; k < 4; ++k)
        conditioned[bell_name(kAllBellKinds[k])] = to_json(report.conditioned[k]);
    json pairs = json::array();
    for (const auto& p : report.confusable_pairs)
        pairs.push_back(json{{"a", bell_name(p.a)},
                             {"b", bell_name(p.b)},
                             {"total_variation", p.total_variation}});
    return json{{"conditioned", conditioned},
                {"bayes_success", report.bayes_success},
                {"unambiguous_success", report.unambiguous_success},
                {"confusable_pairs", pairs},
                {"conventions", conventions_json()}};
}

inline json to_json(const SearchSpace& space) {
    json kinds = json::array();
    for (ElementKind k : space.element_kinds) kinds.push_back(element_kind_name(k));
    json detectors = json::array();
    for (const auto& cfg : space.detector_configs) detectors.push_back(to_json(cfg));
    return json{{"modes", space.spatial_mode_count},
                {"max_depth", space.max_depth},
                {"kinds", kinds},
                {"angles", space.angle_set},
                {"detectors", detectors}};
}

inline SearchSpace search_space_from_json(const json& j) {
    SearchSpace space;
    space.spatial_mode_count = j.at("modes").get<int>();
    space.max_depth = j.at("max_depth").get<int>();
    space.element_kinds.clear();
    for (const auto& jk : j.at("kinds"))
        space.element_kinds.push_back(element_kind_from_name(jk.get<std::string>()));
    space.angle_set = j.value("angles", std::vector<double>{});
    space.detector_configs.clear();
    if (j.contains("detectors"))
        for (const auto& jd : j["detectors"])
            space.detector_configs.push_back(detector_from_json(jd));
    else
        space.detector_configs = {DetectorConfig::full_resolving(space.spatial_mode_count)};
    space.validate();
    return space;
}

inline json to_json(const SearchResult& result, const SearchSpace& space) {
    json hits = json::array();
    for (const auto& hit : result.best_circuits)
        hits.push_back(json{{"circuit_index", hit.circuit_index},
                            {"detector_index", hit.detector_index},
                            {"unambiguous", hit.unambiguous},
                            {"bayes", hit.bayes},
                            {"circuit", to_json(hit.circuit)}});
    return json{{"space", to_json(space)},
                {"best_unambiguous", result.best_unambiguous},
                {"best_bayes", result.best_bayes},
                {"best_circuits", hits},
                {"total_ties", result.total_ties},
                {"circuits_evaluated", result.circuits_evaluated},
                {"wall_time_seconds", result.wall_time_seconds},
                {"ceiling_exceeded", result.ceiling_exceeded},
                {"empty_family", result.empty_family},
                {"conventions", conventions_json()}};
}

inline json to_json(const std::vector<CascadeStage>& stages) {
    json out = json::array();
    int k = 1;
    for (const auto& s : stages)
        out.push_back(json{{"stage", k++},
                           {"p_split", s.p_split},
                           {"p_bunch", s.p_bunch},
                           {"bunched_fidelity", s.bunched_fidelity}});
    return out;
}

}  // namespace belldisc
