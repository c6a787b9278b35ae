// config.hpp — JSON run configuration: model parameters, initial state,
// evolution grid, and optional sweep section.

#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jcm/core.hpp"
#include "jcm/dynamics.hpp"
#include "jcm/effective.hpp"
#include "jcm/model.hpp"

namespace jcm {

struct EvolutionConfig {
    double t_max{0.0};
    int points{0};
};

struct SweepConfig {
    SweepParameter parameter{SweepParameter::omega_b};
    double from{0.0};
    double to{0.0};
    int points{0};

    std::vector<double> grid() const {
        std::vector<double> g(points);
        for (int i = 0; i < points; ++i)
            g[i] = from + (to - from) * i / double(points - 1);
        return g;
    }
};

struct RunConfig {
    ModelParams model;
    std::optional<InitialState> initial_state;
    std::optional<EvolutionConfig> evolution;
    std::optional<SweepConfig> sweep;
    std::vector<std::string> warnings; // unknown keys and similar non-fatal findings
};

namespace detail {

inline void warn_unknown_keys(const nlohmann::json& obj, const std::vector<std::string>& known,
                              const std::string& where, std::vector<std::string>& warnings) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool found = false;
        for (const auto& k : known)
            if (it.key() == k) { found = true; break; }
        if (!found) warnings.push_back("unknown key \"" + it.key() + "\" in " + where);
    }
}

inline Complex parse_complex(const nlohmann::json& j, const std::string& name) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument("config: " + name + " must be a [re, im] array");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

inline AtomicLevel parse_atom(const nlohmann::json& j) {
    const std::string s = j.get<std::string>();
    if (s == "plus") return AtomicLevel::plus;
    if (s == "minus") return AtomicLevel::minus;
    throw std::invalid_argument("config: atom must be \"plus\" or \"minus\" (superpositions are unsupported)");
}

inline SweepParameter parse_sweep_parameter(const std::string& s) {
    if (s == "omega_a") return SweepParameter::omega_a;
    if (s == "omega_b") return SweepParameter::omega_b;
    if (s == "g_a") return SweepParameter::g_a;
    if (s == "g_b") return SweepParameter::g_b;
    if (s == "Omega0") return SweepParameter::Omega0;
    throw std::invalid_argument("config: sweep.parameter must be one of omega_a, omega_b, g_a, g_b, Omega0");
}

} // namespace detail

inline RunConfig parse_config(const nlohmann::json& j) {
    RunConfig cfg;
    detail::warn_unknown_keys(j, {"model", "initial_state", "evolution", "sweep"}, "config root",
                              cfg.warnings);

    if (!j.contains("model") || !j["model"].is_object())
        throw std::invalid_argument("config: missing \"model\" object");
    const auto& m = j["model"];
    detail::warn_unknown_keys(
        m, {"omega_a", "omega_b", "Omega0", "g_a", "g_b", "cutoff_a", "cutoff_b", "convention"},
        "model", cfg.warnings);
    cfg.model.omega_a = m.at("omega_a").get<double>();
    cfg.model.omega_b = m.at("omega_b").get<double>();
    cfg.model.Omega0 = m.at("Omega0").get<double>();
    cfg.model.g_a = m.at("g_a").get<double>();
    cfg.model.g_b = m.at("g_b").get<double>();
    cfg.model.cutoff_a = m.at("cutoff_a").get<int>();
    cfg.model.cutoff_b = m.at("cutoff_b").get<int>();
    if (m.contains("convention")) {
        const std::string c = m["convention"].get<std::string>();
        if (c == "half") cfg.model.convention = SigmaConvention::half;
        else if (c == "unit") cfg.model.convention = SigmaConvention::unit;
        else throw std::invalid_argument("config: convention must be \"half\" or \"unit\"");
    }
    cfg.model.validate();

    if (j.contains("initial_state")) {
        const auto& s = j["initial_state"];
        detail::warn_unknown_keys(s, {"fock", "coherent", "atom"}, "initial_state", cfg.warnings);
        InitialState init;
        init.atom = s.contains("atom") ? detail::parse_atom(s["atom"]) : AtomicLevel::plus;
        if (s.contains("fock") == s.contains("coherent"))
            throw std::invalid_argument("config: initial_state needs exactly one of \"fock\", \"coherent\"");
        if (s.contains("fock")) {
            const auto& f = s["fock"];
            detail::warn_unknown_keys(f, {"n_a", "n_b"}, "initial_state.fock", cfg.warnings);
            init.field = FockSpec{f.at("n_a").get<int>(), f.at("n_b").get<int>()};
        } else {
            const auto& c = s["coherent"];
            detail::warn_unknown_keys(c, {"alpha", "beta"}, "initial_state.coherent", cfg.warnings);
            init.field = CoherentSpec{detail::parse_complex(c.at("alpha"), "alpha"),
                                      detail::parse_complex(c.at("beta"), "beta")};
        }
        cfg.initial_state = init;
    }

    if (j.contains("evolution")) {
        const auto& e = j["evolution"];
        detail::warn_unknown_keys(e, {"t_max", "points"}, "evolution", cfg.warnings);
        EvolutionConfig ev;
        ev.t_max = e.at("t_max").get<double>();
        ev.points = e.at("points").get<int>();
        if (!(ev.t_max > 0.0)) throw std::invalid_argument("config: evolution.t_max must be > 0");
        if (ev.points < 2) throw std::invalid_argument("config: evolution.points must be >= 2");
        cfg.evolution = ev;
    }

    if (j.contains("sweep")) {
        const auto& s = j["sweep"];
        detail::warn_unknown_keys(s, {"parameter", "from", "to", "points"}, "sweep", cfg.warnings);
        SweepConfig sw;
        sw.parameter = detail::parse_sweep_parameter(s.at("parameter").get<std::string>());
        sw.from = s.at("from").get<double>();
        sw.to = s.at("to").get<double>();
        sw.points = s.at("points").get<int>();
        if (sw.points < 2) throw std::invalid_argument("config: sweep.points must be >= 2");
        if (!(sw.to > sw.from)) throw std::invalid_argument("config: sweep range must be increasing");
        cfg.sweep = sw;
    }

    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("config: JSON parse error in " + path + ": " + e.what());
    }
    return parse_config(j);
}

} // namespace jcm
