// JSON configuration loading. One document with sections `ranges`,
// `protocol`, `epsilons`, `channel`, `sweep`; see configs/ for examples.
// Parse and validation errors carry JSON-pointer-style paths.
#pragma once

#include "qkd/keyrate.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

namespace qkd {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

namespace cfgdetail {

using nlohmann::json;

inline void read_arr4(const json& j, const char* key, std::array<double, 4>& out,
                      const std::string& path) {
    if (!j.contains(key)) throw ConfigError(path + "/" + key + ": missing");
    auto& a = j.at(key);
    if (!a.is_array() || a.size() != 4)
        throw ConfigError(path + "/" + key + ": expected array of 4 numbers");
    for (int i = 0; i < 4; ++i) out[i] = a.at(i).get<double>();
}

template <typename T>
inline T get_or(const json& j, const char* key, T fallback) {
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace cfgdetail

inline FullConfig load_config(const std::string& path) {
    using nlohmann::json;
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }

    FullConfig cfg;
    if (!doc.contains("ranges")) throw ConfigError("/ranges: missing");
    const json& r = doc["ranges"];
    if (r.contains("delta_width")) {
        cfg.has_shorthand = true;
        cfg.delta_width = r.at("delta_width").get<double>();
        cfg.nominal_eta = r.at("eta_nominal").get<double>();
        cfg.nominal_d = r.at("d_nominal").get<double>();
        cfg.nominal_s = r.at("s_nominal").get<double>();
        cfg.ranges = make_delta_box(cfg.nominal_eta, cfg.nominal_d, cfg.nominal_s,
                                    cfg.delta_width);
    } else {
        cfgdetail::read_arr4(r, "eta_lo", cfg.ranges.eta_lo, "/ranges");
        cfgdetail::read_arr4(r, "eta_hi", cfg.ranges.eta_hi, "/ranges");
        cfgdetail::read_arr4(r, "d_lo", cfg.ranges.d_lo, "/ranges");
        cfgdetail::read_arr4(r, "d_hi", cfg.ranges.d_hi, "/ranges");
        if (!r.contains("s_center")) throw ConfigError("/ranges/s_center: missing");
        cfg.ranges.s_center = r.at("s_center").get<double>();
        cfg.ranges.s_halfwidth = cfgdetail::get_or(r, "s_halfwidth", 0.0);
    }

    if (doc.contains("protocol")) {
        const json& p = doc["protocol"];
        cfg.proto.p_x_alice = cfgdetail::get_or(p, "p_x_alice", cfg.proto.p_x_alice);
        if (p.contains("mu")) {
            auto& a = p.at("mu");
            if (!a.is_array() || a.size() != 3)
                throw ConfigError("/protocol/mu: expected array of 3 intensities");
            for (int i = 0; i < 3; ++i) cfg.proto.mu[i] = a.at(i).get<double>();
        }
        if (p.contains("p_mu")) {
            auto& a = p.at("p_mu");
            if (!a.is_array() || a.size() != 3)
                throw ConfigError("/protocol/p_mu: expected array of 3 probabilities");
            for (int i = 0; i < 3; ++i) cfg.proto.p_mu[i] = a.at(i).get<double>();
        }
        cfg.proto.n_rounds = cfgdetail::get_or(p, "n_rounds", cfg.proto.n_rounds);
        cfg.proto.photon_cutoff =
            cfgdetail::get_or(p, "photon_cutoff", cfg.proto.photon_cutoff);
        cfg.proto.l_c = cfgdetail::get_or(p, "l_c", cfg.proto.l_c);
        cfg.proto.f_ec = cfgdetail::get_or(p, "f_ec", cfg.proto.f_ec);
    }

    if (doc.contains("epsilons")) {
        const json& e = doc["epsilons"];
        if (e.contains("all")) {
            double v = e.at("all").get<double>();
            cfg.eps = {v, v, v, v, v, v, v};
        } else {
            cfg.eps.eps_az_a = cfgdetail::get_or(e, "eps_az_a", cfg.eps.eps_az_a);
            cfg.eps.eps_az_b = cfgdetail::get_or(e, "eps_az_b", cfg.eps.eps_az_b);
            cfg.eps.eps_pne = cfgdetail::get_or(e, "eps_pne", cfg.eps.eps_pne);
            cfg.eps.eps_0 = cfgdetail::get_or(e, "eps_0", cfg.eps.eps_0);
            cfg.eps.eps_at_d = cfgdetail::get_or(e, "eps_at_d", cfg.eps.eps_at_d);
            cfg.eps.eps_ev = cfgdetail::get_or(e, "eps_ev", cfg.eps.eps_ev);
            cfg.eps.eps_pa = cfgdetail::get_or(e, "eps_pa", cfg.eps.eps_pa);
        }
    }

    if (doc.contains("channel")) {
        const json& c = doc["channel"];
        cfg.channel.loss_db = cfgdetail::get_or(c, "loss_db", 0.0);
        cfg.channel.misalignment_deg = cfgdetail::get_or(c, "misalignment_deg", 0.0);
        if (c.contains("true_point")) {
            const json& tp = c["true_point"];
            cfgdetail::read_arr4(tp, "eta", cfg.channel.true_point.eta,
                                 "/channel/true_point");
            cfgdetail::read_arr4(tp, "d", cfg.channel.true_point.d,
                                 "/channel/true_point");
            cfg.channel.true_point.s = tp.at("s").get<double>();
            cfg.true_point_is_center = false;
        }
    }
    if (cfg.true_point_is_center) cfg.channel.true_point = center_point(cfg.ranges);

    if (doc.contains("sweep")) {
        const json& s = doc["sweep"];
        cfg.sweep.axis = cfgdetail::get_or<std::string>(s, "axis", cfg.sweep.axis);
        if (s.contains("values"))
            cfg.sweep.values = s.at("values").get<std::vector<double>>();
        if (s.contains("mu1_grid"))
            cfg.sweep.mu1_grid = s.at("mu1_grid").get<std::vector<double>>();
        if (s.contains("mu2_grid"))
            cfg.sweep.mu2_grid = s.at("mu2_grid").get<std::vector<double>>();
        cfg.sweep.grid_step = cfgdetail::get_or(s, "grid_step", cfg.sweep.grid_step);
        cfg.sweep.correlated = cfgdetail::get_or(s, "correlated", cfg.sweep.correlated);
        cfg.sweep.t_seconds = cfgdetail::get_or(s, "t_seconds", cfg.sweep.t_seconds);
        cfg.sweep.t_dead_seconds =
            cfgdetail::get_or(s, "t_dead_seconds", cfg.sweep.t_dead_seconds);
    }
    if (cfg.sweep.mu1_grid.empty()) cfg.sweep.mu1_grid = {cfg.proto.mu[0]};
    if (cfg.sweep.mu2_grid.empty()) cfg.sweep.mu2_grid = {cfg.proto.mu[1]};

    ValidationReport rep = validate_config(cfg.ranges, cfg.proto, cfg.eps);
    if (!rep.valid()) {
        std::string msg = "invalid configuration:";
        for (auto& x : rep.violations) msg += "\n  " + x;
        throw ConfigError(msg);
    }
    return cfg;
}

}  // namespace qkd
