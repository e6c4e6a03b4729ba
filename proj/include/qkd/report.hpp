// Output artifacts: results.csv, validation.json, manifest.json. CSV rows
// are written with 17 significant digits and '\n' endings so identical
// configs and seeds produce byte-identical files.
#pragma once

#include "qkd/keyrate.hpp"
#include "qkd/validate.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <string>
#include <vector>

namespace qkd {

inline constexpr const char* kToolVersion = "qkd-keyrate 1.0.0";

inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_results_csv(const std::vector<SweepRow>& rows,
                              const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "axis_value,loss_db,delta_width,l_c,mu1,mu2,lambda_min,delta_bound,"
           "q_z,a_lo,b1,be,lambda_ec,key_length_bits,rate_per_signal,status\n";
    for (const auto& r : rows) {
        const auto& kr = r.result;
        out << fmt17(r.axis_value) << ',' << fmt17(r.loss_db) << ','
            << fmt17(r.delta_width) << ',' << r.l_c << ',' << fmt17(r.mu1) << ','
            << fmt17(r.mu2) << ',' << fmt17(kr.cert.lambda_min) << ','
            << fmt17(kr.cert.delta) << ',' << fmt17(kr.cert.q_z) << ','
            << fmt17(kr.cert.a_lo) << ',' << fmt17(kr.b1) << ',' << fmt17(kr.be)
            << ',' << fmt17(kr.lambda_ec) << ',' << fmt17(kr.key_length_bits) << ','
            << fmt17(kr.rate_per_signal) << ',' << to_string(kr.status) << '\n';
    }
}

inline void write_validation_json(const ValidationSummary& sum,
                                  const std::string& path) {
    nlohmann::json j;
    j["trials"] = sum.trials;
    j["total_violations"] = sum.total_violations();
    j["violations"] = nlohmann::json::object();
    for (const auto& [k, v] : sum.violations) j["violations"][k] = v;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

// FNV-1a over the raw config bytes; enough to tie outputs to their input.
inline std::string file_hash_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::uint64_t h = 14695981039346656037ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline void write_manifest(const std::string& config_path, const std::string& axis,
                           const std::vector<std::string>& outputs,
                           const std::string& path) {
    nlohmann::json j;
    j["tool_version"] = kToolVersion;
    j["config_path"] = config_path;
    j["config_hash"] = file_hash_hex(config_path);
    j["axis"] = axis;
    j["outputs"] = outputs;
    std::time_t now = std::time(nullptr);
    char ts[32];
    std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["timestamp"] = ts;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace qkd
