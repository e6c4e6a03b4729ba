// Command-line front end. Two subcommands:
//   keyrate   -- run a parameter sweep and write results.csv
//   validate  -- Monte Carlo certification of every statistical bound
#include "qkd/config_io.hpp"
#include "qkd/report.hpp"
#include "qkd/validate.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

namespace {

// Accepts either "a,b,c" or the range form "start:stop:step" (inclusive).
std::vector<double> parse_values(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double a, b, step;
        char c1, c2;
        std::istringstream ss(text);
        if (!(ss >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' ||
            step <= 0)
            throw qkd::ConfigError("--values: expected start:stop:step, got " + text);
        for (double v = a; v <= b + step * 1e-9; v += step) out.push_back(v);
    } else {
        std::istringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) out.push_back(std::stod(tok));
    }
    if (out.empty()) throw qkd::ConfigError("--values: no values parsed from " + text);
    return out;
}

struct Injection {
    std::string field;
    double factor = 1.0;
    bool active = false;
};

Injection parse_inject(const std::string& text) {
    Injection inj;
    auto star = text.find('*');
    if (star == std::string::npos)
        throw qkd::ConfigError("--inject: expected field*factor, got " + text);
    inj.field = text.substr(0, star);
    inj.factor = std::stod(text.substr(star + 1));
    inj.active = true;
    return inj;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-size key rates for decoy-state BB84 with boxed, "
                 "memory-affected detectors"};
    app.require_subcommand(1);

    std::string config_path, axis, values_text, out_dir = ".", inject_text;
    std::uint64_t seed = 1;
    std::int64_t trials = 100, n_rounds = 100000;
    bool correlated = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_flag("--correlated", correlated,
                      "use the correlated (detector memory) bounds");
    };

    CLI::App* kr = app.add_subcommand("keyrate", "run a sweep, write results.csv");
    add_common(kr);
    kr->add_option("--axis", axis, "sweep axis: loss|delta_width|l_c|repetition_rate");
    kr->add_option("--values", values_text, "comma list or start:stop:step");

    CLI::App* val = app.add_subcommand("validate", "Monte Carlo bound certification");
    add_common(val);
    val->add_option("--seed", seed, "base RNG seed");
    val->add_option("--trials", trials, "number of Monte Carlo runs");
    val->add_option("--rounds", n_rounds, "protocol rounds per run");
    val->add_option("--inject", inject_text,
                    "negative control, e.g. lambda_min*2 (test only)");

    CLI11_PARSE(app, argc, argv);

    try {
        qkd::FullConfig cfg = qkd::load_config(config_path);
        std::filesystem::create_directories(out_dir);
        auto join = [&](const char* name) {
            return (std::filesystem::path(out_dir) / name).string();
        };

        if (kr->parsed()) {
            if (!axis.empty()) cfg.sweep.axis = axis;
            if (!values_text.empty()) cfg.sweep.values = parse_values(values_text);
            if (correlated) cfg.sweep.correlated = true;
            if (cfg.sweep.values.empty())
                throw qkd::ConfigError("/sweep/values: empty (use --values)");
            if (cfg.sweep.axis == "delta_width" && !cfg.has_shorthand)
                throw qkd::ConfigError(
                    "/sweep/axis: delta_width sweep needs shorthand ranges "
                    "(delta_width/eta_nominal/d_nominal/s_nominal)");

            auto rows = qkd::sweep(cfg);
            std::string csv = join("results.csv");
            qkd::write_results_csv(rows, csv);
            qkd::write_manifest(config_path, cfg.sweep.axis,
                                {csv, join("manifest.json")}, join("manifest.json"));
            std::cout << "wrote " << csv << " (" << rows.size() << " rows)\n";
            return 0;
        }

        // validate
        qkd::MismatchCertificate cert =
            qkd::build_certificate(cfg.ranges, cfg.proto, cfg.sweep.grid_step);
        if (!inject_text.empty()) {
            Injection inj = parse_inject(inject_text);
            qkd::apply_injection(cert, inj.field, inj.factor);
        }
        bool corr = correlated || cfg.sweep.correlated;
        qkd::ValidationSummary sum =
            qkd::run_validation(cfg, cert, trials, n_rounds, seed, corr);
        std::string vj = join("validation.json");
        qkd::write_validation_json(sum, vj);
        qkd::write_manifest(config_path, cfg.sweep.axis, {vj, join("manifest.json")},
                            join("manifest.json"));
        std::cout << "trials=" << sum.trials
                  << " violations=" << sum.total_violations() << "\n";
        return sum.total_violations() == 0 ? 0 : 3;
    } catch (const qkd::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
