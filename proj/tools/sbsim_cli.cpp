// Copyright 2026 The sbsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// sbsim: run, sweep and compare spin-boson scenarios from config files.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sbsim/presets.hpp"
#include "sbsim/scenario.hpp"

namespace {

using namespace sbsim;

constexpr int EXIT_CONFIG = 2;
constexpr int EXIT_QUALITY = 3;

struct Overrides {
    std::string out;
    std::optional<int> dim;
    std::optional<double> dt;
    std::optional<double> scale;
    bool paper_scale = false;
    int workers = 1;
    bool serial = false;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--out", o.out, "output directory for CSV files");
    cmd->add_option("--dim", o.dim, "Fock truncation N");
    cmd->add_option("--dt", o.dt, "RK4 step in units of 1/nu");
    cmd->add_option("--scale", o.scale, "hierarchy factor nu/nu~");
    cmd->add_flag("--paper-scale", o.paper_scale, "use the scenario's paper scale (slow)");
    cmd->add_option("--workers", o.workers, "concurrent sweep points")->check(CLI::PositiveNumber);
    cmd->add_flag("--serial", o.serial, "evolve the two trajectories one after the other");
}

// A path, or the name of a built-in preset.
ScenarioConfig load(const std::string& src, const Overrides& o) {
    ScenarioConfig cfg;
    if (!std::filesystem::exists(src)) {
        const auto names = preset_names();
        if (std::find(names.begin(), names.end(), src) == names.end())
            throw Error(ErrorKind::config, "no config file or preset named '" + src + "'");
        cfg = preset(src);
    } else {
        cfg = load_config(src);
    }
    if (!o.out.empty()) cfg.output_dir = o.out;
    if (o.dim) cfg.dim = *o.dim;
    if (o.dt) cfg.dt = *o.dt;
    if (o.scale) cfg.scale = *o.scale;
    if (o.paper_scale) {
        if (cfg.paper_scale == 0.0) throw Error(ErrorKind::config, "scenario has no paper_scale");
        if (o.scale) throw Error(ErrorKind::config, "--scale and --paper-scale are exclusive");
        cfg.scale = cfg.paper_scale;
    }
    cfg.validate();
    return cfg;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &pos);
        } catch (const std::exception&) {
            throw Error(ErrorKind::config, "not a number in list: '" + item + "'");
        }
        if (pos != item.size()) throw Error(ErrorKind::config, "not a number in list: '" + item + "'");
        out.push_back(v);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

int exit_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::numerical_quality:
        case ErrorKind::not_psd:
        case ErrorKind::not_hermitian:
        case ErrorKind::not_unitary:
            return EXIT_QUALITY;
        default:
            return EXIT_CONFIG;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spin-boson model simulator"};
    app.require_subcommand(1);

    Overrides o;
    std::string source, axis, values, scales, preset_name;
    bool list = false;

    auto* run = app.add_subcommand("run", "evolve a scenario and write its CSV");
    run->add_option("config", source, "config file or preset name")->required();
    add_overrides(run, o);

    auto* pre = app.add_subcommand("preset", "print the config of a built-in scenario");
    pre->add_option("name", preset_name, "preset name");
    pre->add_flag("--list", list, "list preset names");

    auto* sweep = app.add_subcommand("sweep", "run a scenario over values of one numeric field");
    sweep->add_option("config", source, "config file or preset name")->required();
    sweep->add_option("--axis", axis, "field name, or rate:<jump kind>")->required();
    sweep->add_option("--values", values, "comma-separated values")->required();
    add_overrides(sweep, o);

    auto* conv = app.add_subcommand("convergence", "max infidelity across ascending scales");
    conv->add_option("config", source, "config file or preset name")->required();
    conv->add_option("--scales", scales, "comma-separated ascending scales")->required();
    add_overrides(conv, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : EXIT_CONFIG;
    }

    try {
        RunOptions opt;
        opt.summary = &std::cout;
        opt.parallel = !o.serial;
        if (*pre) {
            if (list || preset_name.empty()) {
                for (const auto& n : preset_names()) std::cout << n << "\n";
                return 0;
            }
            std::cout << to_ini(preset(preset_name));
            return 0;
        }
        if (*run) {
            const ScenarioResult r = run_scenario(load(source, o), opt);
            return r.exit_code();
        }
        if (*sweep) {
            const SweepResult s = run_sweep(load(source, o), axis, parse_list(values), o.workers, opt);
            int rc = 0;
            for (const auto& p : s.points) rc = std::max(rc, p.result.exit_code());
            return rc;
        }
        if (*conv) {
            rwa_convergence(load(source, o), parse_list(scales), o.workers, opt);
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "sbsim: " << e.what() << "\n";
        return exit_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "sbsim: " << e.what() << "\n";
        return EXIT_CONFIG;
    }
    return 0;
}
