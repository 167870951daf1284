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

#include "sbsim/presets.hpp"

#include <map>

namespace sbsim {

namespace {

// Desk scale 200 unless noted; paper_scale is what --paper-scale selects.
const std::map<std::string, std::string>& table() {
    static const std::map<std::string, std::string> t = {
        {"fig2_1JCM", R"([scenario]
name = fig2_1JCM
scale = 200
paper_scale = 2000
dim = 20
t_end_over_pi = 20
samples = 401

[model]
kind = nJCM
order = 1
eta = 0.05
omega_tilde_over_nu_tilde = 1
coupling_over_nu_tilde = 0.5

[dissipation]
boson_leak = 0.5, approx_static

[initial]
frame = target
boson = fock:0
spin = e

[output]
observables = sigma_z, n
)"},
        {"fig2_2JCM", R"([scenario]
name = fig2_2JCM
scale = 200
paper_scale = 2000
dim = 20
t_end_over_pi = 20
samples = 401

[model]
kind = nJCM
order = 2
eta_squared = 0.02
omega_tilde_over_nu_tilde = 2
coupling_over_nu_tilde = 0.1

[dissipation]
boson_leak = 0.5, approx_static

[initial]
frame = target
boson = fock:0
spin = e

[output]
observables = sigma_z, n
)"},
        {"fig3_1QRM", R"([scenario]
name = fig3_1QRM
scale = 200
paper_scale = 5000
dim = 40
t_end_over_pi = 4
samples = 201

[model]
kind = nQRM
order = 1
eta = 0.05
omega_tilde_over_nu_tilde = 0
coupling_over_nu_tilde = 1.25
rabi_ratio = 1

[dissipation]
boson_leak = 0.02, approx_static
spin_dephasing = 0.01, approx_static

[initial]
frame = target
boson = coherent:0.5
spin = e

[output]
observables = sigma_z, n
)"},
        {"fig3_2QRM", R"([scenario]
name = fig3_2QRM
scale = 200
paper_scale = 5000
dim = 20
t_end_over_pi = 20
samples = 401

[model]
kind = nQRM
order = 2
eta_squared = 0.008
omega_tilde_over_nu_tilde = 2
coupling_over_nu_tilde = 0.1
rabi_ratio = 1

[dissipation]
boson_leak = 0.02, approx_static
spin_dephasing = 0.01, approx_static

[initial]
frame = target
boson = thermal:0.25
spin = +

[output]
observables = sigma_z, n
)"},
        {"fig4_1aJCM", R"([scenario]
name = fig4_1aJCM
scale = 200
paper_scale = 1000
dim = 24
t_end_over_pi = 30
samples = 201

[model]
kind = naJCM_eta
order = 1
eta = 0.8
omega_tilde_over_nu_tilde = 1
fn_rabi_over_nu_tilde = 4
linear_reference = true

[dissipation]
boson_leak = 0.5, exact_transformed

[initial]
frame = physical
boson = thermal:0.75
spin = g

[output]
observables = sigma_z, n
)"},
        {"fig5_blockade", R"([scenario]
name = fig5_blockade
scale = 200
paper_scale = 1000
dim = 30
t_end_over_pi = 40
samples = 201

[model]
kind = naJCM_eta
order = 1
eta = 0.639
omega_tilde_over_nu_tilde = 1
fn_rabi_over_nu_tilde = 4

[dissipation]
spont_emission = 4, engineered

[initial]
frame = target
boson = fock:0
spin = g

[output]
observables = sigma_z, n, pop:8:g
)"},
        {"appD_spin_dephasing", R"([scenario]
name = appD_spin_dephasing
scale = 100
paper_scale = 100
dim = 20
t_end_over_pi = 4
samples = 201

[model]
kind = nJCM_eta
order = 1
eta = 0.8
omega_tilde_over_nu_tilde = 1
fn_rabi_over_nu_tilde = 2

[dissipation]
spin_dephasing = 1, exact_transformed
boson_leak = 0.5, exact_transformed

[initial]
frame = physical
boson = fock:0
spin = +

[output]
observables = sigma_z, n
)"},
    };
    return t;
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : table()) out.push_back(k);
    return out;
}

const std::string& preset_text(const std::string& name) {
    const auto it = table().find(name);
    if (it == table().end()) throw Error(ErrorKind::unknown_preset, "no preset named '" + name + "'");
    return it->second;
}

ScenarioConfig preset(const std::string& name) {
    ScenarioConfig cfg = parse_config(preset_text(name));
    cfg.base = name;
    return cfg;
}

}  // namespace sbsim
