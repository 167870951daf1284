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

#pragma once

#include <string>
#include <vector>

#include "sbsim/dissipators.hpp"
#include "sbsim/lindblad.hpp"
#include "sbsim/model.hpp"

namespace sbsim {

enum class DissipatorMode {
    exact_transformed,  // bare F on rho_G, Gamma F Gamma^dag on the target
    approx_static,      // bare F on rho_G, static approximation on the target
    dressed,            // dressed-basis channels of H_G and their transport
    engineered,         // engineered source on rho_G, bare target jump
};

const char* to_string(DissipatorMode m);
DissipatorMode dissipator_mode_from_string(const std::string& s);

struct DissipationSpec {
    JumpKind kind = JumpKind::boson_leak;
    double rate = 0.0;  // units of nu~
    DissipatorMode mode = DissipatorMode::approx_static;
};

// How the [model] coupling value fixes Omega_0.
enum class CouplingUnit {
    coupling_over_nu_tilde,  // g~_n / nu~
    fn_rabi_over_nu_tilde,   // Omega_0 |f_n(0)| / nu~
    rabi_over_nu,            // Omega_0 / nu
};

const char* to_string(CouplingUnit u);

struct BosonInit {
    enum class Kind { fock, coherent, thermal };
    Kind kind = Kind::fock;
    int fock = 0;
    cplx alpha{0.0, 0.0};
    double nbar = 0.0;
};

enum class InitialFrame { target, physical };

struct ScenarioConfig {
    /*
    One scenario.  nu = 1; nu~ = 1 / scale.  Rates, omega~ and couplings are
    in units of nu~, times (t_end, CSV) in units of 1/nu~.
    */
    std::string name = "custom";
    std::string base;          // preset the file was derived from
    double scale = 200.0;      // nu / nu~
    double paper_scale = 0.0;  // scale used by --paper-scale, 0 if none
    int dim = 20;              // Fock truncation N
    double dt = 0.0;           // units of 1/nu; 0 selects 2 pi / 50
    double t_end = 0.0;        // units of 1/nu~
    int samples = 201;

    ModelKind kind = ModelKind::nJCM;
    int order = 1;
    double eta = 0.0;
    double omega_tilde = 0.0;  // units of nu~
    CouplingUnit coupling_unit = CouplingUnit::coupling_over_nu_tilde;
    double coupling = 0.0;
    double rabi_ratio = 1.0;   // Omega_1 / Omega_0 for nQRM
    bool linear_reference = false;

    std::vector<DissipationSpec> dissipation;

    InitialFrame initial_frame = InitialFrame::target;
    BosonInit boson;
    std::string spin = "e";  // e, g, +, -

    std::vector<std::string> observables{"sigma_z", "n"};
    std::string output_dir = ".";

    double nu_tilde() const { return 1.0 / scale; }
    double step() const;
    // Omega_0 / nu from the coupling value.
    double rabi() const;
    SystemParams system_params() const;

    // Throws Error(config) on a broken invariant.
    void validate() const;
};

// Flat INI text ([scenario], [model], [dissipation], [initial], [output]).
// A `base` key in [scenario] starts from that preset; other keys override it.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);
std::string to_ini(const ScenarioConfig& cfg);

// Sets a numeric field by its key name (sweep axes).  `rate:<kind>` sets a
// dissipation rate, adding an approx_static channel if none exists.
void set_numeric(ScenarioConfig& cfg, const std::string& key, double value);

// Observable matrix on the full space: sigma_x|y|z, n, pop:m:s (s in e, g).
Observable make_observable(const std::string& spec, int N);
Vector spin_ket(const std::string& spin);
DensityMatrix initial_state(const ScenarioConfig& cfg);

}  // namespace sbsim
