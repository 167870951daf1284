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

#include <functional>
#include <string>
#include <vector>

#include "sbsim/operator.hpp"
#include "sbsim/time_operator.hpp"

namespace sbsim {

struct DrivingTerm {
    double amplitude = 0.0;  // Omega_j
    double detuning = 0.0;   // delta_j
};

enum class Sideband { red, blue };

// A resonant term of the target model: order n, selected by driving `driving`.
struct SidebandTerm {
    int order = 1;
    int driving = 0;
};

struct SystemParams {
    double nu = 1.0;
    double eta = 0.0;
    std::vector<DrivingTerm> drivings;  // index 0 is the bias drive
    double nu_tilde = 0.0;
    double omega_tilde = 0.0;
    std::vector<SidebandTerm> red;   // sigma+ a^n
    std::vector<SidebandTerm> blue;  // sigma+ (a^dag)^n
    double t0 = 0.0;

    double bias() const { return drivings.at(0).detuning; }
    double relative_detuning(int j) const { return drivings.at(j).detuning - bias(); }

    // Throws invalid_parameter on a broken invariant.
    void validate() const;
};

enum class ModelKind { Hn, Hn_eta, nJCM, n_antiJCM, nQRM, naJCM_eta, nJCM_eta };

const char* to_string(ModelKind k);
ModelKind model_kind_from_string(const std::string& s);
bool is_nonlinear(ModelKind k);

struct EffectiveCoupling {
    double g = 0.0;
    double phase = 0.0;
};

struct TargetModel {
    ModelKind kind = ModelKind::Hn;
    int order = 1;
    double coupling = 0.0;  // g~_n of the (first) resonant term
    double phase = 0.0;
    double nu_tilde = 0.0;
    double omega_tilde = 0.0;
};

// +-n (nu~ - nu) - omega~
double sideband_frequency(int n, Sideband sign, double nu, double nu_tilde, double omega_tilde);

// g~_n = eta^n Omega / (2 n!), phi_n = n pi / 2
EffectiveCoupling effective_coupling(int n, double rabi, double eta);

// i^n without rounding.
cplx ipow(int n);

// Diagonal f_n(a^dag a) on N Fock levels.
Matrix f_n_diagonal(int n, double eta, int N);
Operator f_n_operator(int n, double eta, int N);

TimeOperator build_HG(const SystemParams& p, int N);
Operator build_HG(const SystemParams& p, double t, int N);

// Time-independent part of H_G (everything except the Delta_j != 0 drivings).
Operator build_HG_static(const SystemParams& p, int N);

enum class LinearCoupling {
    lamb_dicke,      // g~_n = eta^n Omega / (2 n!)
    gaussian_factor  // additionally multiplied by exp(-eta^2 / 2)
};

Operator build_Hn(const SystemParams& p, int N, LinearCoupling mode = LinearCoupling::lamb_dicke,
                  Warnings* w = nullptr);

// Boson-side nonlinearity f(order, eta, N) used by build_Hn_eta; defaults to f_n_diagonal.
using Nonlinearity = std::function<Matrix(int, double, int)>;

Operator build_Hn_eta(const SystemParams& p, int N, Warnings* w = nullptr,
                      const Nonlinearity& f = {});

// Constant replacement of f_n used to tie build_Hn to build_Hn_eta.
Matrix f_n_constant(int n, double eta, int N);

TargetModel target_model(ModelKind kind, const SystemParams& p);

struct A2Removal {
    double z_s = 0.0;
    double eta = 0.0;       // eta e^{3 z_s}
    double nu = 0.0;        // nu e^{-2 z_s}
    double constant = 0.0;  // -nu e^{-z_s} sinh z_s
    SystemParams params;    // renormalized copy
};

A2Removal remove_A2(const SystemParams& p, double D);

// Time-zero generalized Rabi Hamiltonian with the coupling written as
// (eta nu / 2) sigma_x (a + a^dag) and an optional D (a + a^dag)^2 term.
Operator build_HG_A2(const SystemParams& p, double D, int N);

// SystemParams for a single-driving target: kind picks the sideband and
// nonlinearity, rabi is Omega_0 (and Omega_1 = rabi_ratio * Omega_0 for nQRM).
SystemParams sideband_params(ModelKind kind, int order, double eta, double nu, double nu_tilde,
                             double omega_tilde, double rabi, double rabi_ratio = 1.0);

}  // namespace sbsim
