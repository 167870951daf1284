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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sbsim/dissipators.hpp"
#include "sbsim/operator.hpp"
#include "sbsim/time_operator.hpp"

namespace sbsim {

struct Observable {
    std::string name;
    Matrix op;
};

struct EvolutionProblem {
    /*
    d rho/dt = -i[H(t), rho] + sum_k gamma_k D_{F_k(t)}[rho] + transition families.

    `frame` optionally names a static Hermitian H0; the integrator then works
    in the interaction picture of H0, so the part of H equal to H0 is
    propagated exactly.  Results are always reported in the original picture.
    */
    TimeOperator hamiltonian;
    std::vector<Channel> channels;
    std::vector<TransitionSet> transitions;
    DensityMatrix rho0;
    std::vector<double> t_grid;  // rho0 is the state at t_grid.front()
    double dt = 0.0;
    std::optional<Matrix> frame;
    std::vector<Observable> observables;
    bool keep_states = false;
    std::string label;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<std::string> observable_names;
    std::vector<std::vector<cplx>> expectations;  // [sample][observable]
    std::vector<double> purity;
    std::vector<double> leakage;  // top-4 Fock population
    std::vector<double> trace_deviation;
    std::vector<double> min_eigenvalue;
    std::vector<Matrix> states;  // if keep_states
    std::vector<std::string> warnings;
    long steps = 0;
    double stability = 0.0;  // max over grid of dt * ||H(t) - H0||
    bool leakage_flag = false;      // leakage > 1e-4 somewhere
    bool positivity_flag = false;   // min eigenvalue < -1e-6 somewhere
};

// Reference right-hand side: -i[H, rho] + sum gamma (F rho F^dag - {F^dag F, rho}/2).
Matrix lindblad_rhs(const Matrix& H, const std::vector<std::pair<double, Matrix>>& channels,
                    const Matrix& rho);

Trajectory evolve(const EvolutionProblem& p);

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
double fidelity(const Matrix& rho, const Matrix& sigma);
double purity(const DensityMatrix& rho);
double purity(const Matrix& rho);

// Boson-only states carry Dims{1, N}.
DensityMatrix thermal_state(double nbar, int N, double* tail = nullptr);
DensityMatrix coherent_state(cplx alpha, int N);
DensityMatrix fock_state(int m, int N);

// spin ket (2 entries, basis |e>, |g>) (x) boson state
DensityMatrix product_state(const Vector& spin, const DensityMatrix& boson);

std::vector<double> uniform_grid(double t0, double t1, int samples);

}  // namespace sbsim
