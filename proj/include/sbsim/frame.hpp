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

#include "sbsim/model.hpp"
#include "sbsim/operator.hpp"
#include "sbsim/time_operator.hpp"

namespace sbsim {

struct FrameSpec {
    double bias = 0.0;  // delta_0
    double nu = 1.0;
    double nu_tilde = 0.0;
    double omega_tilde = 0.0;
    double eta = 0.0;
    double t0 = 0.0;

    static FrameSpec from(const SystemParams& p);
};

// Spin-dependent displacement (1/sqrt 2) [[D^dag, D], [-D^dag, D]].
Matrix T_operator(cplx alpha, int N);

class FrameMap {
    /*
    Gamma(t) = U_b^dag(t) T^dag(i eta/2) U_a(t)

        U_a(t) = exp(i (t - t0) delta_0 sigma_x / 2)
        U_b(t) = exp(-i (t - t0) H_b),  H_b = (nu - nu~) a^dag a - omega~ sigma_z / 2

    H_b is diagonal in the product basis, so U_b is a phase vector.  T is
    computed once per instance.
    */
public:
    FrameMap(FrameSpec f, int N);

    const FrameSpec& spec() const { return f_; }
    int boson_dim() const { return N_; }
    Dims dims() const { return Dims{2, N_}; }

    const Matrix& T() const { return T_; }
    // Diagonal of H_b.
    const RealVector& boson_frame_energies() const { return hb_; }

    Matrix spin_rotation(double t) const;  // U_a
    Matrix boson_rotation(double t) const; // U_b
    Matrix gamma(double t) const;

    Matrix conjugate(const Matrix& op, double t) const;          // Gamma op Gamma^dag
    Matrix inverse_conjugate(const Matrix& op, double t) const;  // Gamma^dag op Gamma

    // Gamma O(t) Gamma^dag as a structured time operator.
    TimeOperator transform(const TimeOperator& op) const;

    // Gamma H Gamma^dag + i dGamma/dt Gamma^dag: generator of Gamma rho Gamma^dag.
    TimeOperator exact_generator(const TimeOperator& H) const;

    // Gamma(t) W up to a right diagonal phase factor.  Only meaningful for
    // bases whose columns enter as |j><k| pairs, where that phase cancels.
    TimeOperator left_transform(const Matrix& W) const;

    // Gamma^dag F Gamma (time-dependent, evaluated on demand).
    TimeOperator inverse_transform(const Matrix& F) const;

private:
    FrameSpec f_;
    int N_;
    Matrix T_;
    Matrix Td_;
    Matrix X_;  // sigma_x (x) I
    RealVector hb_;
};

Matrix Gamma(double t, const FrameSpec& f, int N);

DensityMatrix to_simulated_frame(const DensityMatrix& rho_G, double t, const FrameSpec& f,
                                 Warnings* w = nullptr);
DensityMatrix from_simulated_frame(const DensityMatrix& rho_n, double t, const FrameSpec& f,
                                   Warnings* w = nullptr);

}  // namespace sbsim
