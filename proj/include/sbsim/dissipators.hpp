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

#include "sbsim/frame.hpp"
#include "sbsim/operator.hpp"
#include "sbsim/time_operator.hpp"

namespace sbsim {

enum class JumpKind {
    spin_dephasing,    // sigma_z
    spont_emission,    // sigma-
    spont_absorption,  // sigma+
    boson_leak,        // a
    boson_heat,        // a^dag
    boson_dephasing,   // a^dag a
};

const char* to_string(JumpKind k);
JumpKind jump_kind_from_string(const std::string& s);
inline constexpr JumpKind ALL_JUMP_KINDS[] = {
    JumpKind::spin_dephasing, JumpKind::spont_emission, JumpKind::spont_absorption,
    JumpKind::boson_leak,     JumpKind::boson_heat,     JumpKind::boson_dephasing};

struct Channel {
    double rate = 0.0;
    TimeOperator jump;
    std::string label;
};

Channel make_channel(double rate, TimeOperator jump, std::string label);

Operator standard_jump(JumpKind kind, int N);

// Gamma(t) F Gamma(t)^dag by direct matrix products.
Operator transformed_jump_numeric(const Operator& F, double t, const FrameSpec& f);

// Closed form of Gamma F Gamma^dag for the six standard jumps, as a time operator
// (additive constants on Hermitian jumps dropped).
TimeOperator closed_form_jump(JumpKind kind, const FrameMap& fm);
Operator transformed_jump_closed_form(JumpKind kind, double t, const FrameSpec& f, int N);

// Static channels approximating the transformed dissipator; rates are multipliers.
std::vector<Channel> approx_dissipator(JumpKind kind, const FrameSpec& f, int N);

struct EngineeredSource {
    TimeOperator jump;
    bool is_static = true;
};

// Jump F in the physical frame whose transform Gamma F Gamma^dag reproduces
// the dissipator of the target jump.
EngineeredSource engineered_source(JumpKind target, const FrameMap& fm);

// D_F[rho] = F rho F^dag - {F^dag F, rho} / 2
Matrix dissipator_action(const Matrix& F, const Matrix& rho);

using SpectralRateFn = std::function<double(double)>;
SpectralRateFn flat_rate(double gamma);
// gamma * |omega / omega_c| * exp(-|omega| / omega_c)
SpectralRateFn ohmic_rate(double gamma, double omega_c);

// Family of jumps W|j><k|W^dag with rates(j,k), plus one pure-dephasing jump
// W diag(dephasing) W^dag at unit rate.  The basis may be time dependent.
struct TransitionSet {
    TimeOperator basis;
    Eigen::MatrixXd rates;
    Vector dephasing;
    std::string label;
};

struct DressedDissipation {
    Matrix basis;          // eigenvectors as columns
    RealVector energies;   // ascending
    Eigen::MatrixXd rates; // rates(j,k), jump |j><k|
    Vector dephasing;      // sqrt(gamma_sd(0)) <k|sigma_z|k>
    bool degenerate = false;

    // Explicit list: the dephasing channel A, then B_jk for every non-zero rate.
    std::vector<Channel> channels() const;
    // Same dissipator as a transition family in the frame of H.
    TransitionSet transitions() const;
    // Transported by Gamma(t).
    TransitionSet transitions(const FrameMap& fm) const;
};

DressedDissipation dressed_dissipators(const Operator& H, const SpectralRateFn& gamma_sd,
                                       const SpectralRateFn& gamma_bl);

}  // namespace sbsim
