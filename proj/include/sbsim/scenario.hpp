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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sbsim/config.hpp"
#include "sbsim/frame.hpp"
#include "sbsim/lindblad.hpp"

namespace sbsim {

inline constexpr double INFIDELITY_FLOOR = 1e-6;
inline constexpr double QUALITY_LEAKAGE = 1e-4;
inline constexpr double QUALITY_NEGATIVITY = -1e-6;
// Exit-code threshold on the worst leakage of either trajectory.
inline constexpr double FAIL_LEAKAGE = 1e-2;

// Both sides of a scenario, ready for evolve().
struct ScenarioProblems {
    SystemParams params;
    FrameSpec frame;
    EvolutionProblem physical;  // H_G, rho_G
    EvolutionProblem target;    // H_n or H_n,eta, rho_n
    std::optional<EvolutionProblem> linear;  // linear model with the target channels
    std::vector<std::string> warnings;
};

ScenarioProblems build_problems(const ScenarioConfig& cfg);

struct ResultRow {
    double t = 0.0;  // units of 1/nu~
    std::vector<double> target;         // Tr(O rho_n)
    std::vector<double> reconstructed;  // Tr(O Gamma rho_G Gamma^dag)
    double fidelity = 0.0;
    double infidelity = 0.0;  // max(1 - F, INFIDELITY_FLOOR)
    double purity_G = 0.0;
    double purity_target = 0.0;
    double leakage_G = 0.0;
    double leakage_target = 0.0;
    double trace_dev_G = 0.0;
    double trace_dev_target = 0.0;
    std::optional<double> infidelity_linear;
    std::string quality = "ok";
};

struct ScenarioResult {
    std::string name;
    std::vector<std::string> observable_names;
    std::vector<ResultRow> rows;

    double max_infidelity = 0.0;
    double final_fidelity = 0.0;
    double max_leakage = 0.0;
    bool positivity_flag = false;
    long steps_G = 0;
    long steps_target = 0;
    double wall_seconds = 0.0;
    std::vector<std::string> warnings;

    Matrix final_G;
    Matrix final_target;
    Matrix final_reconstructed;
    std::optional<Matrix> final_linear;
    std::string csv_path;  // empty if not written

    // 0, or 3 for a positivity or leakage failure.
    int exit_code() const;
};

struct RunOptions {
    bool write_csv = true;
    bool parallel = true;  // evolve the trajectories concurrently
    std::ostream* summary = nullptr;
};

ScenarioResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opt = {});

std::string to_csv(const ScenarioResult& r);
void print_summary(std::ostream& os, const ScenarioResult& r);

struct SweepPoint {
    double value = 0.0;
    ScenarioResult result;
};

struct SweepResult {
    std::string axis;
    std::vector<SweepPoint> points;
    std::string summary_path;
};

SweepResult run_sweep(const ScenarioConfig& base, const std::string& axis,
                      const std::vector<double>& values, int workers = 1, const RunOptions& opt = {});
std::string sweep_summary_csv(const SweepResult& s);

struct ConvergenceResult {
    std::vector<double> scales;
    std::vector<double> max_infidelity;
    std::vector<double> final_fidelity;
    bool checked = false;   // at least two scales
    bool decreasing = false;
    std::string summary_path;
};

ConvergenceResult rwa_convergence(const ScenarioConfig& base, const std::vector<double>& scales,
                                  int workers = 1, const RunOptions& opt = {});
std::string convergence_summary_csv(const ConvergenceResult& c);

}  // namespace sbsim
