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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "sbsim/presets.hpp"
#include "sbsim/scenario.hpp"

using namespace sbsim;

namespace {

const char* SMALL = R"([scenario]
name = small
scale = 50
dim = 6
t_end = 1
samples = 11

[model]
kind = nJCM
order = 1
eta = 0.05
omega_tilde_over_nu_tilde = 1
coupling_over_nu_tilde = 0.5

[dissipation]
boson_leak = 0.5, approx_static
)";

RunOptions quiet() {
    RunOptions o;
    o.write_csv = false;
    return o;
}

std::filesystem::path scratch(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("sbsim_test_" + tag);
    std::filesystem::remove_all(p);
    return p;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// The spin-dephasing comparison scenario with a chosen eta.
ScenarioConfig dephasing(double eta, DissipatorMode mode) {
    ScenarioConfig c = preset("appD_spin_dephasing");
    c.eta = eta;
    for (auto& d : c.dissipation) d.mode = mode;
    return c;
}

Matrix final_target(double eta, DissipatorMode mode) {
    ScenarioConfig c = dephasing(eta, mode);
    c.dim = 8;
    ScenarioProblems sp = build_problems(c);
    sp.target.keep_states = true;
    return evolve(sp.target).states.back();
}

}  // namespace

TEST(Scenario, CsvLayout) {
    ScenarioConfig c = parse_config(SMALL);
    ScenarioResult r = run_scenario(c, quiet());
    ASSERT_EQ(r.rows.size(), 11u);
    const std::string csv = to_csv(r);
    const std::string header = csv.substr(0, csv.find('\n'));
    EXPECT_EQ(header,
              "t,sigma_z_target,sigma_z_reconstructed,n_target,n_reconstructed,fidelity,infidelity,purity_G,"
              "purity_target,leakage_G,leakage_target,trace_dev_G,trace_dev_target,quality");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 12);
    EXPECT_EQ(r.rows.front().t, 0.0);
    EXPECT_NEAR(r.rows.back().t, 1.0, 1e-14);  // units of 1/nu~
    for (const auto& row : r.rows) {
        EXPECT_GE(row.infidelity, INFIDELITY_FLOOR);
        EXPECT_NEAR(row.infidelity, std::max(1.0 - row.fidelity, INFIDELITY_FLOOR), 0.0);
        EXPECT_EQ(row.quality, "ok");
    }
    // 17 significant digits
    EXPECT_NE(csv.find("0.10000000000000001"), std::string::npos);
}

TEST(Scenario, DeterministicCsv) {
    ScenarioConfig c = parse_config(SMALL);
    RunOptions serial = quiet();
    serial.parallel = false;
    const std::string a = to_csv(run_scenario(c, quiet()));
    const std::string b = to_csv(run_scenario(c, quiet()));
    const std::string s = to_csv(run_scenario(c, serial));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, s);
}

TEST(Scenario, WritesCsvAndSummary) {
    auto dir = scratch("run");
    ScenarioConfig c = parse_config(SMALL);
    c.output_dir = dir.string();
    std::ostringstream summary;
    RunOptions o;
    o.summary = &summary;
    ScenarioResult r = run_scenario(c, o);
    EXPECT_EQ(r.csv_path, (dir / "small.csv").string());
    EXPECT_EQ(slurp(r.csv_path), to_csv(r));
    EXPECT_NE(summary.str().find("small: max infidelity"), std::string::npos);
    EXPECT_NE(summary.str().find("wall"), std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST(Scenario, DegenerateEtaZeroIsExact) {
    // no coupling, no drive: both frames differ by a spin rotation only
    ScenarioConfig c = parse_config(SMALL);
    c.eta = 0.0;
    c.coupling = 0.0;
    c.dissipation.clear();
    for (const char* spin : {"e", "+"}) {
        c.spin = spin;
        c.boson = BosonInit{BosonInit::Kind::coherent, 0, {0.4, 0.2}, 0.0};
        ScenarioResult r = run_scenario(c, quiet());
        for (const auto& row : r.rows) EXPECT_GE(row.fidelity, 1.0 - 1e-8) << spin << " t=" << row.t;
    }
}

TEST(Scenario, DegenerateEtaZeroWithExactChannels) {
    ScenarioConfig c = parse_config(SMALL);
    c.eta = 0.0;
    c.coupling = 0.0;
    c.spin = "+";
    c.dissipation = {{JumpKind::boson_leak, 0.5, DissipatorMode::exact_transformed},
                     {JumpKind::spin_dephasing, 0.3, DissipatorMode::exact_transformed}};
    c.boson = BosonInit{BosonInit::Kind::fock, 2, {}, 0.0};
    ScenarioResult r = run_scenario(c, quiet());
    for (const auto& row : r.rows) EXPECT_GE(row.fidelity, 1.0 - 1e-8) << row.t;
}

TEST(Scenario, InitialStatesAgreeAtOrigin) {
    for (InitialFrame f : {InitialFrame::target, InitialFrame::physical}) {
        ScenarioConfig c = parse_config(SMALL);
        c.initial_frame = f;
        c.spin = "+";
        c.boson = BosonInit{BosonInit::Kind::thermal, 0, {}, 0.02};
        c.observables = {"sigma_x", "sigma_z", "n", "pop:1:g"};
        ScenarioResult r = run_scenario(c, quiet());
        const auto& row = r.rows.front();
        EXPECT_NEAR(row.fidelity, 1.0, 1e-7);
        for (std::size_t k = 0; k < row.target.size(); ++k) EXPECT_NEAR(row.target[k], row.reconstructed[k], 1e-12);
        EXPECT_NEAR(row.purity_G, row.purity_target, 1e-12);
    }
}

TEST(Scenario, TargetFrameSpinTransform) {
    // rho_n = |e,0><e,0| maps to Gamma(0)^dag rho_n Gamma(0)
    ScenarioConfig c = parse_config(SMALL);
    ScenarioProblems sp = build_problems(c);
    const int N = c.dim;
    const Vector psi = Gamma(0.0, sp.frame, N).adjoint() * basis_state(Dims{2, N}, SPIN_E, 0);
    EXPECT_LT((sp.physical.rho0.matrix() - psi * psi.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Scenario, ProblemsPerMode) {
    ScenarioConfig c = parse_config(SMALL);
    ScenarioProblems approx = build_problems(c);
    ASSERT_EQ(approx.physical.channels.size(), 1u);
    EXPECT_TRUE(approx.target.channels.front().jump.is_static());
    // the static target side is allowed a larger step
    EXPECT_GT(approx.target.dt, approx.physical.dt);

    c.dissipation[0].mode = DissipatorMode::exact_transformed;
    ScenarioProblems exact = build_problems(c);
    ASSERT_EQ(exact.target.channels.size(), 1u);
    EXPECT_FALSE(exact.target.channels.front().jump.is_static());
    EXPECT_EQ(exact.target.dt, exact.physical.dt);

    c.dissipation[0].mode = DissipatorMode::dressed;
    ScenarioProblems dressed = build_problems(c);
    EXPECT_TRUE(dressed.physical.channels.empty());
    EXPECT_EQ(dressed.physical.transitions.size(), 1u);
    EXPECT_EQ(dressed.target.transitions.size(), 1u);

    c.dissipation = {{JumpKind::spont_emission, 1.0, DissipatorMode::engineered}};
    ScenarioProblems eng = build_problems(c);
    EXPECT_TRUE(eng.physical.channels.front().jump.is_static());
    EXPECT_LT((eng.target.channels.front().jump.evaluate(0.0) - standard_jump(JumpKind::spont_emission, c.dim).matrix())
                  .cwiseAbs()
                  .maxCoeff(),
              1e-15);
}

TEST(Scenario, LinearReferenceColumn) {
    ScenarioConfig c = preset("fig4_1aJCM");
    c.dim = 10;
    c.scale = 50;
    c.t_end = 0.5;
    c.samples = 6;
    c.boson = BosonInit{BosonInit::Kind::thermal, 0, {}, 0.1};
    ScenarioResult r = run_scenario(c, quiet());
    const std::string csv = to_csv(r);
    EXPECT_NE(csv.find(",infidelity_linear,quality\n"), std::string::npos);
    ASSERT_TRUE(r.final_linear.has_value());
    for (const auto& row : r.rows) EXPECT_TRUE(row.infidelity_linear.has_value());
}

TEST(Scenario, LeakageFailsQuality) {
    ScenarioConfig c = parse_config(SMALL);
    c.boson = BosonInit{BosonInit::Kind::fock, c.dim - 1, {}, 0.0};
    ScenarioResult r = run_scenario(c, quiet());
    EXPECT_EQ(r.exit_code(), 3);
    EXPECT_NE(r.rows.front().quality.find("leak_G"), std::string::npos);
    EXPECT_NE(r.rows.front().quality.find("leak_target"), std::string::npos);
    ScenarioResult ok = run_scenario(parse_config(SMALL), quiet());
    EXPECT_EQ(ok.exit_code(), 0);
}

TEST(Scenario, DressedModeRuns) {
    ScenarioConfig c = parse_config(SMALL);
    c.dissipation = {{JumpKind::boson_leak, 0.5, DissipatorMode::dressed},
                     {JumpKind::spin_dephasing, 0.1, DissipatorMode::dressed}};
    ScenarioResult r = run_scenario(c, quiet());
    EXPECT_GT(r.steps_G, 0);
    for (const auto& row : r.rows) {
        EXPECT_LE(row.trace_dev_G, 1e-8);
        EXPECT_LE(row.trace_dev_target, 1e-8);
    }
    // the transported set reproduces the physical side up to the RWA error
    EXPECT_GT(r.final_fidelity, 0.5);
}

TEST(Sweep, SingleValueEqualsRun) {
    ScenarioConfig c = parse_config(SMALL);
    SweepResult s = run_sweep(c, "eta", {0.07}, 1, quiet());
    ASSERT_EQ(s.points.size(), 1u);
    ScenarioConfig d = c;
    d.eta = 0.07;
    EXPECT_EQ(to_csv(s.points[0].result), to_csv(run_scenario(d, quiet())));
    EXPECT_EQ(s.points[0].result.name, "small_eta_0.07");
}

TEST(Sweep, WorkersDoNotChangeResults) {
    ScenarioConfig c = parse_config(SMALL);
    const std::vector<double> rates{0.1, 0.5, 1.0};
    SweepResult one = run_sweep(c, "rate:boson_leak", rates, 1, quiet());
    SweepResult three = run_sweep(c, "rate:boson_leak", rates, 3, quiet());
    ASSERT_EQ(three.points.size(), 3u);
    for (int i = 0; i < 3; ++i) {
        EXPECT_EQ(three.points[i].value, rates[i]);
        EXPECT_EQ(to_csv(one.points[i].result), to_csv(three.points[i].result));
    }
    EXPECT_EQ(sweep_summary_csv(one), sweep_summary_csv(three));
}

TEST(Sweep, WritesPerPointAndSummary) {
    auto dir = scratch("sweep");
    ScenarioConfig c = parse_config(SMALL);
    c.output_dir = dir.string();
    SweepResult s = run_sweep(c, "coupling_over_nu_tilde", {0.25, 0.75}, 2);
    EXPECT_TRUE(std::filesystem::exists(dir / "small_coupling_over_nu_tilde_0.25.csv"));
    EXPECT_TRUE(std::filesystem::exists(dir / "small_coupling_over_nu_tilde_0.75.csv"));
    const std::string summary = slurp(s.summary_path);
    EXPECT_EQ(summary.substr(0, summary.find('\n')), "value,max_infidelity,final_fidelity");
    EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 3);
    std::filesystem::remove_all(dir);
}

TEST(Sweep, RejectsBadAxis) {
    ScenarioConfig c = parse_config(SMALL);
    EXPECT_THROW(run_sweep(c, "spin", {1.0}, 1, quiet()), Error);
    EXPECT_THROW(run_sweep(c, "scale", {10.0}, 1, quiet()), Error);
    EXPECT_THROW(run_sweep(c, "eta", {}, 1, quiet()), Error);
}

TEST(Convergence, SingleScaleIsSummaryOnly) {
    ScenarioConfig c = parse_config(SMALL);
    ConvergenceResult r = rwa_convergence(c, {60.0}, 1, quiet());
    EXPECT_FALSE(r.checked);
    ASSERT_EQ(r.max_infidelity.size(), 1u);
    EXPECT_EQ(r.max_infidelity[0], run_scenario([&] {
                                        ScenarioConfig d = c;
                                        d.scale = 60.0;
                                        return d;
                                    }(),
                                    quiet())
                                       .max_infidelity);
}

TEST(Convergence, RequiresAscendingScales) {
    ScenarioConfig c = parse_config(SMALL);
    EXPECT_THROW(rwa_convergence(c, {100.0, 60.0}, 1, quiet()), Error);
    EXPECT_THROW(rwa_convergence(c, {60.0, 60.0}, 1, quiet()), Error);
    EXPECT_THROW(rwa_convergence(c, {}, 1, quiet()), Error);
}

TEST(Convergence, DecreasesWithScale) {
    ScenarioConfig c = parse_config(SMALL);
    c.t_end = 2.0;
    ConvergenceResult r = rwa_convergence(c, {50.0, 200.0, 800.0}, 1, quiet());
    EXPECT_TRUE(r.checked);
    EXPECT_TRUE(r.decreasing) << r.max_infidelity[0] << " " << r.max_infidelity[1] << " " << r.max_infidelity[2];
}

TEST(Modes, ApproxMatchesExactAtSmallEta) {
    const double f = fidelity(final_target(0.05, DissipatorMode::approx_static),
                              final_target(0.05, DissipatorMode::exact_transformed));
    EXPECT_GE(f, 0.99);
}

TEST(Modes, ApproxDivergesAtLargeEta) {
    const double f = fidelity(final_target(0.8, DissipatorMode::approx_static),
                              final_target(0.8, DissipatorMode::exact_transformed));
    EXPECT_LE(f, 0.9);
    EXPECT_GE(f, 0.5);
}
