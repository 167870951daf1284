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

#include "sbsim/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>
#include <thread>

namespace sbsim {

namespace {

[[noreturn]] void config_error(const std::string& m) { throw Error(ErrorKind::config, m); }

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string short_fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

double op_norm(const Matrix& F) {
    const Matrix g = F.adjoint() * F;
    return std::sqrt(std::max(0.0, eigh(0.5 * (g + g.adjoint())).values.maxCoeff()));
}

// Largest time step for which static channels in the frame of H stay resolved.
double relaxed_step(const Matrix& H, const std::vector<Channel>& channels, double spacing) {
    const RealVector e = eigh(H).values;
    double scale = e.maxCoeff() - e.minCoeff();
    for (const auto& c : channels) scale += c.rate * std::pow(op_norm(c.jump.evaluate(0.0)), 2);
    if (scale <= 0.0) return spacing;
    return std::min(spacing, 0.1 / scale);
}

// Uhlmann fidelity; states a hair outside the PSD cone are clipped first.
double robust_fidelity(const Matrix& a, const Matrix& b, bool* clipped) {
    try {
        return fidelity(a, b);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::not_psd) throw;
    }
    auto clip = [](const Matrix& m) {
        auto d = eigh(0.5 * (m + m.adjoint()));
        RealVector v = d.values.cwiseMax(0.0);
        v /= v.sum();
        return Matrix(d.vectors * v.cast<cplx>().asDiagonal() * d.vectors.adjoint());
    };
    *clipped = true;
    return fidelity(clip(a), clip(b));
}

std::string csv_name(const std::string& name) {
    std::string out = name;
    for (auto& ch : out)
        if (ch == ':' || ch == '/' || ch == ' ') ch = '-';
    return out;
}

void write_file(const std::string& path, const std::string& body) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::config, "cannot write " + path);
    out << body;
}

// Runs f(i) for i in [0, n) on up to `workers` threads; rethrows the first failure.
template <class F>
void parallel_for(int n, int workers, F f) {
    workers = std::max(1, std::min(workers, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

ScenarioProblems build_problems(const ScenarioConfig& cfg) {
    cfg.validate();
    ScenarioProblems sp;
    const int N = cfg.dim;
    const double nt = cfg.nu_tilde();
    sp.params = cfg.system_params();
    sp.frame = FrameSpec::from(sp.params);
    const FrameMap fm(sp.frame, N);
    Warnings w;

    const TimeOperator HG = build_HG(sp.params, N);
    const Operator HG0 = build_HG_static(sp.params, N);
    const Operator Hn = is_nonlinear(cfg.kind)
                            ? build_Hn_eta(sp.params, N, &w)
                            : build_Hn(sp.params, N, LinearCoupling::lamb_dicke, &w);

    const std::vector<double> grid = uniform_grid(0.0, cfg.t_end * cfg.scale, cfg.samples);

    EvolutionProblem& g = sp.physical;
    g.hamiltonian = HG;
    g.frame = HG0.matrix();
    g.t_grid = grid;
    g.dt = cfg.step();
    g.keep_states = true;
    g.label = cfg.name + "/G";

    EvolutionProblem& n = sp.target;
    n.hamiltonian = TimeOperator::constant(Hn);
    n.frame = Hn.matrix();
    n.t_grid = grid;
    n.dt = cfg.step();
    n.keep_states = true;
    n.label = cfg.name + "/target";

    double dressed_sd = 0.0, dressed_bl = 0.0;
    bool dressed = false;
    for (const auto& d : cfg.dissipation) {
        if (d.rate == 0.0) continue;
        const double rate = d.rate * nt;
        const std::string label = to_string(d.kind);
        switch (d.mode) {
            case DissipatorMode::exact_transformed:
                g.channels.push_back(make_channel(rate, TimeOperator::constant(standard_jump(d.kind, N)), label));
                n.channels.push_back(make_channel(rate, closed_form_jump(d.kind, fm), label + "~"));
                break;
            case DissipatorMode::approx_static:
                g.channels.push_back(make_channel(rate, TimeOperator::constant(standard_jump(d.kind, N)), label));
                for (auto c : approx_dissipator(d.kind, sp.frame, N)) {
                    c.rate *= rate;
                    n.channels.push_back(std::move(c));
                }
                break;
            case DissipatorMode::engineered: {
                auto src = engineered_source(d.kind, fm);
                g.channels.push_back(make_channel(rate, std::move(src.jump), label + "/source"));
                n.channels.push_back(make_channel(rate, TimeOperator::constant(standard_jump(d.kind, N)), label));
                break;
            }
            case DissipatorMode::dressed:
                dressed = true;
                (d.kind == JumpKind::spin_dephasing ? dressed_sd : dressed_bl) = rate;
                break;
        }
    }
    if (dressed) {
        if (!HG.is_static()) config_error("dressed mode needs a time-independent H_G");
        const auto dd = dressed_dissipators(HG0, flat_rate(dressed_sd), flat_rate(dressed_bl));
        if (dd.degenerate) w.add("dressed basis has degenerate levels");
        g.transitions.push_back(dd.transitions());
        n.transitions.push_back(dd.transitions(fm));
    }

    bool target_static = n.transitions.empty();
    for (const auto& c : n.channels) target_static = target_static && c.jump.is_static();
    if (target_static) n.dt = relaxed_step(Hn.matrix(), n.channels, grid[1] - grid[0]);

    const DensityMatrix rho0 = initial_state(cfg);
    if (cfg.initial_frame == InitialFrame::target) {
        n.rho0 = rho0;
        g.rho0 = from_simulated_frame(rho0, 0.0, sp.frame, &w);
    } else {
        g.rho0 = rho0;
        n.rho0 = to_simulated_frame(rho0, 0.0, sp.frame, &w);
    }

    if (cfg.linear_reference) {
        EvolutionProblem lin = n;
        const Operator Hl = build_Hn(sp.params, N, LinearCoupling::gaussian_factor, &w);
        lin.hamiltonian = TimeOperator::constant(Hl);
        lin.frame = Hl.matrix();
        if (target_static) lin.dt = relaxed_step(Hl.matrix(), lin.channels, grid[1] - grid[0]);
        lin.label = cfg.name + "/linear";
        sp.linear = std::move(lin);
    }
    sp.warnings = w.messages;
    return sp;
}

int ScenarioResult::exit_code() const {
    return (positivity_flag || !(max_leakage <= FAIL_LEAKAGE)) ? 3 : 0;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    ScenarioProblems sp = build_problems(cfg);
    const FrameMap fm(sp.frame, cfg.dim);

    Trajectory tg, tn;
    std::optional<Trajectory> tl;
    if (opt.parallel) {
        auto fg = std::async(std::launch::async, [&] { return evolve(sp.physical); });
        std::future<Trajectory> fl;
        if (sp.linear) fl = std::async(std::launch::async, [&] { return evolve(*sp.linear); });
        tn = evolve(sp.target);
        tg = fg.get();
        if (sp.linear) tl = fl.get();
    } else {
        tg = evolve(sp.physical);
        tn = evolve(sp.target);
        if (sp.linear) tl = evolve(*sp.linear);
    }

    ScenarioResult r;
    r.name = cfg.name;
    r.warnings = sp.warnings;
    for (const auto* t : {&tg, &tn})
        for (const auto& m : t->warnings) r.warnings.push_back(m);
    r.steps_G = tg.steps;
    r.steps_target = tn.steps;
    r.positivity_flag = tg.positivity_flag || tn.positivity_flag;

    std::vector<Observable> obs;
    for (const auto& o : cfg.observables) {
        obs.push_back(make_observable(o, cfg.dim));
        r.observable_names.push_back(obs.back().name);
    }

    bool clipped = false;
    const std::size_t S = tg.times.size();
    r.rows.reserve(S);
    for (std::size_t i = 0; i < S; ++i) {
        const double t = tg.times[i];
        const Matrix& rn = tn.states[i];
        const Matrix rec = fm.conjugate(tg.states[i], t);
        ResultRow row;
        row.t = t * cfg.nu_tilde();
        for (const auto& o : obs) {
            row.target.push_back(expectation(o.op, rn).real());
            row.reconstructed.push_back(expectation(o.op, rec).real());
        }
        row.fidelity = robust_fidelity(rn, rec, &clipped);
        row.infidelity = std::max(1.0 - row.fidelity, INFIDELITY_FLOOR);
        row.purity_G = tg.purity[i];
        row.purity_target = tn.purity[i];
        row.leakage_G = tg.leakage[i];
        row.leakage_target = tn.leakage[i];
        row.trace_dev_G = tg.trace_deviation[i];
        row.trace_dev_target = tn.trace_deviation[i];
        if (tl) row.infidelity_linear = std::max(1.0 - robust_fidelity(tl->states[i], rec, &clipped), INFIDELITY_FLOOR);

        std::vector<std::string> q;
        if (row.leakage_G > QUALITY_LEAKAGE) q.push_back("leak_G");
        if (row.leakage_target > QUALITY_LEAKAGE) q.push_back("leak_target");
        if (tg.min_eigenvalue[i] < QUALITY_NEGATIVITY) q.push_back("negative_G");
        if (tn.min_eigenvalue[i] < QUALITY_NEGATIVITY) q.push_back("negative_target");
        if (!q.empty()) {
            row.quality.clear();
            for (std::size_t k = 0; k < q.size(); ++k) row.quality += (k ? "|" : "") + q[k];
        }

        r.max_infidelity = std::max(r.max_infidelity, row.infidelity);
        r.max_leakage = std::max({r.max_leakage, row.leakage_G, row.leakage_target});
        r.rows.push_back(std::move(row));
    }
    if (clipped) r.warnings.push_back("fidelity evaluated on PSD-clipped states");
    r.final_fidelity = r.rows.back().fidelity;
    r.final_G = tg.states.back();
    r.final_target = tn.states.back();
    r.final_reconstructed = fm.conjugate(r.final_G, tg.times.back());
    if (tl) r.final_linear = tl->states.back();

    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (opt.write_csv) {
        r.csv_path = (std::filesystem::path(cfg.output_dir) / (csv_name(cfg.name) + ".csv")).string();
        write_file(r.csv_path, to_csv(r));
    }
    if (opt.summary) print_summary(*opt.summary, r);
    return r;
}

std::string to_csv(const ScenarioResult& r) {
    std::ostringstream o;
    const bool lin = !r.rows.empty() && r.rows.front().infidelity_linear.has_value();
    o << "t";
    for (const auto& n : r.observable_names) o << "," << n << "_target," << n << "_reconstructed";
    o << ",fidelity,infidelity,purity_G,purity_target,leakage_G,leakage_target,trace_dev_G,trace_dev_target";
    if (lin) o << ",infidelity_linear";
    o << ",quality\n";
    for (const auto& row : r.rows) {
        o << fmt(row.t);
        for (std::size_t k = 0; k < row.target.size(); ++k)
            o << "," << fmt(row.target[k]) << "," << fmt(row.reconstructed[k]);
        for (double v : {row.fidelity, row.infidelity, row.purity_G, row.purity_target, row.leakage_G,
                         row.leakage_target, row.trace_dev_G, row.trace_dev_target})
            o << "," << fmt(v);
        if (lin) o << "," << fmt(row.infidelity_linear.value_or(0.0));
        o << "," << row.quality << "\n";
    }
    return o.str();
}

void print_summary(std::ostream& os, const ScenarioResult& r) {
    const auto& last = r.rows.back();
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "%s: max infidelity %.3e, final fidelity %.8f, final purity G %.8f target %.8f, "
                  "max leakage %.2e, steps %ld/%ld, wall %.1f s\n",
                  r.name.c_str(), r.max_infidelity, r.final_fidelity, last.purity_G, last.purity_target,
                  r.max_leakage, r.steps_G, r.steps_target, r.wall_seconds);
    os << buf;
    if (last.infidelity_linear) {
        std::snprintf(buf, sizeof buf, "%s: final infidelity vs linear model %.3e\n", r.name.c_str(),
                      *last.infidelity_linear);
        os << buf;
    }
    for (const auto& w : r.warnings) os << r.name << ": warning: " << w << "\n";
    if (!r.csv_path.empty()) os << r.name << ": wrote " << r.csv_path << "\n";
}

SweepResult run_sweep(const ScenarioConfig& base, const std::string& axis,
                      const std::vector<double>& values, int workers, const RunOptions& opt) {
    if (values.empty()) config_error("sweep needs at least one value");
    std::vector<ScenarioConfig> cfgs;
    for (double v : values) {
        ScenarioConfig c = base;
        set_numeric(c, axis, v);
        c.name = base.name + "_" + csv_name(axis) + "_" + short_fmt(v);
        c.validate();
        cfgs.push_back(std::move(c));
    }
    SweepResult s;
    s.axis = axis;
    s.points.resize(values.size());
    RunOptions inner = opt;
    inner.summary = nullptr;
    parallel_for(static_cast<int>(values.size()), workers, [&](int i) {
        s.points[i].value = values[i];
        s.points[i].result = run_scenario(cfgs[i], inner);
    });
    if (opt.summary)
        for (const auto& p : s.points) print_summary(*opt.summary, p.result);
    if (opt.write_csv) {
        s.summary_path = (std::filesystem::path(base.output_dir) /
                          (csv_name(base.name) + "_sweep_" + csv_name(axis) + ".csv"))
                             .string();
        write_file(s.summary_path, sweep_summary_csv(s));
        if (opt.summary) *opt.summary << "sweep summary: " << s.summary_path << "\n";
    }
    return s;
}

std::string sweep_summary_csv(const SweepResult& s) {
    std::ostringstream o;
    o << "value,max_infidelity,final_fidelity\n";
    for (const auto& p : s.points)
        o << fmt(p.value) << "," << fmt(p.result.max_infidelity) << "," << fmt(p.result.final_fidelity) << "\n";
    return o.str();
}

ConvergenceResult rwa_convergence(const ScenarioConfig& base, const std::vector<double>& scales,
                                  int workers, const RunOptions& opt) {
    if (scales.empty()) config_error("convergence needs at least one scale");
    for (std::size_t i = 1; i < scales.size(); ++i)
        if (!(scales[i] > scales[i - 1])) config_error("scales must be strictly ascending");
    RunOptions inner = opt;
    inner.write_csv = opt.write_csv && scales.size() > 1;
    SweepResult s = run_sweep(base, "scale", scales, workers, RunOptions{false, opt.parallel, nullptr});
    ConvergenceResult c;
    c.scales = scales;
    for (const auto& p : s.points) {
        c.max_infidelity.push_back(p.result.max_infidelity);
        c.final_fidelity.push_back(p.result.final_fidelity);
        if (inner.write_csv) {
            const auto path = std::filesystem::path(base.output_dir) / (csv_name(p.result.name) + ".csv");
            write_file(path.string(), to_csv(p.result));
        }
    }
    c.checked = scales.size() > 1;
    c.decreasing = c.checked;
    for (std::size_t i = 1; i < scales.size(); ++i)
        c.decreasing = c.decreasing && c.max_infidelity[i] < c.max_infidelity[i - 1];
    if (opt.write_csv) {
        c.summary_path =
            (std::filesystem::path(base.output_dir) / (csv_name(base.name) + "_convergence.csv")).string();
        write_file(c.summary_path, convergence_summary_csv(c));
    }
    if (opt.summary) {
        auto& os = *opt.summary;
        for (std::size_t i = 0; i < scales.size(); ++i) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "scale %g: max infidelity %.3e, final fidelity %.8f\n", scales[i],
                          c.max_infidelity[i], c.final_fidelity[i]);
            os << buf;
        }
        if (c.checked) os << "strictly decreasing: " << (c.decreasing ? "yes" : "no") << "\n";
        if (!c.summary_path.empty()) os << "convergence summary: " << c.summary_path << "\n";
    }
    return c;
}

std::string convergence_summary_csv(const ConvergenceResult& c) {
    std::ostringstream o;
    o << "scale,max_infidelity,final_fidelity\n";
    for (std::size_t i = 0; i < c.scales.size(); ++i)
        o << fmt(c.scales[i]) << "," << fmt(c.max_infidelity[i]) << "," << fmt(c.final_fidelity[i]) << "\n";
    return o.str();
}

}  // namespace sbsim
