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

#include "sbsim/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "sbsim/presets.hpp"

namespace sbsim {

namespace {

using boost::property_tree::ptree;

[[noreturn]] void config_error(const std::string& m) { throw Error(ErrorKind::config, m); }

std::string trim(std::string s) {
    boost::algorithm::trim(s);
    return s;
}

std::vector<std::string> split(const std::string& s, const char* sep) {
    std::vector<std::string> out;
    boost::algorithm::split(out, s, boost::algorithm::is_any_of(sep));
    for (auto& p : out) boost::algorithm::trim(p);
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        config_error(key + ": not a number: '" + v + "'");
    }
    if (pos != v.size()) config_error(key + ": trailing characters in '" + v + "'");
    if (!std::isfinite(x)) config_error(key + ": not finite");
    return x;
}

int to_int(const std::string& key, const std::string& v) {
    const double x = to_double(key, v);
    if (x != std::floor(x) || std::abs(x) > 1e9) config_error(key + ": not an integer: '" + v + "'");
    return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    config_error(key + ": expected true or false, got '" + v + "'");
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

BosonInit parse_boson(const std::string& v) {
    const auto colon = v.find(':');
    const std::string kind = trim(v.substr(0, colon));
    const std::string arg = colon == std::string::npos ? "" : trim(v.substr(colon + 1));
    BosonInit b;
    if (kind == "fock") {
        b.kind = BosonInit::Kind::fock;
        b.fock = arg.empty() ? 0 : to_int("boson", arg);
    } else if (kind == "coherent") {
        b.kind = BosonInit::Kind::coherent;
        const auto parts = split(arg, ",");
        const double re = to_double("boson", parts.at(0));
        const double im = parts.size() > 1 ? to_double("boson", parts[1]) : 0.0;
        if (parts.size() > 2) config_error("boson: coherent takes re[,im]");
        b.alpha = {re, im};
    } else if (kind == "thermal") {
        b.kind = BosonInit::Kind::thermal;
        b.nbar = to_double("boson", arg);
    } else {
        config_error("boson: expected fock:m, coherent:re[,im] or thermal:nbar, got '" + v + "'");
    }
    return b;
}

std::string format_boson(const BosonInit& b) {
    switch (b.kind) {
        case BosonInit::Kind::fock:
            return "fock:" + std::to_string(b.fock);
        case BosonInit::Kind::coherent:
            if (b.alpha.imag() == 0.0) return "coherent:" + fmt(b.alpha.real());
            return "coherent:" + fmt(b.alpha.real()) + "," + fmt(b.alpha.imag());
        case BosonInit::Kind::thermal:
            return "thermal:" + fmt(b.nbar);
    }
    return "";
}

void set_dissipation(ScenarioConfig& cfg, JumpKind kind, double rate, DissipatorMode mode) {
    for (auto& d : cfg.dissipation) {
        if (d.kind == kind) {
            d.rate = rate;
            d.mode = mode;
            return;
        }
    }
    cfg.dissipation.push_back({kind, rate, mode});
}

void apply(ScenarioConfig& cfg, const std::string& section, const std::string& key,
           const std::string& v) {
    const std::string where = section + "." + key;
    if (section == "scenario") {
        if (key == "name") cfg.name = v;
        else if (key == "base") cfg.base = v;
        else if (key == "scale") cfg.scale = to_double(where, v);
        else if (key == "nu_tilde_over_nu") cfg.scale = 1.0 / to_double(where, v);
        else if (key == "paper_scale") cfg.paper_scale = to_double(where, v);
        else if (key == "dim") cfg.dim = to_int(where, v);
        else if (key == "dt") cfg.dt = to_double(where, v);
        else if (key == "t_end") cfg.t_end = to_double(where, v);
        else if (key == "t_end_over_pi") cfg.t_end = to_double(where, v) * std::numbers::pi;
        else if (key == "samples") cfg.samples = to_int(where, v);
        else config_error("unknown key " + where);
    } else if (section == "model") {
        if (key == "kind") {
            try {
                cfg.kind = model_kind_from_string(v);
            } catch (const Error& e) {
                config_error(where + ": " + e.what());
            }
        } else if (key == "order") cfg.order = to_int(where, v);
        else if (key == "eta") cfg.eta = to_double(where, v);
        else if (key == "eta_squared") cfg.eta = std::sqrt(to_double(where, v));
        else if (key == "omega_tilde_over_nu_tilde") cfg.omega_tilde = to_double(where, v);
        else if (key == "coupling_over_nu_tilde") {
            cfg.coupling_unit = CouplingUnit::coupling_over_nu_tilde;
            cfg.coupling = to_double(where, v);
        } else if (key == "fn_rabi_over_nu_tilde") {
            cfg.coupling_unit = CouplingUnit::fn_rabi_over_nu_tilde;
            cfg.coupling = to_double(where, v);
        } else if (key == "rabi_over_nu") {
            cfg.coupling_unit = CouplingUnit::rabi_over_nu;
            cfg.coupling = to_double(where, v);
        } else if (key == "rabi_ratio") cfg.rabi_ratio = to_double(where, v);
        else if (key == "linear_reference") cfg.linear_reference = to_bool(where, v);
        else config_error("unknown key " + where);
    } else if (section == "dissipation") {
        JumpKind kind;
        try {
            kind = jump_kind_from_string(key);
        } catch (const Error&) {
            config_error("unknown jump kind " + where);
        }
        const auto parts = split(v, ",");
        if (parts.size() > 2) config_error(where + ": expected 'rate[, mode]'");
        const double rate = to_double(where, parts[0]);
        DissipatorMode mode = DissipatorMode::approx_static;
        if (parts.size() == 2) {
            try {
                mode = dissipator_mode_from_string(parts[1]);
            } catch (const Error& e) {
                config_error(where + ": " + e.what());
            }
        }
        set_dissipation(cfg, kind, rate, mode);
    } else if (section == "initial") {
        if (key == "frame") {
            if (v == "target") cfg.initial_frame = InitialFrame::target;
            else if (v == "physical") cfg.initial_frame = InitialFrame::physical;
            else config_error(where + ": expected target or physical");
        } else if (key == "boson") cfg.boson = parse_boson(v);
        else if (key == "spin") cfg.spin = v;
        else config_error("unknown key " + where);
    } else if (section == "output") {
        if (key == "observables") {
            cfg.observables.clear();
            for (auto& o : split(v, ","))
                if (!o.empty()) cfg.observables.push_back(o);
        } else if (key == "dir") cfg.output_dir = v;
        else config_error("unknown key " + where);
    } else {
        config_error("unknown section [" + section + "]");
    }
}

}  // namespace

const char* to_string(DissipatorMode m) {
    switch (m) {
        case DissipatorMode::exact_transformed: return "exact_transformed";
        case DissipatorMode::approx_static: return "approx_static";
        case DissipatorMode::dressed: return "dressed";
        case DissipatorMode::engineered: return "engineered";
    }
    return "?";
}

DissipatorMode dissipator_mode_from_string(const std::string& s) {
    for (auto m : {DissipatorMode::exact_transformed, DissipatorMode::approx_static,
                   DissipatorMode::dressed, DissipatorMode::engineered})
        if (s == to_string(m)) return m;
    throw Error(ErrorKind::config, "unknown dissipator mode '" + s + "'");
}

const char* to_string(CouplingUnit u) {
    switch (u) {
        case CouplingUnit::coupling_over_nu_tilde: return "coupling_over_nu_tilde";
        case CouplingUnit::fn_rabi_over_nu_tilde: return "fn_rabi_over_nu_tilde";
        case CouplingUnit::rabi_over_nu: return "rabi_over_nu";
    }
    return "?";
}

double ScenarioConfig::step() const { return dt > 0.0 ? dt : 2.0 * std::numbers::pi / 50.0; }

double ScenarioConfig::rabi() const {
    switch (coupling_unit) {
        case CouplingUnit::rabi_over_nu:
            return coupling;
        case CouplingUnit::coupling_over_nu_tilde: {
            if (coupling == 0.0) return 0.0;
            if (eta <= 0.0) config_error("a non-zero coupling needs eta > 0");
            return 2.0 * std::tgamma(order + 1.0) * coupling * nu_tilde() / std::pow(eta, order);
        }
        case CouplingUnit::fn_rabi_over_nu_tilde: {
            if (coupling == 0.0) return 0.0;
            const double f0 = std::abs(f_n_diagonal(order, eta, order + 2)(0, 0));
            if (!(f0 > 0.0)) config_error("f_n(0) vanishes for this eta");
            return coupling * nu_tilde() / f0;
        }
    }
    return 0.0;
}

SystemParams ScenarioConfig::system_params() const {
    try {
        return sideband_params(kind, order, eta, 1.0, nu_tilde(), omega_tilde * nu_tilde(), rabi(),
                               rabi_ratio);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::config) throw;
        config_error(e.what());
    }
}

void ScenarioConfig::validate() const {
    if (!(scale >= 50.0)) config_error("scale = nu/nu~ must be at least 50 (got " + fmt(scale) + ")");
    if (paper_scale != 0.0 && !(paper_scale >= 50.0)) config_error("paper_scale must be at least 50");
    if (dim < 2 || dim > 400) config_error("dim must be in [2, 400]");
    if (!(dt >= 0.0)) config_error("dt must be non-negative");
    if (!(t_end > 0.0)) config_error("t_end must be positive");
    if (samples < 2) config_error("samples must be at least 2");
    if (order < 1) config_error("order must be at least 1");
    if (!(eta >= 0.0)) config_error("eta must be non-negative");
    if (!(rabi_ratio >= 0.0)) config_error("rabi_ratio must be non-negative");
    if (kind == ModelKind::Hn || kind == ModelKind::Hn_eta)
        config_error(std::string("model kind ") + to_string(kind) + " is not available from a config");
    if (linear_reference && !is_nonlinear(kind))
        config_error("linear_reference needs a nonlinear model kind");
    for (const auto& d : dissipation) {
        const std::string k = to_string(d.kind);
        if (!(d.rate >= 0.0)) config_error("rate of " + k + " must be non-negative");
        if (d.mode == DissipatorMode::engineered && d.kind != JumpKind::spont_emission &&
            d.kind != JumpKind::spont_absorption)
            config_error("engineered mode needs spont_emission or spont_absorption, got " + k);
        if (d.mode == DissipatorMode::dressed) {
            if (d.kind != JumpKind::spin_dephasing && d.kind != JumpKind::boson_leak)
                config_error("dressed mode supports spin_dephasing and boson_leak, got " + k);
            if (kind == ModelKind::nQRM)
                config_error("dressed mode needs a time-independent H_G; nQRM has two drivings");
        }
    }
    if (spin != "e" && spin != "g" && spin != "+" && spin != "-")
        config_error("spin must be one of e, g, +, -");
    if (boson.kind == BosonInit::Kind::fock && (boson.fock < 0 || boson.fock >= dim))
        config_error("fock state outside the truncation");
    if (boson.kind == BosonInit::Kind::thermal && !(boson.nbar >= 0.0))
        config_error("thermal nbar must be non-negative");
    if (observables.empty()) config_error("at least one observable is required");
    for (const auto& o : observables) make_observable(o, dim);
    system_params();
}

ScenarioConfig parse_config(const std::string& text) {
    ptree pt;
    std::istringstream in(text);
    try {
        boost::property_tree::ini_parser::read_ini(in, pt);
    } catch (const boost::property_tree::ini_parser_error& e) {
        config_error(std::string("malformed config: ") + e.what());
    }
    ScenarioConfig cfg;
    if (auto base = pt.get_optional<std::string>("scenario.base")) {
        try {
            cfg = preset(trim(*base));
        } catch (const Error& e) {
            config_error(e.what());
        }
    }
    for (const auto& [section, body] : pt) {
        if (body.empty() && !body.data().empty()) config_error("key '" + section + "' outside a section");
        for (const auto& [key, value] : body) apply(cfg, section, key, trim(value.data()));
    }
    std::vector<DissipationSpec> kept;
    for (const auto& d : cfg.dissipation)
        if (d.rate != 0.0) kept.push_back(d);
    cfg.dissipation = kept;
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) config_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string to_ini(const ScenarioConfig& c) {
    std::ostringstream o;
    o << "[scenario]\n";
    o << "name = " << c.name << "\n";
    o << "scale = " << fmt(c.scale) << "\n";
    if (c.paper_scale != 0.0) o << "paper_scale = " << fmt(c.paper_scale) << "\n";
    o << "dim = " << c.dim << "\n";
    if (c.dt != 0.0) o << "dt = " << fmt(c.dt) << "\n";
    o << "t_end = " << fmt(c.t_end) << "\n";
    o << "samples = " << c.samples << "\n";
    o << "\n[model]\n";
    o << "kind = " << to_string(c.kind) << "\n";
    o << "order = " << c.order << "\n";
    o << "eta = " << fmt(c.eta) << "\n";
    o << "omega_tilde_over_nu_tilde = " << fmt(c.omega_tilde) << "\n";
    o << to_string(c.coupling_unit) << " = " << fmt(c.coupling) << "\n";
    if (c.kind == ModelKind::nQRM) o << "rabi_ratio = " << fmt(c.rabi_ratio) << "\n";
    if (c.linear_reference) o << "linear_reference = true\n";
    if (!c.dissipation.empty()) {
        o << "\n[dissipation]\n";
        for (const auto& d : c.dissipation)
            o << to_string(d.kind) << " = " << fmt(d.rate) << ", " << to_string(d.mode) << "\n";
    }
    o << "\n[initial]\n";
    o << "frame = " << (c.initial_frame == InitialFrame::target ? "target" : "physical") << "\n";
    o << "boson = " << format_boson(c.boson) << "\n";
    o << "spin = " << c.spin << "\n";
    o << "\n[output]\n";
    o << "observables = " << boost::algorithm::join(c.observables, ", ") << "\n";
    o << "dir = " << c.output_dir << "\n";
    return o.str();
}

void set_numeric(ScenarioConfig& cfg, const std::string& key, double value) {
    if (key.rfind("rate:", 0) == 0) {
        JumpKind kind;
        try {
            kind = jump_kind_from_string(key.substr(5));
        } catch (const Error&) {
            config_error("unknown jump kind in axis '" + key + "'");
        }
        for (auto& d : cfg.dissipation) {
            if (d.kind == kind) {
                d.rate = value;
                return;
            }
        }
        cfg.dissipation.push_back({kind, value, DissipatorMode::approx_static});
        return;
    }
    static const char* numeric_keys[][2] = {
        {"scenario", "scale"}, {"scenario", "paper_scale"}, {"scenario", "dim"},
        {"scenario", "dt"}, {"scenario", "t_end"}, {"scenario", "samples"},
        {"model", "order"}, {"model", "eta"}, {"model", "omega_tilde_over_nu_tilde"},
        {"model", "coupling_over_nu_tilde"}, {"model", "fn_rabi_over_nu_tilde"},
        {"model", "rabi_over_nu"}, {"model", "rabi_ratio"}};
    for (const auto& k : numeric_keys) {
        if (key == k[1]) {
            apply(cfg, k[0], k[1], fmt(value));
            return;
        }
    }
    config_error("'" + key + "' is not a numeric config field");
}

Observable make_observable(const std::string& spec, int N) {
    if (spec == "sigma_x") return {spec, embed_spin(pauli_x(), N).matrix()};
    if (spec == "sigma_y") return {spec, embed_spin(pauli_y(), N).matrix()};
    if (spec == "sigma_z") return {spec, embed_spin(pauli_z(), N).matrix()};
    if (spec == "n") return {spec, embed_boson(fock_number(N)).matrix()};
    if (spec.rfind("pop:", 0) == 0) {
        const auto parts = split(spec, ":");
        if (parts.size() != 3 || (parts[2] != "e" && parts[2] != "g"))
            config_error("observable '" + spec + "': expected pop:m:e or pop:m:g");
        const int m = to_int("observable", parts[1]);
        if (m < 0 || m >= N) config_error("observable '" + spec + "' outside the truncation");
        const Vector v = basis_state(Dims{2, N}, parts[2] == "e" ? SPIN_E : SPIN_G, m);
        return {"pop_" + parts[1] + "_" + parts[2], v * v.adjoint()};
    }
    config_error("unknown observable '" + spec + "'");
}

Vector spin_ket(const std::string& spin) {
    Vector v(2);
    const double r = std::numbers::sqrt2 / 2.0;
    if (spin == "e") v << 1.0, 0.0;
    else if (spin == "g") v << 0.0, 1.0;
    else if (spin == "+") v << r, r;
    else if (spin == "-") v << r, -r;
    else config_error("spin must be one of e, g, +, -");
    return v;
}

DensityMatrix initial_state(const ScenarioConfig& cfg) {
    const int N = cfg.dim;
    DensityMatrix boson;
    switch (cfg.boson.kind) {
        case BosonInit::Kind::fock:
            boson = fock_state(cfg.boson.fock, N);
            break;
        case BosonInit::Kind::coherent:
            boson = coherent_state(cfg.boson.alpha, N);
            break;
        case BosonInit::Kind::thermal:
            boson = thermal_state(cfg.boson.nbar, N);
            break;
    }
    return product_state(spin_ket(cfg.spin), boson);
}

}  // namespace sbsim
