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

#include "sbsim/model.hpp"

#include <cmath>
#include <numbers>

namespace sbsim {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

Matrix matrix_power(const Matrix& a, int n) {
    Matrix r = Matrix::Identity(a.rows(), a.cols());
    for (int k = 0; k < n; ++k) r = (r * a).eval();
    return r;
}

void require_truncation(int N, int order) {
    if (N < 2) throw Error(ErrorKind::invalid_dimension, "Fock truncation must be at least 2");
    if (N < order + 1)
        throw Error(ErrorKind::invalid_dimension,
                    "Fock truncation " + std::to_string(N) + " too small for order " +
                        std::to_string(order));
}

// Adds (Omega/2) [sigma+ (x) B + h.c.] where B = boson factor of the term.
void add_sideband(Matrix& h, double rabi, const Matrix& boson) {
    Matrix x = kron(sigma_plus(), boson) * cplx(0.5 * rabi, 0.0);
    h += x;
    h += x.adjoint();
}

Matrix free_part(const SystemParams& p, int N) {
    Matrix h = kron(Matrix::Identity(2, 2), fock_number(N)) * p.nu_tilde;
    h += kron(pauli_z(), Matrix::Identity(N, N)) * (0.5 * p.omega_tilde);
    return h;
}

Operator build_target(const SystemParams& p, int N, Warnings* w,
                      const std::function<Matrix(int)>& boson_factor) {
    p.validate();
    int max_order = 0;
    for (const auto& s : p.red) max_order = std::max(max_order, s.order);
    for (const auto& s : p.blue) max_order = std::max(max_order, s.order);
    require_truncation(N, max_order);
    if (p.red.empty() && p.blue.empty())
        warn(w, "degenerate model: no resonant sideband terms, free Hamiltonian");

    const Matrix a = fock_annihilate(N);
    const Matrix ad = a.adjoint();
    Matrix h = free_part(p, N);
    for (const auto& s : p.blue)
        add_sideband(h, p.drivings[s.driving].amplitude, matrix_power(ad, s.order) * boson_factor(s.order));
    for (const auto& s : p.red)
        add_sideband(h, p.drivings[s.driving].amplitude, boson_factor(s.order) * matrix_power(a, s.order));
    return Operator(std::move(h), Dims{2, N}, {true, false});
}

}  // namespace

void SystemParams::validate() const {
    if (!(nu > 0.0)) throw Error(ErrorKind::invalid_parameter, "nu must be positive");
    if (nu_tilde < 0.0) throw Error(ErrorKind::invalid_parameter, "nu_tilde must be non-negative");
    if (drivings.empty()) throw Error(ErrorKind::invalid_parameter, "at least one driving is required");
    auto check = [&](const SidebandTerm& s, Sideband sign) {
        if (s.order < 1) throw Error(ErrorKind::invalid_parameter, "sideband order must be >= 1");
        if (s.driving < 0 || s.driving >= static_cast<int>(drivings.size()))
            throw Error(ErrorKind::invalid_parameter, "sideband term refers to a missing driving");
        double want = sideband_frequency(s.order, sign, nu, nu_tilde, omega_tilde);
        if (std::abs(drivings[s.driving].detuning - want) > 1e-12 * nu)
            throw Error(ErrorKind::invalid_parameter,
                        "driving " + std::to_string(s.driving) + " is not resonant with the order-" +
                            std::to_string(s.order) + " sideband");
    };
    for (const auto& s : red) check(s, Sideband::red);
    for (const auto& s : blue) check(s, Sideband::blue);
}

const char* to_string(ModelKind k) {
    switch (k) {
        case ModelKind::Hn: return "Hn";
        case ModelKind::Hn_eta: return "Hn_eta";
        case ModelKind::nJCM: return "nJCM";
        case ModelKind::n_antiJCM: return "n_antiJCM";
        case ModelKind::nQRM: return "nQRM";
        case ModelKind::naJCM_eta: return "naJCM_eta";
        case ModelKind::nJCM_eta: return "nJCM_eta";
    }
    return "?";
}

ModelKind model_kind_from_string(const std::string& s) {
    for (auto k : {ModelKind::Hn, ModelKind::Hn_eta, ModelKind::nJCM, ModelKind::n_antiJCM,
                   ModelKind::nQRM, ModelKind::naJCM_eta, ModelKind::nJCM_eta})
        if (s == to_string(k)) return k;
    throw Error(ErrorKind::config, "unknown model kind '" + s + "'");
}

bool is_nonlinear(ModelKind k) {
    return k == ModelKind::Hn_eta || k == ModelKind::naJCM_eta || k == ModelKind::nJCM_eta;
}

double sideband_frequency(int n, Sideband sign, double nu, double nu_tilde, double omega_tilde) {
    if (n < 1) throw Error(ErrorKind::invalid_parameter, "sideband order must be >= 1");
    double s = sign == Sideband::red ? 1.0 : -1.0;
    return s * n * (nu_tilde - nu) - omega_tilde;
}

EffectiveCoupling effective_coupling(int n, double rabi, double eta) {
    if (n < 1) throw Error(ErrorKind::invalid_parameter, "coupling order must be >= 1");
    return {std::pow(eta, n) * rabi / (2.0 * factorial(n)), n * std::numbers::pi / 2.0};
}

cplx ipow(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

Matrix f_n_diagonal(int n, double eta, int N) {
    if (n < 0) throw Error(ErrorKind::invalid_parameter, "f_n order must be >= 0");
    require_truncation(N, n);
    // <m|f_n|m> = e^{-eta^2/2} (i eta)^n sum_l (-eta^2)^l m! / ((m-l)! l! (l+n)!)
    const double e2 = eta * eta;
    const cplx pre = std::exp(-0.5 * e2) * ipow(n) * std::pow(eta, n);
    Matrix f = Matrix::Zero(N, N);
    for (int m = 0; m < N; ++m) {
        double term = 1.0 / factorial(n);
        double sum = term;
        for (int l = 0; l < m; ++l) {
            term *= -e2 * (m - l) / ((l + 1.0) * (l + 1.0 + n));
            sum += term;
        }
        f(m, m) = pre * sum;
    }
    return f;
}

Operator f_n_operator(int n, double eta, int N) {
    return Operator(kron(Matrix::Identity(2, 2), f_n_diagonal(n, eta, N)), Dims{2, N});
}

Matrix f_n_constant(int n, double eta, int N) {
    require_truncation(N, n);
    cplx c = std::exp(-0.5 * eta * eta) * ipow(n) * (std::pow(eta, n) / factorial(n));
    return Matrix::Identity(N, N) * c;
}

TimeOperator build_HG(const SystemParams& p, int N) {
    p.validate();
    if (N < 2) throw Error(ErrorKind::invalid_dimension, "Fock truncation must be at least 2");
    TimeOperator h(Dims{2, N});
    h.add(build_HG_static(p, N));
    for (std::size_t j = 1; j < p.drivings.size(); ++j) {
        const double delta = p.relative_detuning(static_cast<int>(j));
        if (delta == 0.0) continue;  // folded into the static part
        const double half = 0.5 * p.drivings[j].amplitude;
        h.add(kron(pauli_z(), Matrix::Identity(N, N)) * half,
              [delta](double t) { return cplx(std::cos(delta * t), 0.0); });
        h.add(kron(pauli_y(), Matrix::Identity(N, N)) * half,
              [delta](double t) { return cplx(std::sin(delta * t), 0.0); });
    }
    h.set_hermitian(true);
    return h;
}

Operator build_HG(const SystemParams& p, double t, int N) { return build_HG(p, N).at(t); }

Operator build_HG_static(const SystemParams& p, int N) {
    p.validate();
    if (N < 2) throw Error(ErrorKind::invalid_dimension, "Fock truncation must be at least 2");
    const Matrix a = fock_annihilate(N);
    const Matrix id = Matrix::Identity(N, N);
    Matrix h = kron(Matrix::Identity(2, 2), fock_number(N)) * p.nu;
    h += kron(pauli_x(), id) * (0.5 * p.bias());
    double static_rabi = 0.0;
    for (std::size_t j = 0; j < p.drivings.size(); ++j)
        if (j == 0 || p.relative_detuning(static_cast<int>(j)) == 0.0)
            static_rabi += p.drivings[j].amplitude;
    h += kron(pauli_z(), id) * (0.5 * static_rabi);
    h += kron(pauli_x(), a - a.adjoint()) * cplx(0.0, 0.5 * p.eta * p.nu);
    h = 0.5 * (h + h.adjoint()).eval();
    return Operator(std::move(h), Dims{2, N}, {true, false});
}

Operator build_Hn(const SystemParams& p, int N, LinearCoupling mode, Warnings* w) {
    return build_target(p, N, w, [&](int n) -> Matrix {
        if (mode == LinearCoupling::gaussian_factor) return f_n_constant(n, p.eta, N);
        return Matrix::Identity(N, N) * (ipow(n) * (std::pow(p.eta, n) / factorial(n)));
    });
}

Operator build_Hn_eta(const SystemParams& p, int N, Warnings* w, const Nonlinearity& f) {
    return build_target(p, N, w, [&](int n) -> Matrix {
        return f ? f(n, p.eta, N) : f_n_diagonal(n, p.eta, N);
    });
}

TargetModel target_model(ModelKind kind, const SystemParams& p) {
    TargetModel m;
    m.kind = kind;
    m.nu_tilde = p.nu_tilde;
    m.omega_tilde = p.omega_tilde;
    const SidebandTerm* s = !p.red.empty() ? &p.red.front() : (!p.blue.empty() ? &p.blue.front() : nullptr);
    if (s) {
        m.order = s->order;
        auto c = effective_coupling(s->order, p.drivings[s->driving].amplitude, p.eta);
        m.coupling = c.g;
        m.phase = c.phase;
    }
    return m;
}

A2Removal remove_A2(const SystemParams& p, double D) {
    const double arg = 1.0 + 4.0 * D / p.nu;
    if (!(arg > 0.0))
        throw Error(ErrorKind::unstable_potential, "1 + 4D/nu = " + std::to_string(arg) + " <= 0");
    A2Removal r;
    r.z_s = -0.25 * std::log(arg);
    r.eta = p.eta * std::exp(3.0 * r.z_s);
    r.nu = p.nu * std::exp(-2.0 * r.z_s);
    r.constant = -p.nu * std::exp(-r.z_s) * std::sinh(r.z_s);
    r.params = p;
    r.params.eta = r.eta;
    r.params.nu = r.nu;
    return r;
}

Operator build_HG_A2(const SystemParams& p, double D, int N) {
    if (p.drivings.empty()) throw Error(ErrorKind::invalid_parameter, "at least one driving is required");
    if (N < 2) throw Error(ErrorKind::invalid_dimension, "Fock truncation must be at least 2");
    const Matrix a = fock_annihilate(N);
    const Matrix x = a + a.adjoint();
    const Matrix id = Matrix::Identity(N, N);
    Matrix h = kron(Matrix::Identity(2, 2), fock_number(N) * p.nu + D * x * x);
    h += kron(pauli_x(), id) * (0.5 * p.bias());
    double rabi = 0.0;
    for (const auto& d : p.drivings) rabi += d.amplitude;
    h += kron(pauli_z(), id) * (0.5 * rabi);
    h += kron(pauli_x(), x) * (0.5 * p.eta * p.nu);
    h = 0.5 * (h + h.adjoint()).eval();
    return Operator(std::move(h), Dims{2, N}, {true, false});
}

SystemParams sideband_params(ModelKind kind, int order, double eta, double nu, double nu_tilde,
                             double omega_tilde, double rabi, double rabi_ratio) {
    SystemParams p;
    p.nu = nu;
    p.eta = eta;
    p.nu_tilde = nu_tilde;
    p.omega_tilde = omega_tilde;
    const double red = sideband_frequency(order, Sideband::red, nu, nu_tilde, omega_tilde);
    const double blue = sideband_frequency(order, Sideband::blue, nu, nu_tilde, omega_tilde);
    switch (kind) {
        case ModelKind::nJCM:
        case ModelKind::nJCM_eta:
            p.drivings = {{rabi, red}};
            p.red = {{order, 0}};
            break;
        case ModelKind::n_antiJCM:
        case ModelKind::naJCM_eta:
            p.drivings = {{rabi, blue}};
            p.blue = {{order, 0}};
            break;
        case ModelKind::nQRM:
            p.drivings = {{rabi, red}, {rabi_ratio * rabi, blue}};
            p.red = {{order, 0}};
            p.blue = {{order, 1}};
            break;
        default:
            throw Error(ErrorKind::invalid_parameter,
                        std::string("model kind ") + to_string(kind) + " needs explicit sideband sets");
    }
    p.validate();
    return p;
}

}  // namespace sbsim
