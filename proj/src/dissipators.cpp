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

#include "sbsim/dissipators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sbsim {

const char* to_string(JumpKind k) {
    switch (k) {
        case JumpKind::spin_dephasing: return "spin_dephasing";
        case JumpKind::spont_emission: return "spont_emission";
        case JumpKind::spont_absorption: return "spont_absorption";
        case JumpKind::boson_leak: return "boson_leak";
        case JumpKind::boson_heat: return "boson_heat";
        case JumpKind::boson_dephasing: return "boson_dephasing";
    }
    return "?";
}

JumpKind jump_kind_from_string(const std::string& s) {
    for (auto k : ALL_JUMP_KINDS)
        if (s == to_string(k)) return k;
    throw Error(ErrorKind::config, "unknown channel kind '" + s + "'");
}

Channel make_channel(double rate, TimeOperator jump, std::string label) {
    if (!(rate >= 0.0)) throw Error(ErrorKind::invalid_parameter, "channel rate must be >= 0");
    return Channel{rate, std::move(jump), std::move(label)};
}

Operator standard_jump(JumpKind kind, int N) {
    if (N < 2) throw Error(ErrorKind::invalid_dimension, "Fock truncation must be at least 2");
    const Matrix a = fock_annihilate(N);
    switch (kind) {
        case JumpKind::spin_dephasing: return embed_spin(pauli_z(), N);
        case JumpKind::spont_emission: return embed_spin(sigma_minus(), N);
        case JumpKind::spont_absorption: return embed_spin(sigma_plus(), N);
        case JumpKind::boson_leak: return embed_boson(a);
        case JumpKind::boson_heat: return embed_boson(a.adjoint());
        case JumpKind::boson_dephasing: return embed_boson(fock_number(N));
    }
    throw Error(ErrorKind::invalid_parameter, "unknown jump kind");
}

Operator transformed_jump_numeric(const Operator& F, double t, const FrameSpec& f) {
    FrameMap fm(f, F.dims().boson);
    return Operator(fm.conjugate(F.matrix(), t), F.dims());
}

TimeOperator closed_form_jump(JumpKind kind, const FrameMap& fm) {
    // With the rotation exp(i H_b (t - t0)), sigma+ (x) D(i eta) becomes
    // sigma+ (x) D(i eta e^{i(nu - nu~) tau}) e^{-i omega~ tau}; the remaining
    // e^{-i delta_0 tau} sits in the coefficient.
    const FrameSpec& f = fm.spec();
    const int N = fm.boson_dim();
    const Matrix id = Matrix::Identity(N, N);
    const Matrix a = fock_annihilate(N);
    const Matrix ad = a.adjoint();
    const Matrix D = displacement(cplx(0.0, f.eta), N);
    const Matrix sp_D = kron(sigma_plus(), D);
    const Matrix sm_Dd = kron(sigma_minus(), D.adjoint());
    const Matrix sz = kron(pauli_z(), id);
    const double b = f.bias, t0 = f.t0;
    auto down = [b, t0](double t) { return std::polar(1.0, -b * (t - t0)); };
    auto up = [b, t0](double t) { return std::polar(1.0, b * (t - t0)); };

    TimeOperator F(fm.dims());
    switch (kind) {
        case JumpKind::spin_dephasing:
            F.add(sp_D, down).add(sm_Dd, up).set_hermitian(true);
            break;
        case JumpKind::spont_emission:
            // (-sigma_z - X + X^dag) / 2
            F.add(-0.5 * sz).add(-0.5 * sp_D, down).add(0.5 * sm_Dd, up);
            break;
        case JumpKind::spont_absorption:
            F.add(-0.5 * sz).add(0.5 * sp_D, down).add(-0.5 * sm_Dd, up);
            break;
        case JumpKind::boson_leak:
            F.add(kron(Matrix::Identity(2, 2), a)).add(sz * cplx(0.0, -0.5 * f.eta));
            break;
        case JumpKind::boson_heat:
            F.add(kron(Matrix::Identity(2, 2), ad)).add(sz * cplx(0.0, 0.5 * f.eta));
            break;
        case JumpKind::boson_dephasing:
            F.add(kron(Matrix::Identity(2, 2), fock_number(N)))
                .add(kron(pauli_z(), (a - ad) * cplx(0.0, 0.5 * f.eta)))
                .set_hermitian(true);
            break;
    }
    F.set_rotation(fm.boson_frame_energies(), t0);
    return F;
}

Operator transformed_jump_closed_form(JumpKind kind, double t, const FrameSpec& f, int N) {
    return Operator(closed_form_jump(kind, FrameMap(f, N)).evaluate(t), Dims{2, N});
}

std::vector<Channel> approx_dissipator(JumpKind kind, const FrameSpec& f, int N) {
    const Matrix id = Matrix::Identity(N, N);
    const Matrix a = fock_annihilate(N);
    const double e2 = 0.25 * f.eta * f.eta;
    auto ch = [&](double mult, const Operator& op, const std::string& label) {
        return make_channel(mult, TimeOperator::constant(op), label);
    };
    const Operator sz = embed_spin(pauli_z(), N);
    switch (kind) {
        case JumpKind::spin_dephasing:
            return {ch(1.0, embed_spin(pauli_x(), N), "sd~sigma_x")};
        case JumpKind::spont_emission:
        case JumpKind::spont_absorption: {
            const std::string p = kind == JumpKind::spont_emission ? "se~" : "sa~";
            return {ch(0.25, sz, p + "sigma_z"), ch(0.25, embed_spin(sigma_minus(), N), p + "sigma-"),
                    ch(0.25, embed_spin(sigma_plus(), N), p + "sigma+")};
        }
        case JumpKind::boson_leak:
            return {ch(1.0, embed_boson(a), "bl~a"), ch(e2, sz, "bl~sigma_z")};
        case JumpKind::boson_heat:
            return {ch(1.0, embed_boson(a.adjoint()), "bh~a+"), ch(e2, sz, "bh~sigma_z")};
        case JumpKind::boson_dephasing:
            return {ch(1.0, embed_boson(fock_number(N)), "bd~n"),
                    ch(e2, embed(pauli_z(), a), "bd~a.sigma_z"),
                    ch(e2, embed(pauli_z(), a.adjoint()), "bd~a+.sigma_z")};
    }
    throw Error(ErrorKind::invalid_parameter, "unknown jump kind");
}

EngineeredSource engineered_source(JumpKind target, const FrameMap& fm) {
    const int N = fm.boson_dim();
    const double eta = fm.spec().eta;
    Matrix spin(2, 2);
    if (target == JumpKind::spont_emission) {
        // (sigma_z - i sigma_y) / 2 with D(i eta)
        spin << 0.5, -0.5, 0.5, -0.5;
        return {TimeOperator::constant(Operator(kron(spin, displacement(cplx(0.0, eta), N)), fm.dims())), true};
    }
    if (target == JumpKind::spont_absorption) {
        // adjoint of the emission source
        spin << 0.5, 0.5, -0.5, -0.5;
        return {TimeOperator::constant(Operator(kron(spin, displacement(cplx(0.0, -eta), N)), fm.dims())), true};
    }
    return {fm.inverse_transform(standard_jump(target, N).matrix()), false};
}

Matrix dissipator_action(const Matrix& F, const Matrix& rho) {
    const Matrix FdF = F.adjoint() * F;
    return F * rho * F.adjoint() - 0.5 * (FdF * rho + rho * FdF);
}

SpectralRateFn flat_rate(double gamma) {
    if (!(gamma >= 0.0)) throw Error(ErrorKind::invalid_parameter, "rate must be >= 0");
    return [gamma](double) { return gamma; };
}

SpectralRateFn ohmic_rate(double gamma, double omega_c) {
    if (!(gamma >= 0.0) || !(omega_c > 0.0))
        throw Error(ErrorKind::invalid_parameter, "ohmic rate needs gamma >= 0 and omega_c > 0");
    return [gamma, omega_c](double w) {
        const double x = std::abs(w) / omega_c;
        return gamma * x * std::exp(-x);
    };
}

DressedDissipation dressed_dissipators(const Operator& H, const SpectralRateFn& gamma_sd,
                                       const SpectralRateFn& gamma_bl) {
    if (!is_hermitian(H.matrix())) throw Error(ErrorKind::not_hermitian, "dressed basis Hamiltonian");
    const int N = H.dims().boson;
    const int d = H.dim();
    auto e = eigh(H.matrix());

    const Matrix sz = kron(pauli_z(), Matrix::Identity(N, N));
    const Matrix a = fock_annihilate(N);
    const Matrix x = kron(Matrix::Identity(2, 2), a + a.adjoint());
    const Matrix n = kron(Matrix::Identity(2, 2), fock_number(N));

    // order: ascending energy, ties by descending <sigma_z>, then descending <n>
    const double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
    const double tie = 1e-9 * scale;
    std::vector<double> szk(d), nk(d);
    for (int k = 0; k < d; ++k) {
        szk[k] = expectation(sz, e.vectors.col(k) * e.vectors.col(k).adjoint()).real();
        nk[k] = expectation(n, e.vectors.col(k) * e.vectors.col(k).adjoint()).real();
    }
    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        if (std::abs(e.values(i) - e.values(j)) > tie) return e.values(i) < e.values(j);
        if (std::abs(szk[i] - szk[j]) > 1e-9) return szk[i] > szk[j];
        return nk[i] > nk[j];
    });

    DressedDissipation out;
    out.basis.resize(d, d);
    out.energies.resize(d);
    for (int k = 0; k < d; ++k) {
        out.basis.col(k) = e.vectors.col(order[k]);
        out.energies(k) = e.values(order[k]);
    }
    for (int k = 1; k < d; ++k)
        if (out.energies(k) - out.energies(k - 1) <= tie) out.degenerate = true;

    const Matrix szd = out.basis.adjoint() * sz * out.basis;
    const Matrix xd = out.basis.adjoint() * x * out.basis;
    const double g0 = gamma_sd(0.0);
    if (g0 < 0.0) throw Error(ErrorKind::invalid_parameter, "negative spectral rate");
    out.dephasing.resize(d);
    for (int k = 0; k < d; ++k) out.dephasing(k) = std::sqrt(g0) * szd(k, k);

    out.rates = Eigen::MatrixXd::Zero(d, d);
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            if (j == k) continue;
            const double w = out.energies(k) - out.energies(j);
            double r = gamma_sd(w) * std::norm(szd(j, k));
            if (k > j) r += gamma_bl(w) * std::norm(xd(j, k));
            if (r < 0.0) throw Error(ErrorKind::invalid_parameter, "negative spectral rate");
            out.rates(j, k) = r;
        }
    return out;
}

std::vector<Channel> DressedDissipation::channels() const {
    const int d = static_cast<int>(basis.rows());
    const Dims dims{2, d / 2};
    std::vector<Channel> out;
    out.push_back(make_channel(1.0,
                               TimeOperator::constant(Operator(basis * dephasing.asDiagonal() * basis.adjoint(), dims)),
                               "dressed A"));
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            if (rates(j, k) <= 0.0) continue;
            Matrix B = basis.col(j) * basis.col(k).adjoint();
            out.push_back(make_channel(rates(j, k), TimeOperator::constant(Operator(std::move(B), dims)),
                                       "dressed B" + std::to_string(j) + "," + std::to_string(k)));
        }
    return out;
}

TransitionSet DressedDissipation::transitions() const {
    const int d = static_cast<int>(basis.rows());
    TransitionSet s;
    s.basis = TimeOperator(Dims{2, d / 2});
    s.basis.add(basis);
    s.rates = rates;
    s.dephasing = dephasing;
    s.label = "dressed";
    return s;
}

TransitionSet DressedDissipation::transitions(const FrameMap& fm) const {
    TransitionSet s;
    s.basis = fm.left_transform(basis);
    s.rates = rates;
    s.dephasing = dephasing;
    s.label = "dressed (transported)";
    return s;
}

}  // namespace sbsim
