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

#include "sbsim/frame.hpp"

#include <cmath>

namespace sbsim {

FrameSpec FrameSpec::from(const SystemParams& p) {
    FrameSpec f;
    f.bias = p.bias();
    f.nu = p.nu;
    f.nu_tilde = p.nu_tilde;
    f.omega_tilde = p.omega_tilde;
    f.eta = p.eta;
    f.t0 = p.t0;
    return f;
}

Matrix T_operator(cplx alpha, int N) {
    if (N < 2) throw Error(ErrorKind::invalid_dimension, "Fock truncation must be at least 2");
    const Matrix D = displacement(alpha, N);
    const Matrix Dd = D.adjoint();
    const double s = 1.0 / std::sqrt(2.0);
    Matrix T(2 * N, 2 * N);
    T.block(0, 0, N, N) = s * Dd;
    T.block(0, N, N, N) = s * D;
    T.block(N, 0, N, N) = -s * Dd;
    T.block(N, N, N, N) = s * D;
    return T;
}

FrameMap::FrameMap(FrameSpec f, int N) : f_(f), N_(N) {
    T_ = T_operator(cplx(0.0, 0.5 * f.eta), N);
    Td_ = T_.adjoint();
    X_ = kron(pauli_x(), Matrix::Identity(N, N));
    hb_.resize(2 * N);
    for (int s = 0; s < 2; ++s)
        for (int m = 0; m < N; ++m)
            hb_(s * N + m) = (f.nu - f.nu_tilde) * m - 0.5 * f.omega_tilde * (s == SPIN_E ? 1.0 : -1.0);
}

Matrix FrameMap::spin_rotation(double t) const {
    const double th = 0.5 * (t - f_.t0) * f_.bias;
    Matrix u = Matrix::Identity(2 * N_, 2 * N_) * std::cos(th);
    u += X_ * cplx(0.0, std::sin(th));
    return u;
}

Matrix FrameMap::boson_rotation(double t) const {
    const double tau = t - f_.t0;
    Vector ph(2 * N_);
    for (int k = 0; k < 2 * N_; ++k) ph(k) = std::polar(1.0, -hb_(k) * tau);
    return ph.asDiagonal();
}

Matrix FrameMap::gamma(double t) const {
    const double tau = t - f_.t0;
    Matrix g = Td_ * spin_rotation(t);
    for (int k = 0; k < 2 * N_; ++k) g.row(k) *= std::polar(1.0, hb_(k) * tau);
    return g;
}

Matrix FrameMap::conjugate(const Matrix& op, double t) const {
    const Matrix g = gamma(t);
    return g * op * g.adjoint();
}

Matrix FrameMap::inverse_conjugate(const Matrix& op, double t) const {
    const Matrix g = gamma(t);
    return g.adjoint() * op * g;
}

TimeOperator FrameMap::transform(const TimeOperator& op) const {
    if (!(op.dims() == dims())) throw Error(ErrorKind::dimension_mismatch, "frame transform");
    if (op.is_generic() || op.has_rotation()) {
        FrameMap self = *this;
        TimeOperator r = TimeOperator::generic(
            dims(), [self, op](double t) { return self.conjugate(op.evaluate(t), t); });
        r.set_hermitian(op.is_hermitian());
        return r;
    }
    // U_a A U_a^dag = (1+cos)/2 A + (1-cos)/2 X A X + i sin/2 [X, A], angle delta_0 (t - t0)
    const double w = f_.bias;
    const double t0 = f_.t0;
    TimeOperator r(dims());
    for (const auto& term : op.terms()) {
        const Matrix& A = term.op;
        const Matrix XAX = X_ * A * X_;
        const Matrix comm = X_ * A - A * X_;
        const auto c = term.coeff;
        auto coef = [c](double t) { return c ? c(t) : cplx(1.0, 0.0); };
        if ((comm.cwiseAbs().maxCoeff() == 0.0) || w == 0.0) {
            r.add(Td_ * A * T_, c);
            continue;
        }
        r.add(Td_ * (0.5 * (A + XAX)) * T_, c);
        r.add(Td_ * (0.5 * (A - XAX)) * T_,
              [coef, w, t0](double t) { return coef(t) * std::cos(w * (t - t0)); });
        r.add(Td_ * (cplx(0.0, 0.5) * comm) * T_,
              [coef, w, t0](double t) { return coef(t) * std::sin(w * (t - t0)); });
    }
    r.set_rotation(hb_, t0);
    r.set_hermitian(op.is_hermitian());
    return r;
}

TimeOperator FrameMap::exact_generator(const TimeOperator& H) const {
    TimeOperator g = transform(H);
    // i dGamma/dt Gamma^dag = -H_b - (delta_0/2) T^dag sigma_x T = -H_b + (delta_0/2) sigma_z
    Matrix extra = Matrix::Zero(2 * N_, 2 * N_);
    for (int k = 0; k < 2 * N_; ++k) extra(k, k) = -hb_(k);
    extra += kron(pauli_z(), Matrix::Identity(N_, N_)) * (0.5 * f_.bias);
    if (g.is_generic()) {
        TimeOperator r = TimeOperator::generic(dims(), [g, extra](double t) { return Matrix(g.evaluate(t) + extra); });
        r.set_hermitian(true);
        return r;
    }
    // diagonal terms are rotation invariant
    g.add(extra);
    g.set_hermitian(true);
    return g;
}

TimeOperator FrameMap::left_transform(const Matrix& W) const {
    if (W.rows() != 2 * N_) throw Error(ErrorKind::dimension_mismatch, "left_transform basis");
    const double w = f_.bias;
    const double t0 = f_.t0;
    TimeOperator r(dims());
    r.add(Td_ * W, [w, t0](double t) { return cplx(std::cos(0.5 * w * (t - t0)), 0.0); });
    r.add(Td_ * X_ * W, [w, t0](double t) { return cplx(0.0, std::sin(0.5 * w * (t - t0))); });
    r.set_rotation(hb_, t0);
    return r;
}

TimeOperator FrameMap::inverse_transform(const Matrix& F) const {
    FrameMap self = *this;
    return TimeOperator::generic(dims(), [self, F](double t) { return self.inverse_conjugate(F, t); });
}

Matrix Gamma(double t, const FrameSpec& f, int N) { return FrameMap(f, N).gamma(t); }

namespace {

void check_edge(const Matrix& rho, Dims dims, Warnings* w) {
    const double leak = top_fock_population(rho, dims, 4);
    if (leak > 1e-3)
        warn(w, "truncation warning: top-4 Fock population " + std::to_string(leak));
}

}  // namespace

DensityMatrix to_simulated_frame(const DensityMatrix& rho_G, double t, const FrameSpec& f, Warnings* w) {
    FrameMap fm(f, rho_G.dims().boson);
    check_edge(rho_G.matrix(), rho_G.dims(), w);
    Matrix r = fm.conjugate(rho_G.matrix(), t);
    r = 0.5 * (r + r.adjoint()).eval();
    check_edge(r, rho_G.dims(), w);
    return DensityMatrix(std::move(r), rho_G.dims(), 1e-6);
}

DensityMatrix from_simulated_frame(const DensityMatrix& rho_n, double t, const FrameSpec& f, Warnings* w) {
    FrameMap fm(f, rho_n.dims().boson);
    check_edge(rho_n.matrix(), rho_n.dims(), w);
    Matrix r = fm.inverse_conjugate(rho_n.matrix(), t);
    r = 0.5 * (r + r.adjoint()).eval();
    check_edge(r, rho_n.dims(), w);
    return DensityMatrix(std::move(r), rho_n.dims(), 1e-6);
}

}  // namespace sbsim
