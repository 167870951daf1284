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

#include "sbsim/operator.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace sbsim {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_dimension: return "invalid dimension";
        case ErrorKind::dimension_mismatch: return "dimension mismatch";
        case ErrorKind::not_hermitian: return "not Hermitian";
        case ErrorKind::not_unitary: return "not unitary";
        case ErrorKind::not_psd: return "not positive semidefinite";
        case ErrorKind::truncation_too_small: return "truncation too small";
        case ErrorKind::unstable_potential: return "unstable potential";
        case ErrorKind::invalid_parameter: return "invalid parameter";
        case ErrorKind::unknown_preset: return "unknown preset";
        case ErrorKind::config: return "config error";
        case ErrorKind::numerical_quality: return "numerical quality failure";
    }
    return "error";
}

namespace {

void require_positive(int N, const char* what) {
    if (N <= 0) throw Error(ErrorKind::invalid_dimension, std::string(what) + " must be positive");
}

}  // namespace

bool is_hermitian(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

bool is_unitary(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    Matrix d = a.adjoint() * a - Matrix::Identity(a.rows(), a.cols());
    return d.cwiseAbs().maxCoeff() <= tol;
}

Operator::Operator(Matrix m, Dims dims, OperatorTraits traits)
    : m_(std::move(m)), dims_(dims), traits_(traits) {
    if (dims_.spin <= 0 || dims_.boson <= 0)
        throw Error(ErrorKind::invalid_dimension, "non-positive subsystem dimension");
    if (m_.rows() != dims_.total() || m_.cols() != dims_.total())
        throw Error(ErrorKind::dimension_mismatch,
                    "matrix is " + std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()) +
                        ", dims require " + std::to_string(dims_.total()));
    if (traits_.hermitian && !sbsim::is_hermitian(m_))
        throw Error(ErrorKind::not_hermitian, "operator flagged Hermitian is not");
    if (traits_.unitary && !sbsim::is_unitary(m_))
        throw Error(ErrorKind::not_unitary, "operator flagged unitary is not");
}

Operator Operator::identity(Dims dims) {
    return Operator(Matrix::Identity(dims.total(), dims.total()), dims, {true, true});
}

Operator Operator::zero(Dims dims) {
    return Operator(Matrix::Zero(dims.total(), dims.total()), dims, {true, false});
}

Operator Operator::adjoint() const {
    Operator r;
    r.m_ = m_.adjoint();
    r.dims_ = dims_;
    r.traits_ = traits_;
    return r;
}

double Operator::max_abs() const { return m_.size() ? m_.cwiseAbs().maxCoeff() : 0.0; }

Operator& Operator::operator+=(const Operator& o) {
    if (!(dims_ == o.dims_)) throw Error(ErrorKind::dimension_mismatch, "operator sum");
    m_ += o.m_;
    traits_ = {traits_.hermitian && o.traits_.hermitian, false};
    return *this;
}

Operator& Operator::operator-=(const Operator& o) {
    if (!(dims_ == o.dims_)) throw Error(ErrorKind::dimension_mismatch, "operator difference");
    m_ -= o.m_;
    traits_ = {traits_.hermitian && o.traits_.hermitian, false};
    return *this;
}

Operator& Operator::operator*=(cplx s) {
    m_ *= s;
    traits_ = {traits_.hermitian && s.imag() == 0.0, traits_.unitary && std::abs(s) == 1.0};
    return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
    if (!(a.dims_ == b.dims_)) throw Error(ErrorKind::dimension_mismatch, "operator product");
    Operator r;
    r.m_ = a.m_ * b.m_;
    r.dims_ = a.dims_;
    r.traits_ = {false, a.traits_.unitary && b.traits_.unitary};
    return r;
}

Matrix fock_annihilate(int N) {
    require_positive(N, "Fock truncation");
    Matrix a = Matrix::Zero(N, N);
    for (int m = 1; m < N; ++m) a(m - 1, m) = std::sqrt(static_cast<double>(m));
    return a;
}

Matrix fock_create(int N) { return fock_annihilate(N).adjoint(); }

Matrix fock_number(int N) {
    require_positive(N, "Fock truncation");
    Matrix n = Matrix::Zero(N, N);
    for (int m = 0; m < N; ++m) n(m, m) = static_cast<double>(m);
    return n;
}

Matrix pauli_x() {
    Matrix s(2, 2);
    s << 0.0, 1.0, 1.0, 0.0;
    return s;
}

Matrix pauli_y() {
    Matrix s(2, 2);
    s << 0.0, -I_UNIT, I_UNIT, 0.0;
    return s;
}

Matrix pauli_z() {
    Matrix s(2, 2);
    s << 1.0, 0.0, 0.0, -1.0;
    return s;
}

Matrix sigma_plus() {
    Matrix s = Matrix::Zero(2, 2);
    s(SPIN_E, SPIN_G) = 1.0;
    return s;
}

Matrix sigma_minus() { return sigma_plus().adjoint(); }

Matrix kron(const Matrix& a, const Matrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

Operator embed(const Matrix& spin, const Matrix& boson) {
    if (spin.rows() != 2 || spin.cols() != 2)
        throw Error(ErrorKind::dimension_mismatch, "spin factor must be 2x2");
    if (boson.rows() != boson.cols() || boson.rows() == 0)
        throw Error(ErrorKind::dimension_mismatch, "boson factor must be square and non-empty");
    return Operator(kron(spin, boson), Dims{2, static_cast<int>(boson.rows())});
}

Operator embed_spin(const Matrix& spin, int N) {
    require_positive(N, "Fock truncation");
    return embed(spin, Matrix::Identity(N, N));
}

Operator embed_boson(const Matrix& boson) { return embed(Matrix::Identity(2, 2), boson); }

EigenDecomposition eigh(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success)
        throw Error(ErrorKind::numerical_quality, "Hermitian eigensolver did not converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

Matrix expm(const Matrix& a) {
    if (a.rows() != a.cols()) throw Error(ErrorKind::dimension_mismatch, "expm of non-square matrix");
    if (is_hermitian(a, 1e-14)) {
        auto e = eigh(0.5 * (a + a.adjoint()));
        return e.vectors * e.values.array().exp().matrix().asDiagonal() * e.vectors.adjoint();
    }
    Matrix ia = I_UNIT * a;
    if (is_hermitian(ia, 1e-14)) {
        // a = -i h with h Hermitian
        auto e = eigh(0.5 * (ia + ia.adjoint()));
        Vector ph = (-I_UNIT * e.values.cast<cplx>()).array().exp();
        return e.vectors * ph.asDiagonal() * e.vectors.adjoint();
    }
    return a.exp();
}

Matrix propagator(const Matrix& h, double t) {
    if (!is_hermitian(h)) throw Error(ErrorKind::not_hermitian, "propagator generator");
    auto e = eigh(0.5 * (h + h.adjoint()));
    Vector ph = (-I_UNIT * t * e.values.cast<cplx>()).array().exp();
    return e.vectors * ph.asDiagonal() * e.vectors.adjoint();
}

Matrix displacement(cplx alpha, int N) {
    require_positive(N, "Fock truncation");
    Matrix a = fock_annihilate(N);
    Matrix gen = alpha * a.adjoint() - std::conj(alpha) * a;
    return expm(gen);
}

Matrix squeeze(double z, int N) {
    require_positive(N, "Fock truncation");
    Matrix a = fock_annihilate(N);
    Matrix ad = a.adjoint();
    Matrix gen = 0.5 * z * (ad * ad - a * a);
    Matrix s = expm(gen);
    const int top = std::min(4, N);
    double tail = 0.0;
    for (int m = N - top; m < N; ++m) tail += std::norm(s(m, 0));
    if (tail >= 1e-6)
        throw Error(ErrorKind::truncation_too_small,
                    "squeezed vacuum puts " + std::to_string(tail) + " in the top four Fock levels");
    return s;
}

Matrix herm_sqrt(const Matrix& a) {
    if (!is_hermitian(a, 1e-10)) throw Error(ErrorKind::not_hermitian, "herm_sqrt argument");
    auto e = eigh(0.5 * (a + a.adjoint()));
    const double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
    if (e.values.minCoeff() < -1e-10 * scale)
        throw Error(ErrorKind::not_psd, "herm_sqrt argument has eigenvalue " +
                                            std::to_string(e.values.minCoeff()));
    RealVector r = e.values.cwiseMax(0.0).cwiseSqrt();
    return e.vectors * r.cast<cplx>().asDiagonal() * e.vectors.adjoint();
}

double interior_distance(const Matrix& a, const Matrix& b, Dims dims, int keep) {
    if (a.rows() != dims.total() || b.rows() != dims.total())
        throw Error(ErrorKind::dimension_mismatch, "interior_distance");
    keep = std::min(keep, dims.boson);
    double worst = 0.0;
    for (int s1 = 0; s1 < dims.spin; ++s1)
        for (int s2 = 0; s2 < dims.spin; ++s2)
            for (int m1 = 0; m1 < keep; ++m1)
                for (int m2 = 0; m2 < keep; ++m2) {
                    int r = s1 * dims.boson + m1, c = s2 * dims.boson + m2;
                    worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
                }
    return worst;
}

double top_fock_population(const Matrix& rho, Dims dims, int levels) {
    levels = std::min(levels, dims.boson);
    double p = 0.0;
    for (int s = 0; s < dims.spin; ++s)
        for (int m = dims.boson - levels; m < dims.boson; ++m) {
            int k = s * dims.boson + m;
            p += rho(k, k).real();
        }
    return p;
}

Vector basis_state(Dims dims, int spin, int fock) {
    if (spin < 0 || spin >= dims.spin || fock < 0 || fock >= dims.boson)
        throw Error(ErrorKind::invalid_dimension, "basis state outside the truncated space");
    Vector v = Vector::Zero(dims.total());
    v(spin * dims.boson + fock) = 1.0;
    return v;
}

DensityMatrix::DensityMatrix(Operator op, double trace_tol) : op_(std::move(op)) {
    const Matrix& m = op_.matrix();
    const double dev = std::abs(m.trace() - 1.0);
    if (dev > trace_tol)
        throw Error(ErrorKind::invalid_parameter, "density matrix trace deviates by " + std::to_string(dev));
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw Error(ErrorKind::not_hermitian, "density matrix");
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8)
        throw Error(ErrorKind::not_psd, "density matrix has eigenvalue " +
                                            std::to_string(es.eigenvalues().minCoeff()));
}

DensityMatrix::DensityMatrix(Matrix m, Dims dims, double trace_tol)
    : DensityMatrix(Operator(std::move(m), dims), trace_tol) {}

DensityMatrix DensityMatrix::pure(const Vector& psi, Dims dims) {
    const double n = psi.norm();
    if (n == 0.0) throw Error(ErrorKind::invalid_parameter, "zero state vector");
    Vector v = psi / n;
    return DensityMatrix(Matrix(v * v.adjoint()), dims);
}

cplx expectation(const Matrix& op, const Matrix& rho) {
    // Tr(op rho) = sum_jk op_jk rho_kj
    return (op.array() * rho.transpose().array()).sum();
}

}  // namespace sbsim
