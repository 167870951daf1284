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

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sbsim/errors.hpp"

namespace sbsim {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr cplx I_UNIT{0.0, 1.0};

// Spin basis: index 0 is |e>, index 1 is |g>.  Composite index is s * boson + m.
inline constexpr int SPIN_E = 0;
inline constexpr int SPIN_G = 1;

struct Dims {
    int spin = 2;
    int boson = 1;

    int total() const { return spin * boson; }
    bool operator==(const Dims&) const = default;
};

struct OperatorTraits {
    bool hermitian = false;
    bool unitary = false;
};

class Operator {
    /*
    Dense complex matrix on a spin (x) boson space.

    Trait flags are verified on construction: a matrix claimed Hermitian or
    unitary that is not (to 1e-12 relative / 1e-10 absolute) raises.
    */
public:
    Operator() = default;
    Operator(Matrix m, Dims dims, OperatorTraits traits = {});

    static Operator identity(Dims dims);
    static Operator zero(Dims dims);

    const Matrix& matrix() const { return m_; }
    Dims dims() const { return dims_; }
    int dim() const { return static_cast<int>(m_.rows()); }
    bool is_hermitian() const { return traits_.hermitian; }
    bool is_unitary() const { return traits_.unitary; }
    OperatorTraits traits() const { return traits_; }

    Operator adjoint() const;
    cplx trace() const { return m_.trace(); }
    cplx operator()(int r, int c) const { return m_(r, c); }
    double max_abs() const;

    Operator& operator+=(const Operator& o);
    Operator& operator-=(const Operator& o);
    Operator& operator*=(cplx s);

    friend Operator operator+(Operator a, const Operator& b) { return a += b; }
    friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
    friend Operator operator*(const Operator& a, const Operator& b);
    friend Operator operator*(Operator a, cplx s) { return a *= s; }
    friend Operator operator*(cplx s, Operator a) { return a *= s; }

private:
    Matrix m_;
    Dims dims_{};
    OperatorTraits traits_{};
};

// Boson operators on a Fock space truncated to N levels.
Matrix fock_annihilate(int N);
Matrix fock_create(int N);
Matrix fock_number(int N);

// Spin operators (2x2).
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix sigma_plus();
Matrix sigma_minus();

Matrix kron(const Matrix& a, const Matrix& b);

// spin (x) boson with dimension checks.
Operator embed(const Matrix& spin, const Matrix& boson);
Operator embed_spin(const Matrix& spin, int N);
Operator embed_boson(const Matrix& boson);

// D(alpha) = exp(alpha a^dag - conj(alpha) a), exponentiated on the truncated space.
Matrix displacement(cplx alpha, int N);

// S(z) = exp(z/2 (a^dag^2 - a^2)); raises if the vacuum spreads into the top four levels.
Matrix squeeze(double z, int N);

struct EigenDecomposition {
    RealVector values;
    Matrix vectors;
};

// Hermitian eigendecomposition, ascending eigenvalues.
EigenDecomposition eigh(const Matrix& h);

Matrix herm_sqrt(const Matrix& a);

// exp(a).  Hermitian and anti-Hermitian inputs go through an eigendecomposition,
// everything else through Pade scaling and squaring.
Matrix expm(const Matrix& a);

// exp(-i h t) for Hermitian h.
Matrix propagator(const Matrix& h, double t);

bool is_hermitian(const Matrix& a, double tol = 1e-12);
bool is_unitary(const Matrix& a, double tol = 1e-10);

// Maximum entrywise distance restricted to spin (x) {|0>..|keep-1>}.
double interior_distance(const Matrix& a, const Matrix& b, Dims dims, int keep);

// Population of the top `levels` Fock states (both spin states).
double top_fock_population(const Matrix& rho, Dims dims, int levels = 4);

Vector basis_state(Dims dims, int spin, int fock);

class DensityMatrix {
    /*
    Normalized, Hermitian, positive operator.  Construction checks
    |Tr rho - 1| <= trace_tol, Hermiticity to 1e-10 and min eigenvalue >= -1e-8.
    */
public:
    DensityMatrix() = default;
    explicit DensityMatrix(Operator op, double trace_tol = 1e-8);
    DensityMatrix(Matrix m, Dims dims, double trace_tol = 1e-8);

    static DensityMatrix pure(const Vector& psi, Dims dims);

    const Operator& op() const { return op_; }
    const Matrix& matrix() const { return op_.matrix(); }
    Dims dims() const { return op_.dims(); }
    int dim() const { return op_.dim(); }
    double trace_deviation() const { return std::abs(op_.trace() - 1.0); }

private:
    Operator op_;
};

// Tr(op rho)
cplx expectation(const Matrix& op, const Matrix& rho);

}  // namespace sbsim
