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
#include <random>

#include <gtest/gtest.h>

#include "sbsim/frame.hpp"
#include "test_util.hpp"

using namespace sbsim;

namespace {

FrameSpec spec(double eta) {
    FrameSpec f;
    f.bias = -0.93;
    f.nu = 1.0;
    f.nu_tilde = 0.02;
    f.omega_tilde = 0.05;
    f.eta = eta;
    f.t0 = 0.4;
    return f;
}

}  // namespace

TEST(TOperator, BlockStructureAndUnitarity) {
    const int N = 20;
    Matrix T = T_operator(cplx(0.0, 0.3), N);
    EXPECT_TRUE(is_unitary(T, 1e-12));
    Matrix D = displacement(cplx(0.0, 0.3), N);
    const double s = 1.0 / std::sqrt(2.0);
    EXPECT_LT((T.block(0, 0, N, N) - s * D.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((T.block(N, N, N, N) - s * D).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((T.block(N, 0, N, N) + s * D.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(TOperator, ZeroAlphaIsHadamardOnSpin) {
    Matrix T = T_operator(0.0, 3);
    Matrix h(2, 2);
    h << 1.0, 1.0, -1.0, 1.0;
    h /= std::sqrt(2.0);
    EXPECT_LT((T - kron(h, Matrix::Identity(3, 3))).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(TOperator, MapsSigmaXToMinusSigmaZ) {
    const int N = 12;
    Matrix T = T_operator(cplx(0.0, 0.4), N);
    Matrix X = kron(pauli_x(), Matrix::Identity(N, N));
    Matrix Z = kron(pauli_z(), Matrix::Identity(N, N));
    EXPECT_LT((T.adjoint() * X * T + Z).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Gamma, MatchesIndependentProduct) {
    // U_b^dag T^dag(i eta/2) U_a with every factor from an independent series
    const int N = 16;
    FrameSpec f = spec(0.3);
    const Matrix a = fock_annihilate(N);
    const cplx alpha(0.0, 0.15);
    Matrix Dg = testutil::taylor_expm(alpha * a.adjoint() - std::conj(alpha) * a);
    const double s = 1.0 / std::sqrt(2.0);
    Matrix T(2 * N, 2 * N);
    T << s * Dg.adjoint(), s * Dg, -s * Dg.adjoint(), s * Dg;
    Matrix hb = kron(Matrix::Identity(2, 2), fock_number(N)) * (f.nu - f.nu_tilde) -
                kron(pauli_z(), Matrix::Identity(N, N)) * (0.5 * f.omega_tilde);
    FrameMap fm(f, N);
    for (double t : {0.4, 1.0, 7.3, -3.0}) {
        const double tau = t - f.t0;
        Matrix Ua = testutil::taylor_expm(kron(pauli_x(), Matrix::Identity(N, N)) * cplx(0.0, 0.5 * tau * f.bias));
        Matrix Ub = testutil::taylor_expm(hb * cplx(0.0, -tau));
        Matrix want = Ub.adjoint() * T.adjoint() * Ua;
        EXPECT_LT((fm.gamma(t) - want).cwiseAbs().maxCoeff(), 1e-11) << t;
        EXPECT_LT((Gamma(t, f, N) - want).cwiseAbs().maxCoeff(), 1e-11) << t;
    }
}

TEST(Gamma, UnitaryAtAllTimes) {
    FrameMap fm(spec(0.8), 20);
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int i = 0; i < 10; ++i) EXPECT_TRUE(is_unitary(fm.gamma(u(rng)), 1e-11));
}

TEST(Gamma, ReducesToTdagAtT0) {
    FrameSpec f = spec(0.5);
    FrameMap fm(f, 10);
    EXPECT_LT((fm.gamma(f.t0) - fm.T().adjoint()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Gamma, ComponentRotations) {
    FrameSpec f = spec(0.2);
    FrameMap fm(f, 6);
    EXPECT_TRUE(is_unitary(fm.spin_rotation(3.0), 1e-14));
    EXPECT_TRUE(is_unitary(fm.boson_rotation(3.0), 1e-14));
    EXPECT_LT((fm.spin_rotation(f.t0) - Matrix::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(FrameMap, StructuredTransformMatchesConjugation) {
    const int N = 10;
    SystemParams p;
    p.nu = 1.0;
    p.eta = 0.3;
    p.drivings = {{0.2, -0.95}, {0.1, 1.05}};
    p.nu_tilde = 0.05;
    p.omega_tilde = 0.0;
    p.t0 = 0.3;
    FrameMap fm(FrameSpec::from(p), N);
    TimeOperator H = build_HG(p, N);
    TimeOperator g = fm.transform(H);
    EXPECT_FALSE(g.is_generic());
    for (double t : {0.3, 1.7, 12.0})
        EXPECT_LT((g.evaluate(t) - fm.conjugate(H.evaluate(t), t)).cwiseAbs().maxCoeff(), 1e-12) << t;
}

TEST(FrameMap, GenericTransformMatchesConjugation) {
    const int N = 6;
    FrameMap fm(spec(0.4), N);
    std::mt19937 rng(8);
    Matrix A = testutil::random_matrix(2 * N, rng);
    TimeOperator op = TimeOperator::generic(Dims{2, N}, [A](double t) { return Matrix(A * std::cos(t)); });
    TimeOperator g = fm.transform(op);
    EXPECT_TRUE(g.is_generic());
    EXPECT_LT((g.evaluate(2.0) - fm.conjugate(A * std::cos(2.0), 2.0)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FrameMap, ExactGeneratorMatchesFiniteDifference) {
    // Gamma H Gamma^dag + i dGamma/dt Gamma^dag, derivative by a five-point stencil
    const int N = 12;
    SystemParams p;
    p.nu = 1.0;
    p.eta = 0.4;
    p.drivings = {{0.3, -0.9}, {0.2, 1.1}};
    p.nu_tilde = 0.1;
    p.omega_tilde = 0.03;
    p.t0 = -0.2;
    FrameMap fm(FrameSpec::from(p), N);
    TimeOperator H = build_HG(p, N);
    TimeOperator gen = fm.exact_generator(H);
    const double h = 2e-4;
    for (double t : {-0.2, 0.9, 5.5}) {
        Matrix G = fm.gamma(t);
        Matrix dG = (8.0 * (fm.gamma(t + h) - fm.gamma(t - h)) - (fm.gamma(t + 2 * h) - fm.gamma(t - 2 * h))) / (12.0 * h);
        Matrix want = G * H.evaluate(t) * G.adjoint() + cplx(0.0, 1.0) * dG * G.adjoint();
        EXPECT_LT((gen.evaluate(t) - want).cwiseAbs().maxCoeff(), 1e-9) << t;
        EXPECT_TRUE(is_hermitian(gen.evaluate(t), 1e-12));
    }
}

TEST(FrameMap, LeftTransformUpToRightPhase) {
    const int N = 8;
    FrameMap fm(spec(0.3), N);
    std::mt19937 rng(2);
    Matrix W = testutil::random_matrix(2 * N, rng);
    TimeOperator lw = fm.left_transform(W);
    for (double t : {0.4, 3.3}) {
        Matrix got = lw.evaluate(t);
        Matrix want = fm.gamma(t) * W;
        for (int k = 0; k < 2 * N; ++k) {
            // each column differs by a unit phase
            const cplx ph = want.col(k).dot(got.col(k)) / want.col(k).squaredNorm();
            EXPECT_NEAR(std::abs(ph), 1.0, 1e-12);
            EXPECT_LT((got.col(k) - ph * want.col(k)).cwiseAbs().maxCoeff(), 1e-11);
        }
        // so |k><k| is phase free
        EXPECT_LT((got.col(3) * got.col(3).adjoint() - want.col(3) * want.col(3).adjoint()).cwiseAbs().maxCoeff(), 1e-11);
    }
}

TEST(FrameMap, InverseTransformRoundTrip) {
    const int N = 8;
    FrameMap fm(spec(0.3), N);
    std::mt19937 rng(6);
    Matrix F = testutil::random_matrix(2 * N, rng);
    TimeOperator inv = fm.inverse_transform(F);
    EXPECT_LT((fm.conjugate(inv.evaluate(1.3), 1.3) - F).cwiseAbs().maxCoeff(), 1e-11);
}

TEST(SimulatedFrame, RoundTripOnInteriorStates) {
    const int N = 30;
    FrameSpec f = spec(0.639);
    std::mt19937 rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        DensityMatrix rho(testutil::random_low_density(N, 6, rng), Dims{2, N});
        const double t = 10.0 * trial + 0.7;
        Warnings w;
        DensityMatrix n = to_simulated_frame(rho, t, f, &w);
        DensityMatrix back = from_simulated_frame(n, t, f, &w);
        EXPECT_LT((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_TRUE(w.empty());
    }
}

TEST(SimulatedFrame, LeakageWarning) {
    const int N = 8;
    Matrix rho = Matrix::Zero(2 * N, 2 * N);
    rho(N - 1, N - 1) = 1.0;
    Warnings w;
    to_simulated_frame(DensityMatrix(rho, Dims{2, N}), 0.0, spec(0.1), &w);
    EXPECT_FALSE(w.empty());
}

TEST(SimulatedFrame, VacuumSpinBecomesDisplacedSpinor) {
    // Gamma(t0) |0,g> = T^dag |0,g>: equal spin weights, boson amplitude of modulus eta/2
    const int N = 30;
    FrameSpec f = spec(0.5);
    Vector psi = basis_state(Dims{2, N}, SPIN_G, 0);
    Matrix rho = psi * psi.adjoint();
    Matrix out = to_simulated_frame(DensityMatrix(rho, Dims{2, N}), f.t0, f).matrix();
    const double pe = out.block(0, 0, N, N).trace().real();
    EXPECT_NEAR(pe, 0.5, 1e-12);
    Matrix a = kron(Matrix::Identity(2, 2), fock_annihilate(N));
    EXPECT_NEAR(expectation(a.adjoint() * a, out).real(), 0.0625, 1e-10);
}

TEST(SimulatedFrame, BlockadeSteadyStateMapsToFockGround) {
    // D(i eta/2)|m>|+>  ->  |m>|g> up to a phase
    const int N = 40;
    FrameSpec f = spec(0.639);
    f.bias = -1.0;
    Vector plus = Vector::Zero(2);
    plus(SPIN_E) = plus(SPIN_G) = 1.0 / std::sqrt(2.0);
    Vector boson = displacement(cplx(0.0, 0.3195), N).col(8);
    Vector psi = kron(plus, boson);
    const Dims d{2, N};
    Vector want = basis_state(d, SPIN_G, 8);
    for (double t : {f.t0, 3.0, 57.1}) {
        Matrix out = to_simulated_frame(DensityMatrix::pure(psi, d), t, f).matrix();
        EXPECT_GE((want.adjoint() * out * want)(0, 0).real(), 1.0 - 1e-6) << t;
    }
}

TEST(SimulatedFrame, PreparedInitialStateReturns) {
    const int N = 20;
    FrameSpec f = spec(0.5);
    FrameMap fm(f, N);
    Vector e0 = basis_state(Dims{2, N}, SPIN_E, 0);
    Matrix rhoG = fm.T() * e0 * e0.adjoint() * fm.T().adjoint();
    Matrix out = to_simulated_frame(DensityMatrix(rhoG, Dims{2, N}), f.t0, f).matrix();
    EXPECT_NEAR(out(SPIN_E * N, SPIN_E * N).real(), 1.0, 1e-12);
}

TEST(SimulatedFrame, ExpectationCovariance) {
    const int N = 16;
    FrameMap fm(spec(0.4), N);
    std::mt19937 rng(10);
    Matrix rhoG = testutil::random_low_density(N, 4, rng);
    Matrix g = testutil::random_matrix(2 * N, rng);
    Matrix O = g + g.adjoint();
    const double t = 4.2;
    const cplx lhs = expectation(O, fm.conjugate(rhoG, t));
    const cplx rhs = expectation(fm.inverse_conjugate(O, t), rhoG);
    EXPECT_LT(std::abs(lhs - rhs), 1e-9);
}

TEST(Gamma, TrivialSpecIsConstant) {
    FrameSpec f;
    f.nu = 1.0;
    f.nu_tilde = 1.0;
    FrameMap fm(f, 5);
    for (double t : {0.0, 2.0, 30.0}) EXPECT_LT((fm.gamma(t) - T_operator(0.0, 5).adjoint()).cwiseAbs().maxCoeff(), 1e-15);
}
