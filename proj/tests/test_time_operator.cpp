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

#include "sbsim/time_operator.hpp"
#include "test_util.hpp"

using namespace sbsim;

TEST(TimeOperator, StaticTermsFold) {
    const Dims d{2, 3};
    TimeOperator t(d);
    t.add(Matrix::Identity(6, 6)).add(Matrix::Identity(6, 6));
    EXPECT_EQ(t.terms().size(), 1u);
    EXPECT_TRUE(t.is_static());
    EXPECT_EQ(t.evaluate(3.0)(2, 2), cplx(2.0, 0.0));
}

TEST(TimeOperator, CoefficientsAndRotation) {
    const Dims d{2, 2};
    std::mt19937 rng(1);
    Matrix A = testutil::random_matrix(4, rng), B = testutil::random_matrix(4, rng);
    RealVector r(4);
    r << 0.3, -1.2, 2.5, 0.0;
    TimeOperator t(d);
    t.add(A).add(B, [](double s) { return std::polar(1.0, 0.7 * s); });
    t.set_rotation(r, 0.5);
    EXPECT_FALSE(t.is_static());
    const double s = 1.9;
    Matrix R = Matrix::Zero(4, 4);
    for (int j = 0; j < 4; ++j) R(j, j) = std::polar(1.0, r(j) * (s - 0.5));
    Matrix want = R * (A + std::polar(1.0, 0.7 * s) * B) * R.adjoint();
    EXPECT_LT((t.evaluate(s) - want).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_LT((t.adjoint().evaluate(s) - want.adjoint()).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(TimeOperator, GenericWrapper) {
    const Dims d{2, 1};
    TimeOperator t = TimeOperator::generic(d, [](double s) { return Matrix(Matrix::Identity(2, 2) * s); });
    EXPECT_TRUE(t.is_generic());
    EXPECT_FALSE(t.is_static());
    EXPECT_EQ(t.evaluate(4.0)(1, 1), cplx(4.0, 0.0));
    EXPECT_THROW(t.add(Matrix::Identity(2, 2)), Error);
}

TEST(TimeOperator, DimensionChecks) {
    TimeOperator t(Dims{2, 2});
    EXPECT_THROW(t.add(Matrix::Identity(3, 3)), Error);
    EXPECT_THROW(t.set_rotation(RealVector::Zero(3)), Error);
}
