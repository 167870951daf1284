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

#include <functional>
#include <vector>

#include "sbsim/operator.hpp"

namespace sbsim {

class TimeOperator {
    /*
    Time-dependent operator

        O(t) = R(t) [ sum_i c_i(t) A_i ] R(t)^dag,   R(t) = exp(i diag(r) (t - t_r))

    with static matrices A_i and scalar coefficients c_i (an empty coefficient
    means 1).  The rotation is optional.  Operators that do not fit this shape
    are wrapped as a generic callback.
    */
public:
    using Coefficient = std::function<cplx(double)>;
    using Generic = std::function<Matrix(double)>;

    struct Term {
        Matrix op;
        Coefficient coeff;
    };

    TimeOperator() = default;
    explicit TimeOperator(Dims dims) : dims_(dims) {}
    static TimeOperator constant(const Operator& op);
    static TimeOperator generic(Dims dims, Generic fn);

    TimeOperator& add(Matrix op, Coefficient coeff = {});
    TimeOperator& add(const Operator& op, Coefficient coeff = {});
    TimeOperator& set_rotation(RealVector r, double origin = 0.0);
    TimeOperator& set_hermitian(bool h) {
        hermitian_ = h;
        return *this;
    }

    Matrix evaluate(double t) const;
    Operator at(double t) const;

    Dims dims() const { return dims_; }
    int dim() const { return dims_.total(); }
    bool is_generic() const { return static_cast<bool>(generic_); }
    bool has_rotation() const { return rotation_.size() > 0; }
    bool is_static() const;
    bool is_hermitian() const { return hermitian_; }

    const std::vector<Term>& terms() const { return terms_; }
    const RealVector& rotation() const { return rotation_; }
    double rotation_origin() const { return rotation_origin_; }

    // Sum of the static (coefficient-free) terms.
    Matrix static_part() const;

    TimeOperator adjoint() const;

private:
    Dims dims_{};
    std::vector<Term> terms_;
    RealVector rotation_;
    double rotation_origin_ = 0.0;
    Generic generic_;
    bool hermitian_ = false;
};

// Multiplies entry (j,k) by exp(i (r_j - r_k) s).
void apply_rotation(Matrix& m, const RealVector& r, double s);

}  // namespace sbsim
