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

#include "sbsim/time_operator.hpp"

namespace sbsim {

TimeOperator TimeOperator::constant(const Operator& op) {
    TimeOperator t(op.dims());
    t.add(op.matrix());
    t.hermitian_ = op.is_hermitian();
    return t;
}

TimeOperator TimeOperator::generic(Dims dims, Generic fn) {
    TimeOperator t(dims);
    t.generic_ = std::move(fn);
    return t;
}

TimeOperator& TimeOperator::add(Matrix op, Coefficient coeff) {
    if (generic_) throw Error(ErrorKind::invalid_parameter, "cannot add terms to a generic operator");
    if (op.rows() != dims_.total() || op.cols() != dims_.total())
        throw Error(ErrorKind::dimension_mismatch, "time-operator term");
    if (!coeff) {
        // fold into an existing static term
        for (auto& term : terms_)
            if (!term.coeff) {
                term.op += op;
                return *this;
            }
    }
    terms_.push_back({std::move(op), std::move(coeff)});
    return *this;
}

TimeOperator& TimeOperator::add(const Operator& op, Coefficient coeff) {
    if (!(op.dims() == dims_)) throw Error(ErrorKind::dimension_mismatch, "time-operator term");
    return add(op.matrix(), std::move(coeff));
}

TimeOperator& TimeOperator::set_rotation(RealVector r, double origin) {
    if (r.size() != dims_.total()) throw Error(ErrorKind::dimension_mismatch, "rotation vector");
    rotation_ = std::move(r);
    rotation_origin_ = origin;
    return *this;
}

bool TimeOperator::is_static() const {
    if (generic_ || has_rotation()) return false;
    for (const auto& term : terms_)
        if (term.coeff) return false;
    return true;
}

Matrix TimeOperator::static_part() const {
    Matrix m = Matrix::Zero(dims_.total(), dims_.total());
    for (const auto& term : terms_)
        if (!term.coeff) m += term.op;
    return m;
}

void apply_rotation(Matrix& m, const RealVector& r, double s) {
    const Eigen::Index d = m.rows();
    Vector u(d);
    for (Eigen::Index j = 0; j < d; ++j) u(j) = std::polar(1.0, r(j) * s);
    m.array() *= (u * u.adjoint()).array();
}

Matrix TimeOperator::evaluate(double t) const {
    if (generic_) return generic_(t);
    Matrix m = Matrix::Zero(dims_.total(), dims_.total());
    for (const auto& term : terms_) {
        if (term.coeff)
            m += term.coeff(t) * term.op;
        else
            m += term.op;
    }
    if (has_rotation()) apply_rotation(m, rotation_, t - rotation_origin_);
    return m;
}

Operator TimeOperator::at(double t) const {
    Matrix m = evaluate(t);
    if (hermitian_) m = 0.5 * (m + m.adjoint()).eval();
    return Operator(std::move(m), dims_, {hermitian_, false});
}

TimeOperator TimeOperator::adjoint() const {
    if (generic_) {
        auto fn = generic_;
        TimeOperator r = generic(dims_, [fn](double t) { return Matrix(fn(t).adjoint()); });
        r.hermitian_ = hermitian_;
        return r;
    }
    TimeOperator r(dims_);
    for (const auto& term : terms_) {
        if (term.coeff) {
            auto c = term.coeff;
            r.terms_.push_back({term.op.adjoint(), [c](double t) { return std::conj(c(t)); }});
        } else {
            r.terms_.push_back({term.op.adjoint(), {}});
        }
    }
    r.rotation_ = rotation_;
    r.rotation_origin_ = rotation_origin_;
    r.hermitian_ = hermitian_;
    return r;
}

}  // namespace sbsim
