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

#include "sbsim/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sbsim {

Matrix lindblad_rhs(const Matrix& H, const std::vector<std::pair<double, Matrix>>& channels,
                    const Matrix& rho) {
    if (H.rows() != rho.rows()) throw Error(ErrorKind::dimension_mismatch, "lindblad_rhs");
    Matrix out = -I_UNIT * (H * rho - rho * H);
    for (const auto& [gamma, F] : channels) {
        if (F.rows() != rho.rows()) throw Error(ErrorKind::dimension_mismatch, "lindblad_rhs channel");
        out += gamma * dissipator_action(F, rho);
    }
    return out;
}

namespace {

constexpr double TRACE_ABORT = 1e-6;
constexpr double LEAK_FLAG = 1e-4;
constexpr double LEAK_WARN = 1e-3;
constexpr double POSITIVITY_FLOOR = -1e-6;
constexpr double STABILITY_LIMIT = 0.1;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

class Engine {
    /*
    RK4 on rho~ = e^{i L s} V^dag rho V e^{-i L s}, where H0 = V L V^dag and
    s = t - t_start.  Every operator O becomes (V^dag O V) o P(s) with
    P_jk = u_j conj(u_k), u = e^{i L s}.  Without a frame V = I and P = 1.

    The right-hand side is X + X^dag with
        X = K rho + 1/2 sum G rho G^dag,  K = -i H_I - 1/2 sum G^dag G,
    which keeps rho exactly Hermitian.
    */
public:
    explicit Engine(const EvolutionProblem& p);
    Trajectory run();

private:
    struct Stage {
        Matrix K;
        std::vector<Matrix> G;
        std::vector<Matrix> W;
    };

    struct PreChannel {
        bool is_static = true;
        double sqrt_rate = 0.0;
        Matrix G;    // sqrt(rate) F in the frame basis (static case)
        Matrix GdG;  // G^dag G
        const TimeOperator* op = nullptr;
    };

    struct PreTransitions {
        bool is_static = true;
        Matrix W;  // frame basis (static case)
        Eigen::MatrixXd R;
        Matrix C;  // coefficient of rho'_jk in the decay / dephasing part
        const TimeOperator* basis = nullptr;
    };

    Matrix to_frame(const Matrix& m) const { return framed_ ? Matrix(V_.adjoint() * m * V_) : m; }
    void phases(double t, Vector& u) const;
    void eval(double t, Stage& st);
    void apply(const Stage& st, const Matrix& rho, Matrix& out);
    void record(double t, const Matrix& rho_frame, Trajectory& tr);
    double generator_norm(double t);

    const EvolutionProblem& p_;
    int d_;
    double t_start_;
    bool framed_ = false;
    Matrix V_;
    RealVector lambda_;
    Matrix H0_;

    bool h_generic_ = false;
    Matrix h_static_;  // frame basis, H0 removed
    std::vector<std::pair<Matrix, TimeOperator::Coefficient>> h_terms_;
    Matrix k_static_;  // -i h_static - 1/2 sum of static G^dag G

    std::vector<PreChannel> channels_;
    std::vector<PreTransitions> transitions_;
    bool trivial_ = false;

    // scratch
    Vector u_;
    Matrix P_, M_, X_, tmp_, tmp2_;
    bool leak_warned_ = false;
};

Engine::Engine(const EvolutionProblem& p) : p_(p) {
    if (p.t_grid.empty()) throw Error(ErrorKind::invalid_parameter, "empty time grid");
    for (std::size_t i = 1; i < p.t_grid.size(); ++i)
        if (!(p.t_grid[i] > p.t_grid[i - 1]))
            throw Error(ErrorKind::invalid_parameter, "time grid must be strictly increasing");
    if (!(p.dt > 0.0)) throw Error(ErrorKind::invalid_parameter, "integrator step must be positive");
    d_ = p.rho0.dim();
    if (p.hamiltonian.dim() != d_) throw Error(ErrorKind::dimension_mismatch, "Hamiltonian vs state");
    t_start_ = p.t_grid.front();

    if (p.frame) {
        if (p.frame->rows() != d_ || !is_hermitian(*p.frame, 1e-10))
            throw Error(ErrorKind::invalid_parameter, "frame generator must be Hermitian and match the state");
        framed_ = true;
        H0_ = 0.5 * (*p.frame + p.frame->adjoint());
        auto e = eigh(H0_);
        V_ = e.vectors;
        lambda_ = e.values;
    }

    const TimeOperator& H = p.hamiltonian;
    h_generic_ = H.is_generic() || H.has_rotation();
    h_static_ = Matrix::Zero(d_, d_);
    if (!h_generic_) {
        Matrix s = H.static_part();
        if (framed_) s -= H0_;
        h_static_ = to_frame(s);
        h_static_ = 0.5 * (h_static_ + h_static_.adjoint()).eval();
        for (const auto& term : H.terms())
            if (term.coeff) h_terms_.emplace_back(to_frame(term.op), term.coeff);
    }
    k_static_ = -I_UNIT * h_static_;

    for (const auto& ch : p.channels) {
        if (ch.jump.dim() != d_) throw Error(ErrorKind::dimension_mismatch, "channel '" + ch.label + "'");
        if (!(ch.rate >= 0.0)) throw Error(ErrorKind::invalid_parameter, "negative channel rate");
        if (ch.rate == 0.0) continue;
        PreChannel pc;
        pc.sqrt_rate = std::sqrt(ch.rate);
        pc.is_static = ch.jump.is_static();
        pc.op = &ch.jump;
        if (pc.is_static) {
            pc.G = to_frame(ch.jump.static_part()) * pc.sqrt_rate;
            pc.GdG = pc.G.adjoint() * pc.G;
            k_static_ -= 0.5 * pc.GdG;
        }
        channels_.push_back(std::move(pc));
    }

    for (const auto& ts : p.transitions) {
        if (ts.basis.dim() != d_ || ts.rates.rows() != d_ || ts.rates.cols() != d_ || ts.dephasing.size() != d_)
            throw Error(ErrorKind::dimension_mismatch, "transition set '" + ts.label + "'");
        if ((ts.rates.array() < 0.0).any()) throw Error(ErrorKind::invalid_parameter, "negative transition rate");
        PreTransitions pt;
        pt.is_static = ts.basis.is_static();
        pt.basis = &ts.basis;
        pt.R = ts.rates;
        if (pt.is_static) pt.W = framed_ ? Matrix(V_.adjoint() * ts.basis.static_part()) : ts.basis.static_part();
        const Eigen::VectorXd out_rate = ts.rates.colwise().sum().transpose();  // Lambda_k = sum_j R_jk
        pt.C.resize(d_, d_);
        for (int j = 0; j < d_; ++j)
            for (int k = 0; k < d_; ++k)
                pt.C(j, k) = ts.dephasing(j) * std::conj(ts.dephasing(k)) -
                             0.5 * (std::norm(ts.dephasing(j)) + std::norm(ts.dephasing(k)) + out_rate(j) +
                                    out_rate(k));
        transitions_.push_back(std::move(pt));
    }

    trivial_ = !h_generic_ && h_terms_.empty() && channels_.empty() && transitions_.empty() &&
               h_static_.cwiseAbs().maxCoeff() <= 1e-13 * std::max(1.0, H.static_part().cwiseAbs().maxCoeff());

    u_.resize(d_);
    P_.resize(d_, d_);
}

void Engine::phases(double t, Vector& u) const {
    const double s = t - t_start_;
    for (int j = 0; j < d_; ++j) u(j) = std::polar(1.0, lambda_(j) * s);
}

void Engine::eval(double t, Stage& st) {
    if (framed_) {
        phases(t, u_);
        P_.noalias() = u_ * u_.adjoint();
    }
    st.K = k_static_;
    if (h_generic_) {
        M_ = p_.hamiltonian.evaluate(t);
        if (framed_) M_ -= H0_;
        M_ = to_frame(M_);
        st.K.noalias() += -I_UNIT * 0.5 * (M_ + M_.adjoint());
    } else if (!h_terms_.empty()) {
        M_.setZero(d_, d_);
        for (const auto& [A, c] : h_terms_) M_ += c(t) * A;
        st.K.noalias() += -I_UNIT * 0.5 * (M_ + M_.adjoint());
    }
    st.G.resize(channels_.size());
    for (std::size_t k = 0; k < channels_.size(); ++k) {
        auto& pc = channels_[k];
        if (pc.is_static) {
            st.G[k] = pc.G;
        } else {
            st.G[k] = to_frame(pc.op->evaluate(t)) * pc.sqrt_rate;
            st.K.noalias() -= 0.5 * st.G[k].adjoint() * st.G[k];
        }
        if (framed_) st.G[k].array() *= P_.array();
    }
    if (framed_) st.K.array() *= P_.array();
    st.W.resize(transitions_.size());
    for (std::size_t k = 0; k < transitions_.size(); ++k) {
        auto& pt = transitions_[k];
        if (pt.is_static)
            st.W[k] = pt.W;
        else
            st.W[k] = framed_ ? Matrix(V_.adjoint() * pt.basis->evaluate(t)) : pt.basis->evaluate(t);
        if (framed_) st.W[k] = u_.asDiagonal() * st.W[k];
    }
}

void Engine::apply(const Stage& st, const Matrix& rho, Matrix& out) {
    X_.noalias() = st.K * rho;
    for (const auto& G : st.G) {
        tmp_.noalias() = G * rho;
        X_.noalias() += 0.5 * tmp_ * G.adjoint();
    }
    out.noalias() = X_ + X_.adjoint();
    for (std::size_t k = 0; k < transitions_.size(); ++k) {
        const Matrix& W = st.W[k];
        const auto& pt = transitions_[k];
        tmp_.noalias() = W.adjoint() * rho;
        tmp2_.noalias() = tmp_ * W;  // rho'
        Vector pops = tmp2_.diagonal();
        tmp2_.array() *= pt.C.array();
        tmp2_.diagonal() += (pt.R * pops.real()).cast<cplx>();
        tmp_.noalias() = W * tmp2_;
        out.noalias() += tmp_ * W.adjoint();
    }
}

double Engine::generator_norm(double t) {
    Matrix h;
    if (h_generic_) {
        h = p_.hamiltonian.evaluate(t);
        if (framed_) h -= H0_;
    } else {
        h = h_static_;
        for (const auto& [A, c] : h_terms_) h += c(t) * A;
    }
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

void Engine::record(double t, const Matrix& rho_frame, Trajectory& tr) {
    Matrix rho;
    if (framed_) {
        phases(t, u_);
        tmp_ = rho_frame;
        tmp_.array() *= (u_.conjugate() * u_.transpose()).array();
        rho = V_ * tmp_ * V_.adjoint();
    } else {
        rho = rho_frame;
    }
    const Dims dims = p_.rho0.dims();
    const double dev = std::abs(rho.trace() - 1.0);
    const std::string who = p_.label.empty() ? "" : " [" + p_.label + "]";
    // NaN also aborts
    if (!(dev <= TRACE_ABORT))
        throw Error(ErrorKind::numerical_quality, "trace deviation " + fmt(dev) + " at t=" + fmt(t) + who +
                                                      " after " + std::to_string(tr.steps) + " steps");
    tr.times.push_back(t);
    tr.trace_deviation.push_back(dev);
    tr.purity.push_back(purity(rho));
    const double leak = top_fock_population(rho, dims, 4);
    tr.leakage.push_back(leak);
    std::vector<cplx> ex;
    for (const auto& o : p_.observables) ex.push_back(expectation(o.op, rho));
    tr.expectations.push_back(std::move(ex));
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
    const double mine = es.eigenvalues().minCoeff();
    tr.min_eigenvalue.push_back(mine);
    if (p_.keep_states) tr.states.push_back(rho);

    if (leak > LEAK_FLAG) tr.leakage_flag = true;
    if (leak > LEAK_WARN && !leak_warned_) {
        leak_warned_ = true;
        tr.warnings.push_back("leakage " + fmt(leak) + " > 1e-3 at t=" + fmt(t) + who);
    }
    if (mine < POSITIVITY_FLOOR && !tr.positivity_flag) {
        tr.positivity_flag = true;
        tr.warnings.push_back("min eigenvalue " + fmt(mine) + " at t=" + fmt(t) + who);
    }
}

Trajectory Engine::run() {
    Trajectory tr;
    for (const auto& o : p_.observables) {
        if (o.op.rows() != d_) throw Error(ErrorKind::dimension_mismatch, "observable '" + o.name + "'");
        tr.observable_names.push_back(o.name);
    }
    const auto& grid = p_.t_grid;
    Matrix rho = to_frame(p_.rho0.matrix());
    record(grid.front(), rho, tr);

    Stage a, m, e;
    if (!trivial_) eval(grid.front(), a);
    Matrix k1, k2, k3, k4, y;
    double worst_dt = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double t0 = grid[i - 1];
        const double span = grid[i] - t0;
        const long nsub = std::max(1L, static_cast<long>(std::ceil(span / p_.dt - 1e-9)));
        const double h = span / nsub;
        worst_dt = std::max(worst_dt, h);
        if (trivial_) {
            record(grid[i], rho, tr);
            continue;
        }
        for (long s = 0; s < nsub; ++s) {
            const double t = t0 + s * h;
            const double t1 = (s + 1 == nsub) ? grid[i] : t0 + (s + 1) * h;
            eval(t + 0.5 * h, m);
            eval(t1, e);
            apply(a, rho, k1);
            y = rho + (0.5 * h) * k1;
            apply(m, y, k2);
            y = rho + (0.5 * h) * k2;
            apply(m, y, k3);
            y = rho + h * k3;
            apply(e, y, k4);
            rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            std::swap(a, e);
            ++tr.steps;
        }
        record(grid[i], rho, tr);
    }

    if (!trivial_) {
        for (double t : grid) tr.stability = std::max(tr.stability, worst_dt * generator_norm(t));
        if (tr.stability > STABILITY_LIMIT)
            tr.warnings.push_back("stability heuristic dt*||H - H0|| = " + fmt(tr.stability) + " > 0.1" +
                                  (p_.label.empty() ? "" : " [" + p_.label + "]"));
    }
    return tr;
}

}  // namespace

Trajectory evolve(const EvolutionProblem& p) { return Engine(p).run(); }

double fidelity(const Matrix& rho, const Matrix& sigma) {
    if (rho.rows() != sigma.rows()) throw Error(ErrorKind::dimension_mismatch, "fidelity");
    auto e = eigh(0.5 * (rho + rho.adjoint()));
    const double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
    if (e.values.minCoeff() < -1e-8 * scale) throw Error(ErrorKind::not_psd, "fidelity argument");
    RealVector r = e.values.cwiseMax(0.0).cwiseSqrt();
    const Matrix sq = e.vectors * r.cast<cplx>().asDiagonal() * e.vectors.adjoint();
    Matrix M = sq * sigma * sq;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (M + M.adjoint()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8 * scale) throw Error(ErrorKind::not_psd, "fidelity argument");
    // eigenvalues at roundoff level would each add ~1e-8 after the square root
    const double floor = 1e-14 * std::max(1e-300, es.eigenvalues().cwiseAbs().maxCoeff());
    double s = 0.0;
    for (double v : es.eigenvalues())
        if (v > floor) s += std::sqrt(v);
    return std::clamp(s * s, 0.0, 1.0);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (!(rho.dims() == sigma.dims())) throw Error(ErrorKind::dimension_mismatch, "fidelity");
    return fidelity(rho.matrix(), sigma.matrix());
}

double purity(const Matrix& rho) { return (rho.array() * rho.transpose().array()).sum().real(); }

double purity(const DensityMatrix& rho) { return purity(rho.matrix()); }

DensityMatrix thermal_state(double nbar, int N, double* tail) {
    if (!(nbar >= 0.0)) throw Error(ErrorKind::invalid_parameter, "mean occupation must be >= 0");
    if (N < 1) throw Error(ErrorKind::invalid_dimension, "Fock truncation must be positive");
    const double q = nbar / (nbar + 1.0);
    const double lost = std::pow(q, N);
    if (lost >= 1e-8)
        throw Error(ErrorKind::truncation_too_small,
                    "thermal tail beyond N=" + std::to_string(N) + " is " + fmt(lost));
    Matrix rho = Matrix::Zero(N, N);
    double p = 1.0 / (nbar + 1.0), sum = 0.0;
    for (int k = 0; k < N; ++k) {
        rho(k, k) = p;
        sum += p;
        p *= q;
    }
    rho /= sum;
    if (tail) *tail = lost;
    return DensityMatrix(std::move(rho), Dims{1, N});
}

DensityMatrix coherent_state(cplx alpha, int N) {
    if (N < 2) throw Error(ErrorKind::invalid_dimension, "Fock truncation must be at least 2");
    if (std::norm(alpha) > N / 4.0)
        throw Error(ErrorKind::truncation_too_small, "|alpha|^2 exceeds N/4");
    Vector psi = displacement(alpha, N).col(0);
    return DensityMatrix::pure(psi, Dims{1, N});
}

DensityMatrix fock_state(int m, int N) {
    if (m < 0 || m >= N) throw Error(ErrorKind::invalid_dimension, "Fock state outside truncation");
    Vector psi = Vector::Zero(N);
    psi(m) = 1.0;
    return DensityMatrix::pure(psi, Dims{1, N});
}

DensityMatrix product_state(const Vector& spin, const DensityMatrix& boson) {
    if (spin.size() != 2) throw Error(ErrorKind::dimension_mismatch, "spin ket must have two entries");
    const Vector s = spin / spin.norm();
    Matrix rho = kron(s * s.adjoint(), boson.matrix());
    return DensityMatrix(std::move(rho), Dims{2, boson.dims().total()});
}

std::vector<double> uniform_grid(double t0, double t1, int samples) {
    if (samples < 2 || !(t1 > t0)) throw Error(ErrorKind::invalid_parameter, "grid needs t1 > t0 and >= 2 samples");
    std::vector<double> g(samples);
    for (int i = 0; i < samples; ++i) g[i] = t0 + (t1 - t0) * i / (samples - 1);
    g.back() = t1;
    return g;
}

}  // namespace sbsim
