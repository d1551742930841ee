#include "stackgame/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace stackgame {

ObservationHistory::ObservationHistory(GameParams params) : params_(params) {
    params_.validate();
}

void ObservationHistory::add(const QuadraticIncentive& gamma, double y) {
    add(Observation{gamma.xi1, gamma.xi2, y});
}

void ObservationHistory::add(const Observation& obs) {
    if (!std::isfinite(obs.xi1) || !std::isfinite(obs.xi2) || !std::isfinite(obs.y))
        throw InvalidScenarioError("observation contains a non-finite entry");
    if (obs.y < 0.0 || obs.y > params_.ybar)
        throw InvalidScenarioError("response " + std::to_string(obs.y) +
                                   " outside [0, " + std::to_string(params_.ybar) +
                                   "]");
    obs_.push_back(obs);
}

bool ObservationHistory::all_interior() const {
    for (const auto& o : obs_)
        if (o.y <= 0.0 || o.y >= params_.ybar) return false;
    return true;
}

Eigen::VectorXd build_rhs(const ObservationHistory& history) {
    const auto n = static_cast<Eigen::Index>(history.size());
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& o = history.observations()[static_cast<std::size_t>(i)];
        b[i] = history.params().price - o.xi1 - 2.0 * o.xi2 * o.y;
    }
    return b;
}

Eigen::MatrixXd build_design_matrix(const ObservationHistory& history, int order) {
    const auto n = static_cast<Eigen::Index>(history.size());
    Eigen::MatrixXd M(n, order + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        double y = history.observations()[static_cast<std::size_t>(i)].y;
        double pw = 1.0;
        for (int k = 0; k <= order; ++k) {
            M(i, k) = static_cast<double>(k + 1) * pw;
            pw *= y;
        }
    }
    return M;
}

EstimationResult minimal_order_fit(const ObservationHistory& history, double fit_tol,
                                   int max_order) {
    if (history.empty())
        throw InvalidScenarioError("cannot fit an empty history");
    if (!history.all_interior())
        throw NonInteriorHistoryError(
            "history holds boundary responses; the range test needs interior data");

    const int k = static_cast<int>(history.size()) - 1;
    const int cap = std::min(max_order, std::max(k, 1));
    const auto n = static_cast<Eigen::Index>(history.size());
    Eigen::VectorXd b = build_rhs(history);
    const double scale = std::max(b.norm(), 1.0);

    // centering and scaling the nodes keeps the power basis workable even
    // when the loop has clustered recent responses; raw y^k columns would
    // cost several digits of the recovered coefficients
    double center = 0.0;
    for (const auto& o : history.observations()) center += o.y;
    center /= static_cast<double>(history.size());
    double spread = 0.0;
    for (const auto& o : history.observations())
        spread = std::max(spread, std::abs(o.y - center));
    if (spread == 0.0) spread = 1.0;

    // the clustered-node solves below run in extended precision: late-stage
    // histories hold responses separated by ~1e-5 or less, and the extra
    // mantissa bits keep the recovered coefficients accurate through that
    using MatLd = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    using VecLd = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
    VecLd bl = b.cast<long double>();

    EstimationResult best;
    bool have_best = false;
    for (int j = 1; j <= cap; ++j) {
        MatLd V(n, j + 1);
        for (Eigen::Index i = 0; i < n; ++i) {
            long double u =
                (static_cast<long double>(
                     history.observations()[static_cast<std::size_t>(i)].y) -
                 center) /
                spread;
            long double pw = 1.0L;
            for (int q = 0; q <= j; ++q) {
                V(i, q) = pw;
                pw *= u;
            }
        }
        Eigen::CompleteOrthogonalDecomposition<MatLd> cod(V);

        EstimationResult r;
        r.order = j;
        r.method = FitMethod::range_test;
        if (cod.rank() == j + 1) {
            VecLd beta = cod.solve(bl);
            // expand p((y - center)/spread) back into derivative coefficients
            std::vector<long double> d{beta[j]};
            for (int q = j - 1; q >= 0; --q) {
                std::vector<long double> nx(d.size() + 1, 0.0L);
                for (std::size_t t = 0; t < d.size(); ++t) {
                    nx[t + 1] += d[t] / spread;
                    nx[t] -= d[t] * center / spread;
                }
                nx[0] += beta[q];
                d = std::move(nx);
            }
            r.alpha.resize(d.size());
            for (std::size_t m = 0; m < d.size(); ++m)
                r.alpha[m] =
                    static_cast<double>(d[m] / static_cast<long double>(m + 1));
            r.residual = static_cast<double>((V * beta - bl).norm());
            r.rank = j + 1;
            r.rank_deficient = false;
        } else {
            // a deficient system keeps the documented minimum-norm solution
            // in the original coefficient basis
            Eigen::MatrixXd M = build_design_matrix(history, j);
            Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> codm(M);
            Eigen::VectorXd alpha = codm.solve(b);
            r.alpha.assign(alpha.data(), alpha.data() + alpha.size());
            r.residual = (M * alpha - b).norm();
            r.rank = codm.rank();
            r.rank_deficient = codm.rank() < M.cols();
        }
        double relative = r.residual / scale;
        r.relative_residual = relative;

        if (relative <= fit_tol) {
            r.converged = true;
            return r;
        }
        if (!have_best || relative < best.relative_residual) {
            best = r;
            have_best = true;
        }
    }
    best.converged = false;
    return best;
}

namespace {

// phi and its gradient in preconditioned coordinates w = [c; u1; u2] with
// alpha = A c, l1 = e1 .* u1, l2 = e2 .* u2:
//   phi = sum_i (stat_i)^2 + (l1_i y_i)^2 + (l2_i (y_i - ybar))^2
//       = |Mt c - b - e1.*u1 + e2.*u2|^2 + |p1.*u1|^2 + |p2.*u2|^2
// where Mt = M A, p1 = e1 .* y, p2 = e2 .* (y - ybar).
struct KktProblem {
    Eigen::MatrixXd Mt;
    Eigen::VectorXd b, e1, e2, p1, p2;
    Eigen::Index m, n;

    double eval(const Eigen::VectorXd& w, Eigen::VectorXd* grad) const {
        Eigen::VectorXd s = Mt * w.head(m) - b -
                            w.segment(m, n).cwiseProduct(e1) +
                            w.tail(n).cwiseProduct(e2);
        Eigen::VectorXd c1 = w.segment(m, n).cwiseProduct(p1);
        Eigen::VectorXd c2 = w.tail(n).cwiseProduct(p2);
        double phi = s.squaredNorm() + c1.squaredNorm() + c2.squaredNorm();
        if (grad) {
            grad->resize(m + 2 * n);
            grad->head(m) = 2.0 * (Mt.transpose() * s);
            grad->segment(m, n) =
                -2.0 * s.cwiseProduct(e1) + 2.0 * c1.cwiseProduct(p1);
            grad->tail(n) = 2.0 * s.cwiseProduct(e2) + 2.0 * c2.cwiseProduct(p2);
        }
        return phi;
    }
};

}  // namespace

EstimationResult kkt_fit(const ObservationHistory& history, int order,
                         const CoefficientBox& box, const KktSolverConfig& cfg) {
    if (history.empty())
        throw InvalidScenarioError("cannot fit an empty history");
    if (order < 0)
        throw InvalidScenarioError("negative model order");

    Eigen::MatrixXd M = build_design_matrix(history, order);
    Eigen::VectorXd b = build_rhs(history);
    Eigen::Index m = order + 1;
    Eigen::Index n = static_cast<Eigen::Index>(history.size());
    Eigen::VectorXd y(n), dhi(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        y[i] = history.observations()[static_cast<std::size_t>(i)].y;
        dhi[i] = y[i] - history.params().ybar;
    }

    // The descent runs on preconditioned coordinates: raw 1, 2y, 3y^2, ...
    // columns are both badly scaled and highly correlated, which makes the
    // tail of a plain gradient descent creep.  With no coefficient box the
    // alpha block is reparameterized through a QR factorization (M A has
    // orthonormal columns); a box forces the milder diagonal scaling so the
    // bounds stay axis-aligned.  Multipliers are always scaled diagonally.
    bool boxed = !box.lower.empty() || !box.upper.empty();
    Eigen::MatrixXd A;
    Eigen::VectorXd diag = Eigen::VectorXd::Ones(m);
    bool qr_coords = false;
    if (!boxed && n >= m) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
        if (qr.rank() == m) {
            Eigen::MatrixXd R =
                qr.matrixR().topLeftCorner(m, m).triangularView<Eigen::Upper>();
            Eigen::MatrixXd Rinv = R.triangularView<Eigen::Upper>().solve(
                Eigen::MatrixXd::Identity(m, m));
            A = qr.colsPermutation() * Rinv;
            qr_coords = true;
        }
    }
    if (!qr_coords) {
        for (Eigen::Index k = 0; k < m; ++k) {
            double c = M.col(k).norm();
            diag[k] = c > 0.0 ? 1.0 / c : 1.0;
        }
        A = diag.asDiagonal();
    }

    KktProblem prob;
    prob.Mt = M * A;
    prob.b = b;
    prob.m = m;
    prob.n = n;
    prob.e1 = (1.0 + y.array().square()).sqrt().inverse().matrix();
    prob.e2 = (1.0 + dhi.array().square()).sqrt().inverse().matrix();
    prob.p1 = prob.e1.cwiseProduct(y);
    prob.p2 = prob.e2.cwiseProduct(dhi);

    auto project = [&](Eigen::VectorXd& w) {
        for (Eigen::Index i = 0; i < m; ++i) {
            auto idx = static_cast<std::size_t>(i);
            if (idx < box.lower.size())
                w[i] = std::max(w[i], box.lower[idx] / diag[i]);
            if (idx < box.upper.size())
                w[i] = std::min(w[i], box.upper[idx] / diag[i]);
        }
        w.segment(m, 2 * n) = w.segment(m, 2 * n).cwiseMax(0.0);
    };

    Eigen::VectorXd w = Eigen::VectorXd::Zero(m + 2 * n);
    project(w);
    Eigen::VectorXd g;
    double phi = prob.eval(w, &g);

    // near-unit columns bound the preconditioned curvature by twice the
    // Jacobian's squared Frobenius norm; Barzilai-Borwein takes over after
    // one step
    double big = 2.0 * (prob.Mt.squaredNorm() + prob.e1.squaredNorm() +
                        prob.e2.squaredNorm() + prob.p1.squaredNorm() +
                        prob.p2.squaredNorm());
    double t = cfg.initial_step > 0.0 ? cfg.initial_step : 1.0 / std::max(big, 1.0);

    EstimationResult r;
    if (cfg.record_objective_trace) r.objective_trace.push_back(phi);

    bool converged = false;
    Eigen::VectorXd wp, gp;
    for (int it = 0; it < cfg.max_iters; ++it) {
        double tk = t;
        // long trial: the projection then lands every multiplier the optimum
        // pins exactly on the boundary, and backtracking walks the step down
        // until the free coordinates tolerate it
        if (cfg.sweep_interval > 0 && (it + 1) % cfg.sweep_interval == 0)
            tk = std::max(tk, 1e6);
        bool accepted = false;
        double phip = phi;
        for (int bt = 0; bt < 200; ++bt) {
            wp = w - tk * g;
            project(wp);
            double move = (wp - w).squaredNorm();
            if (move == 0.0) break;  // projection pinned every coordinate
            phip = prob.eval(wp, nullptr);
            if (phip <= phi - cfg.armijo / tk * move) {
                accepted = true;
                break;
            }
            tk *= cfg.backtrack;
        }
        if (!accepted) {
            converged = true;  // no feasible descent step remains
            break;
        }
        prob.eval(wp, &gp);
        Eigen::VectorXd dw = wp - w;
        Eigen::VectorXd dg = gp - g;
        double curve = dw.dot(dg);
        t = (std::isfinite(curve) && curve > 0.0) ? dw.squaredNorm() / curve
                                                  : tk * cfg.step_growth;
        t = std::clamp(t, 1e-18, 1e18);
        double decrease = phi - phip;
        bool flat = decrease < cfg.decrease_tol * phi;
        w = wp;
        g = gp;
        phi = phip;
        if (cfg.record_objective_trace) r.objective_trace.push_back(phi);
        if (flat) {
            converged = true;
            break;
        }
    }

    Eigen::VectorXd alpha = A * w.head(m);
    Eigen::VectorXd l1 = prob.e1.cwiseProduct(w.segment(m, n));
    Eigen::VectorXd l2 = prob.e2.cwiseProduct(w.tail(n));
    r.alpha.assign(alpha.data(), alpha.data() + m);
    r.order = order;
    r.method = FitMethod::kkt_residual;
    r.residual = phi;
    r.relative_residual = phi / std::max(b.norm(), 1.0);
    r.converged = converged;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(M);
    r.rank = cod.rank();
    r.rank_deficient = cod.rank() < M.cols();
    r.lambdas.resize(static_cast<std::size_t>(n));
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        r.lambdas[static_cast<std::size_t>(i)] = {l1[i], l2[i]};
        worst = std::max(worst, std::max(-y[i], dhi[i]));
    }
    r.r_ineq_max = std::max(worst, 0.0);
    return r;
}

}  // namespace stackgame
