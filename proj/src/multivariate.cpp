#include "fisherrao/multivariate.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "fisherrao/hyperbolic.hpp"
#include "fisherrao/quadrature.hpp"
#include "fisherrao/univariate.hpp"

namespace fisherrao {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void require_all_finite(const Eigen::VectorXd& v, const char* what) {
    if (!v.allFinite()) {
        throw invalid_parameter(std::string(what) + " must be finite");
    }
}

using Vector5 = Eigen::Matrix<double, 5, 1>;
using Matrix5 = Eigen::Matrix<double, 5, 5>;

Eigen::Matrix2d rotation(double u) {
    const double c = std::cos(u);
    const double s = std::sin(u);
    Eigen::Matrix2d r;
    r << c, -s, s, c;
    return r;
}

// Metric at a raw (sigma1, sigma2, mu1, mu2, u) vector; assumes sigmas > 0.
Matrix5 metric_at(const Vector5& b) {
    const double a = 1.0 / (b[0] * b[0]);
    const double d = 1.0 / (b[1] * b[1]);
    const double c = std::cos(b[4]);
    const double s = std::sin(b[4]);
    Matrix5 g = Matrix5::Zero();
    g(0, 0) = 2.0 * a;
    g(1, 1) = 2.0 * d;
    g(2, 2) = c * c * a + s * s * d;
    g(3, 3) = s * s * a + c * c * d;
    g(2, 3) = g(3, 2) = s * c * (a - d);
    const double diff = b[0] * b[0] - b[1] * b[1];
    g(4, 4) = diff * diff * a * d;
    return g;
}

} // namespace

RoundGaussian::RoundGaussian(Eigen::VectorXd mu_, double sigma_)
    : mu(std::move(mu_)), sigma(sigma_) {
    if (mu.size() < 1) {
        throw invalid_parameter("RoundGaussian: requires p >= 1");
    }
    require_all_finite(mu, "RoundGaussian: mu");
    if (!std::isfinite(sigma) || !(sigma > 0.0)) {
        throw invalid_parameter("RoundGaussian: sigma must be positive");
    }
}

DiagonalGaussian::DiagonalGaussian(Eigen::VectorXd mu_, Eigen::VectorXd sigma_)
    : mu(std::move(mu_)), sigma(std::move(sigma_)) {
    if (mu.size() < 1 || sigma.size() != mu.size()) {
        throw invalid_parameter("DiagonalGaussian: mu and sigma must have equal length p >= 1");
    }
    require_all_finite(mu, "DiagonalGaussian: mu");
    require_all_finite(sigma, "DiagonalGaussian: sigma");
    if (!(sigma.minCoeff() > 0.0)) {
        throw invalid_parameter("DiagonalGaussian: sigma must be positive");
    }
}

FixedMeanGaussian::FixedMeanGaussian(Eigen::VectorXd mu_, Eigen::MatrixXd Sigma_)
    : mu(std::move(mu_)), Sigma(std::move(Sigma_)) {
    if (mu.size() < 1 || Sigma.rows() != mu.size() || Sigma.cols() != mu.size()) {
        throw invalid_parameter("FixedMeanGaussian: covariance must be p x p with p = len(mu)");
    }
    require_all_finite(mu, "FixedMeanGaussian: mu");
    require_spd(Sigma);
}

BivariateAngular::BivariateAngular(double sigma1_, double sigma2_, double mu1_, double mu2_,
                                   double u_)
    : sigma1(sigma1_), sigma2(sigma2_), mu1(mu1_), mu2(mu2_), u(u_) {
    if (!std::isfinite(sigma1) || !(sigma1 > 0.0) || !std::isfinite(sigma2) || !(sigma2 > 0.0)) {
        throw invalid_parameter("BivariateAngular: sigma1 and sigma2 must be positive");
    }
    if (!std::isfinite(mu1) || !std::isfinite(mu2) || !std::isfinite(u)) {
        throw invalid_parameter("BivariateAngular: parameters must be finite");
    }
}

Eigen::Matrix2d BivariateAngular::covariance() const {
    const Eigen::Matrix2d r = rotation(u);
    Eigen::Matrix2d d = Eigen::Matrix2d::Zero();
    d(0, 0) = sigma1 * sigma1;
    d(1, 1) = sigma2 * sigma2;
    return r * d * r.transpose();
}

void require_spd(const Eigen::MatrixXd& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw invalid_parameter(std::string("invalid-covariance: ") + what + " must be square");
    }
    if (!m.allFinite()) {
        throw invalid_parameter(std::string("invalid-covariance: ") + what + " must be finite");
    }
    const double scale = m.cwiseAbs().maxCoeff();
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1e-300)) {
        throw invalid_parameter(std::string("invalid-covariance: ") + what + " must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw numeric_failure("require_spd: eigensolver did not converge");
    }
    const double largest = solver.eigenvalues().maxCoeff();
    if (!(largest > 0.0) || !(solver.eigenvalues().minCoeff() > 1e-12 * largest)) {
        throw invalid_parameter(std::string("invalid-covariance: ") + what +
                                " must be positive definite");
    }
}

double fisher_distance_round(const RoundGaussian& p, const RoundGaussian& q) {
    if (p.dim() != q.dim()) {
        throw invalid_parameter("fisher_distance_round: dimension mismatch");
    }
    const double scale = std::sqrt(2.0 * p.dim());
    return scale * h_distance_halfspace(HalfSpacePoint(p.mu / scale, p.sigma),
                                        HalfSpacePoint(q.mu / scale, q.sigma));
}

double fisher_distance_diagonal(const DiagonalGaussian& p, const DiagonalGaussian& q) {
    if (p.dim() != q.dim()) {
        throw invalid_parameter("fisher_distance_diagonal: dimension mismatch");
    }
    double sum = 0.0;
    for (int i = 0; i < p.dim(); ++i) {
        const double di = h_distance(HPoint(p.mu[i] / kSqrt2, p.sigma[i]),
                                     HPoint(q.mu[i] / kSqrt2, q.sigma[i]));
        sum += 2.0 * di * di;
    }
    return std::sqrt(sum);
}

double fisher_distance_fixed_mean(const Eigen::MatrixXd& s1, const Eigen::MatrixXd& s2) {
    require_spd(s1, "S1");
    require_spd(s2, "S2");
    if (s1.rows() != s2.rows()) {
        throw invalid_parameter("fisher_distance_fixed_mean: dimension mismatch");
    }
    // Generalized eigenvalues of (S1, S2) through the Cholesky factor of S1:
    // the spectrum of L^-1 S2 L^-T equals that of S1^-1 S2 but stays symmetric.
    const Eigen::LLT<Eigen::MatrixXd> llt(s1);
    if (llt.info() != Eigen::Success) {
        throw invalid_parameter("invalid-covariance: S1 Cholesky factorization failed");
    }
    const Eigen::MatrixXd l = llt.matrixL();
    Eigen::MatrixXd w = l.triangularView<Eigen::Lower>().solve(s2);
    w = l.triangularView<Eigen::Lower>().solve(w.transpose()).transpose();
    w = 0.5 * (w + w.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(w, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw numeric_failure("fisher_distance_fixed_mean: eigensolver did not converge");
    }
    double sum = 0.0;
    for (int j = 0; j < solver.eigenvalues().size(); ++j) {
        const double log_lambda = std::log(solver.eigenvalues()[j]);
        sum += log_lambda * log_lambda;
    }
    return std::sqrt(0.5 * sum);
}

double fisher_distance_diag_u0(const BivariateAngular& p, const BivariateAngular& q) {
    if (p.u != 0.0 || q.u != 0.0 || p.mu1 != q.mu1 || p.mu2 != q.mu2) {
        throw invalid_parameter(
            "not-on-submanifold: fisher_distance_diag_u0 requires u = 0 and equal means");
    }
    const double l1 = std::log(p.sigma1 / q.sigma1);
    const double l2 = std::log(p.sigma2 / q.sigma2);
    return kSqrt2 * std::sqrt(l1 * l1 + l2 * l2);
}

Matrix5 bivariate_metric(const BivariateAngular& beta) {
    Vector5 b;
    b << beta.sigma1, beta.sigma2, beta.mu1, beta.mu2, beta.u;
    return metric_at(b);
}

namespace {

Matrix5 estimate_bivariate(const BivariateAngular& beta, int nodes) {
    const GaussHermiteRule rule = gauss_hermite(nodes);
    const double s1 = beta.sigma1;
    const double s2 = beta.sigma2;
    const Eigen::Matrix2d r = rotation(beta.u);
    Eigen::Matrix2d chol = Eigen::Matrix2d::Zero(); // Sigma = chol * chol^T
    chol.col(0) = r.col(0) * s1;
    chol.col(1) = r.col(1) * s2;
    Eigen::Matrix2d inv_d = Eigen::Matrix2d::Zero();
    inv_d(0, 0) = 1.0 / (s1 * s1);
    inv_d(1, 1) = 1.0 / (s2 * s2);
    const Eigen::Matrix2d sigma_inv = r * inv_d * r.transpose();
    // Covariance derivatives in the rotated frame, conjugated back by r.
    Eigen::Matrix2d a1 = Eigen::Matrix2d::Zero();
    a1(0, 0) = 2.0 * s1;
    a1 = (r * a1 * r.transpose()).eval();
    Eigen::Matrix2d a2 = Eigen::Matrix2d::Zero();
    a2(1, 1) = 2.0 * s2;
    a2 = (r * a2 * r.transpose()).eval();
    Eigen::Matrix2d au = Eigen::Matrix2d::Zero();
    au(0, 1) = au(1, 0) = s1 * s1 - s2 * s2;
    au = (r * au * r.transpose()).eval();
    const double trace1 = 2.0 / s1;
    const double trace2 = 2.0 / s2;

    Matrix5 g = Matrix5::Zero();
    const double inv_mass = 1.0 / std::numbers::pi;
    for (int j = 0; j < nodes; ++j) {
        for (int k = 0; k < nodes; ++k) {
            Eigen::Vector2d z;
            z << kSqrt2 * rule.nodes[j], kSqrt2 * rule.nodes[k];
            const Eigen::Vector2d e = chol * z; // x - mu
            const Eigen::Vector2d q = sigma_inv * e;
            Vector5 score;
            score[0] = -0.5 * trace1 + 0.5 * q.dot(a1 * q);
            score[1] = -0.5 * trace2 + 0.5 * q.dot(a2 * q);
            score[2] = q[0];
            score[3] = q[1];
            score[4] = 0.5 * q.dot(au * q);
            const double w = rule.weights[j] * rule.weights[k] * inv_mass;
            g.noalias() += w * score * score.transpose();
        }
    }
    return g;
}

} // namespace

Matrix5 estimate_fisher_matrix_bivariate(const BivariateAngular& beta) {
    const Matrix5 coarse = estimate_bivariate(beta, 24);
    const Matrix5 fine = estimate_bivariate(beta, 32);
    const double scale = 1.0 + fine.cwiseAbs().maxCoeff();
    if ((coarse - fine).cwiseAbs().maxCoeff() > 1e-8 * scale) {
        throw numeric_failure("estimate_fisher_matrix_bivariate: quadrature did not converge");
    }
    return fine;
}

namespace {

constexpr double kSigmaPathFloor = 1e-8;
constexpr double kUFreezeTol = 1e-10;

// Trapezoid quadrature of the chord: overestimates for the convex hyperbolic
// speeds, so refining the discretization approaches the distance from above.
double segment_length(const Vector5& a, const Vector5& b) {
    const Vector5 d = b - a;
    const double at_a = std::max(d.dot(metric_at(a) * d), 0.0);
    const double at_b = std::max(d.dot(metric_at(b) * d), 0.0);
    return 0.5 * (std::sqrt(at_a) + std::sqrt(at_b));
}

double segment_energy(const Vector5& a, const Vector5& b) {
    const Vector5 d = b - a;
    return 0.5 * (d.dot(metric_at(a) * d) + d.dot(metric_at(b) * d));
}

bool node_in_domain(const Vector5& b) {
    return b[0] > kSigmaPathFloor && b[1] > kSigmaPathFloor;
}

double polyline_length(const std::vector<Vector5>& nodes) {
    double total = 0.0;
    for (std::size_t k = 1; k < nodes.size(); ++k) {
        total += segment_length(nodes[k - 1], nodes[k]);
    }
    return total;
}

} // namespace

PathEstimate bivariate_distance_estimate(const BivariateAngular& p, const BivariateAngular& q,
                                         int segments, int iterations) {
    if (segments < 8) {
        throw invalid_parameter("bivariate_distance_estimate: need at least 8 segments");
    }
    if (iterations < 0) {
        throw invalid_parameter("bivariate_distance_estimate: iterations must be nonnegative");
    }
    Vector5 start, end;
    start << p.sigma1, p.sigma2, p.mu1, p.mu2, p.u;
    end << q.sigma1, q.sigma2, q.mu1, q.mu2, q.u;
    if (start == end) {
        return PathEstimate{0.0, 0, {}};
    }

    std::vector<Vector5> nodes(static_cast<std::size_t>(segments) + 1);
    for (int k = 0; k <= segments; ++k) {
        const double s = static_cast<double>(k) / segments;
        nodes[static_cast<std::size_t>(k)] = (1.0 - s) * start + s * end;
    }

    PathEstimate result;
    result.length = polyline_length(nodes);
    result.iterations = 0;
    result.length_history.reserve(static_cast<std::size_t>(iterations));

    for (int sweep = 0; sweep < iterations; ++sweep) {
        bool any_accepted = false;
        for (std::size_t k = 1; k + 1 < nodes.size(); ++k) {
            const Vector5& prev = nodes[k - 1];
            const Vector5& next = nodes[k + 1];
            Vector5& node = nodes[k];

            const auto local_energy = [&](const Vector5& b) {
                return segment_energy(prev, b) + segment_energy(b, next);
            };
            const auto local_length = [&](const Vector5& b) {
                return segment_length(prev, b) + segment_length(b, next);
            };

            const bool freeze_u =
                std::abs(node[0] * node[0] - node[1] * node[1]) < kUFreezeTol * node[0] * node[1];

            // Damped Newton on the local energy, finite-difference derivatives.
            Vector5 grad;
            Matrix5 hess;
            Vector5 step_h;
            for (int i = 0; i < 5; ++i) {
                step_h[i] = 1e-5 * std::max(1.0, std::abs(node[i]));
            }
            const double e0 = local_energy(node);
            for (int i = 0; i < 5; ++i) {
                Vector5 up = node, dn = node;
                up[i] += step_h[i];
                dn[i] -= step_h[i];
                const double eu = local_energy(up);
                const double ed = local_energy(dn);
                grad[i] = (eu - ed) / (2.0 * step_h[i]);
                hess(i, i) = (eu - 2.0 * e0 + ed) / (step_h[i] * step_h[i]);
            }
            for (int i = 0; i < 5; ++i) {
                for (int j = i + 1; j < 5; ++j) {
                    Vector5 pp = node, pm = node, mp = node, mm = node;
                    pp[i] += step_h[i]; pp[j] += step_h[j];
                    pm[i] += step_h[i]; pm[j] -= step_h[j];
                    mp[i] -= step_h[i]; mp[j] += step_h[j];
                    mm[i] -= step_h[i]; mm[j] -= step_h[j];
                    hess(i, j) = hess(j, i) =
                        (local_energy(pp) - local_energy(pm) - local_energy(mp) +
                         local_energy(mm)) /
                        (4.0 * step_h[i] * step_h[j]);
                }
            }
            if (freeze_u) {
                grad[4] = 0.0;
                hess.row(4).setZero();
                hess.col(4).setZero();
                hess(4, 4) = 1.0;
            }
            // Levenberg damping keeps the model solvable when the Hessian is
            // flat along the path direction.
            const double damping = 1e-8 + 1e-4 * hess.diagonal().cwiseAbs().maxCoeff();
            const Matrix5 model = hess + damping * Matrix5::Identity();
            Vector5 delta = model.ldlt().solve(-grad);
            if (!delta.allFinite()) {
                continue;
            }

            // Require a decrease clearly above summation round-off so the
            // recomputed global length is monotone across sweeps.
            const double len0 = local_length(node);
            const double required = len0 - 1e-12 * (1.0 + len0);
            for (int halving = 0; halving < 7; ++halving) {
                const Vector5 candidate = node + delta;
                if (node_in_domain(candidate) && local_length(candidate) < required) {
                    node = candidate;
                    any_accepted = true;
                    break;
                }
                delta *= 0.5;
            }
        }
        result.iterations = sweep + 1;
        result.length = polyline_length(nodes);
        result.length_history.push_back(result.length);
        if (!any_accepted) {
            break;
        }
    }
    return result;
}

} // namespace fisherrao
