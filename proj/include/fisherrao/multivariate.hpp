#pragma once

#include <vector>

#include <Eigen/Core>

#include "fisherrao/errors.hpp"

namespace fisherrao {

/// p-variate normal with scalar covariance sigma^2 I.
struct RoundGaussian {
    Eigen::VectorXd mu;
    double sigma;

    RoundGaussian(Eigen::VectorXd mu_, double sigma_);

    int dim() const { return static_cast<int>(mu.size()); }
};

/// p-variate normal with diagonal covariance diag(sigma_i^2).
struct DiagonalGaussian {
    Eigen::VectorXd mu;
    Eigen::VectorXd sigma;

    DiagonalGaussian(Eigen::VectorXd mu_, Eigen::VectorXd sigma_);

    int dim() const { return static_cast<int>(mu.size()); }
};

/// p-variate normal at a fixed mean with general SPD covariance.
struct FixedMeanGaussian {
    Eigen::VectorXd mu;
    Eigen::MatrixXd Sigma;

    FixedMeanGaussian(Eigen::VectorXd mu_, Eigen::MatrixXd Sigma_);

    int dim() const { return static_cast<int>(mu.size()); }
};

/// Elliptical bivariate normal in the 5-parameter angular chart
/// (sigma1, sigma2, mu1, mu2, u): sigma_i^2 are the covariance eigenvalues and
/// u is the turning angle of the eigenvectors.
struct BivariateAngular {
    double sigma1;
    double sigma2;
    double mu1;
    double mu2;
    double u;

    BivariateAngular(double sigma1_, double sigma2_, double mu1_, double mu2_, double u_);

    Eigen::Matrix2d covariance() const;
};

/// Validates symmetry (1e-12 relative) and positive definiteness
/// (smallest eigenvalue > 1e-12 times the largest); throws invalid_parameter.
void require_spd(const Eigen::MatrixXd& m, const char* what = "covariance");

/// Fisher distance between round Gaussians, sqrt(2p) times the half-space
/// distance of the mu/sqrt(2p) images. Throws on dimension mismatch.
double fisher_distance_round(const RoundGaussian& p, const RoundGaussian& q);

/// Fisher distance between diagonal Gaussians via the product metric: the
/// root-sum-square of per-component half-plane distances scaled by sqrt(2).
double fisher_distance_diagonal(const DiagonalGaussian& p, const DiagonalGaussian& q);

/// Fixed-mean Fisher distance sqrt(1/2 sum_j ln^2 lambda_j) with lambda_j the
/// generalized eigenvalues of (S1, S2), computed through the Cholesky factor
/// of S1 to stay symmetric. Throws invalid_parameter on non-SPD input.
double fisher_distance_fixed_mean(const Eigen::MatrixXd& s1, const Eigen::MatrixXd& s2);

/// Closed distance on the totally geodesic u = 0, fixed-mean submanifold of
/// the bivariate angular model. Requires u = 0 and equal means on both sides.
double fisher_distance_diag_u0(const BivariateAngular& p, const BivariateAngular& q);

/// Closed-form 5x5 Fisher matrix of the angular chart, rows/columns ordered
/// (sigma1, sigma2, mu1, mu2, u); validated entrywise against
/// estimate_fisher_matrix_bivariate.
Eigen::Matrix<double, 5, 5> bivariate_metric(const BivariateAngular& beta);

/// Tensor Gauss-Hermite estimate of the same matrix from the score-product
/// integral; serves as the independent check of the closed form. Throws
/// numeric_failure if node refinement disagrees beyond tolerance.
Eigen::Matrix<double, 5, 5> estimate_fisher_matrix_bivariate(const BivariateAngular& beta);

/// Result of the discrete path-shortening estimate: final polyline length, the
/// number of sweeps actually run, and the length after every sweep.
struct PathEstimate {
    double length;
    int iterations;
    std::vector<double> length_history;
};

/// Upper-bound estimate of the bivariate Fisher distance: a discretized path
/// from p to q (linear initialization) whose interior nodes are refined by
/// damped Newton steps on the local energy, accepted only when the polyline
/// shortens. The reported lengths are monotone non-increasing per sweep.
PathEstimate bivariate_distance_estimate(const BivariateAngular& p, const BivariateAngular& q,
                                         int segments = 64, int iterations = 500);

} // namespace fisherrao
