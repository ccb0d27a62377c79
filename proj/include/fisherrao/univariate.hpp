#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fisherrao/errors.hpp"
#include "fisherrao/hyperbolic.hpp"

namespace fisherrao {

/// Univariate normal as (mean, standard deviation), sigma > 0.
struct GaussianUni {
    double mu;
    double sigma;

    GaussianUni(double mu_, double sigma_);

    bool operator==(const GaussianUni& other) const {
        return mu == other.mu && sigma == other.sigma;
    }
};

/// Source coordinates (mean, variance), lambda2 > 0.
struct SourceParams {
    double lambda1;
    double lambda2;

    SourceParams(double lambda1_, double lambda2_);
};

/// Natural coordinates (mu / sigma^2, -1 / (2 sigma^2)), theta2 < 0.
struct NaturalParams {
    double theta1;
    double theta2;

    NaturalParams(double theta1_, double theta2_);
};

/// Expectation coordinates (mu, sigma^2 + mu^2), eta2 - eta1^2 > 0.
struct ExpectationParams {
    double eta1;
    double eta2;

    ExpectationParams(double eta1_, double eta2_);
};

enum class Parametrization { Classic, Source, Natural, Expectation };

Parametrization parametrization_from_string(const std::string& name);
std::string to_string(Parametrization chart);

/// Coordinate pair in some parametrization, for the chart-generic conversion.
using ParamPoint = std::array<double, 2>;

/// Exact algebraic conversion between any two parametrizations. Throws
/// invalid_parameter when the input violates the source chart's invariants.
ParamPoint convert(const ParamPoint& point, Parametrization from, Parametrization to);

GaussianUni to_classic(const SourceParams& p);
GaussianUni to_classic(const NaturalParams& p);
GaussianUni to_classic(const ExpectationParams& p);
SourceParams to_source(const GaussianUni& g);
NaturalParams to_natural(const GaussianUni& g);
ExpectationParams to_expectation(const GaussianUni& g);

/// Similarity map onto the Poincare half-plane, (mu, sigma) -> (mu / sqrt(2), sigma).
HPoint psi(const GaussianUni& g);
GaussianUni psi_inverse(const HPoint& p);

/// Fisher-Rao distance between univariate normals: sqrt(2) times the
/// half-plane distance of the psi images. Scale-normalized internally so that
/// extreme sigma ratios stay representable.
double fisher_distance(const GaussianUni& p, const GaussianUni& q);

/// Fisher distance with both points given in `chart` coordinates; converts to
/// classic coordinates and delegates.
double fisher_distance_in(Parametrization chart, const ParamPoint& p, const ParamPoint& q);

/// Geodesic in the (mu, sigma) half-plane: a vertical ray or a half-ellipse of
/// eccentricity 1/sqrt(2) centered on sigma = 0. The half-ellipse is described
/// by the underlying half-plane geodesic in the psi image: points trace
/// (sqrt(2) (c + R tanh t), R sech t), so the ellipse is centered at
/// mu = sqrt(2) c with semi-axes (sqrt(2) R, R). Fisher speed along t is a
/// constant sqrt(2).
struct FisherGeodesic {
    enum class Kind { Vertical, HalfEllipse };

    Kind kind;
    double mu0 = 0.0; // vertical kind only
    double c = 0.0;   // half-ellipse: center of the psi-image arc
    double R = 0.0;   // half-ellipse: psi-image arc radius = ellipse semi-minor axis
    double t_start = 0.0;
    double t_end = 0.0;
};

FisherGeodesic fisher_geodesic(const GaussianUni& p, const GaussianUni& q);
GaussianUni fisher_geodesic_point(const FisherGeodesic& g, double t);

/// Point at Fisher-distance fraction s from p towards q; p == q returns p.
GaussianUni fisher_interpolate(const GaussianUni& p, const GaussianUni& q, double s);

/// Fisher average (midpoint) of two normals: fisher_interpolate at s = 1/2.
GaussianUni fisher_midpoint(const GaussianUni& p, const GaussianUni& q);

/// n >= 3 points at Fisher distance r > 0 from center, the pullback of the
/// corresponding hyperbolic circle. Returned in angle order around the circle.
std::vector<GaussianUni> fisher_circle(const GaussianUni& center, double r, int n);

/// Kullback-Leibler divergence KL(p || q); nonnegative, asymmetric.
double kl_divergence(const GaussianUni& p, const GaussianUni& q);

/// Symmetrized divergence sqrt(KL(p||q) + KL(q||p)).
double kl_symmetrized(const GaussianUni& p, const GaussianUni& q);

/// KL divergences of a vertically aligned pair expressed through the signed
/// Fisher distance d: kl_pq = g(d), kl_qp = g(-d) with
/// g(d) = (e^{-sqrt(2) d} + sqrt(2) d - 1) / 2, and
/// dkl = sqrt(cosh(sqrt(2) d) - 1).
struct KlVertical {
    double kl_pq;
    double kl_qp;
    double dkl;
};

KlVertical kl_from_fisher_vertical(double d);

/// Gauss-Hermite estimate of the 2x2 Fisher information matrix of N(mu, sigma)
/// in (mu, sigma) coordinates; the closed form is diag(1/sigma^2, 2/sigma^2).
/// Throws numeric_failure if refinement disagrees beyond tolerance.
Eigen::Matrix2d estimate_fisher_matrix(double mu, double sigma);

/// Metric coefficient as a function of (mu, sigma).
using MetricCoefficient = std::function<double(double, double)>;

/// Gaussian curvature of the diagonal metric ds^2 = E dmu^2 + G dsigma^2 at a
/// point, by the Brioschi formula with central finite differences of step h.
/// Throws invalid_parameter if E or G is non-positive at a sampled point.
double gaussian_curvature(const MetricCoefficient& metric_E, const MetricCoefficient& metric_G,
                          double mu, double sigma, double h = 1e-4);

/// Fisher distance of an equal-sigma pair together with the length
/// |mu2 - mu1| / sigma of the horizontal segment joining them; the distance is
/// strictly smaller whenever mu1 != mu2.
struct HorizontalBound {
    double distance;
    double bound;
};

HorizontalBound horizontal_bound_check(const GaussianUni& p, const GaussianUni& q);

} // namespace fisherrao
