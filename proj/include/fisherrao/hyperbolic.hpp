#pragma once

#include <Eigen/Core>

#include "fisherrao/errors.hpp"

namespace fisherrao {

/// Point of the Poincare half-plane { (x, y) : y > 0 }.
struct HPoint {
    double x;
    double y;

    HPoint(double x_, double y_);

    bool operator==(const HPoint& other) const { return x == other.x && y == other.y; }
};

/// Point of the (p+1)-dimensional Poincare half-space; x holds the p
/// boundary-parallel coordinates, y > 0 the height.
struct HalfSpacePoint {
    Eigen::VectorXd x;
    double y;

    HalfSpacePoint(Eigen::VectorXd x_, double y_);

    int dim() const { return static_cast<int>(x.size()); }
};

/// Geodesic of the half-plane: a vertical ray or a half-circle centered on the
/// boundary y = 0. Both kinds carry a global unit-speed parametrization:
///   vertical: t -> (x0, e^t)
///   arc:      t -> (c + R tanh t, R sech t)
/// t_start and t_end are the parameter values of the two defining endpoints.
struct HGeodesic {
    enum class Kind { Vertical, Arc };

    Kind kind;
    double x0 = 0.0;  // vertical kind only
    double c = 0.0;   // arc kind: center on the boundary
    double R = 0.0;   // arc kind: Euclidean radius, > 0
    double t_start = 0.0;
    double t_end = 0.0;
};

/// Tangent vector at `base`, components in the ambient (x, y) chart.
struct HTangent {
    HPoint base;
    double vx;
    double vy;
};

/// Euclidean center/radius of a hyperbolic circle (which is a Euclidean circle
/// in the half-plane model, centered above the hyperbolic center).
struct HCircle {
    HPoint center;
    double radius;
};

/// Half-plane distance, arccosh(1 + |P-Q|^2 / (2 y_P y_Q)).
double h_distance(const HPoint& p, const HPoint& q);

/// Half-space distance in dimension p+1; throws on dimension mismatch.
double h_distance_halfspace(const HalfSpacePoint& p, const HalfSpacePoint& q);

/// Geodesic through two distinct points; throws invalid_parameter on P == Q.
HGeodesic h_geodesic(const HPoint& p, const HPoint& q);

/// Point at unit-speed parameter t.
HPoint h_geodesic_point(const HGeodesic& g, double t);

/// Point at fraction s of the way from p to q along the geodesic
/// (s = 0 -> p, s = 1 -> q, s = 1/2 -> hyperbolic midpoint). p == q returns p.
HPoint h_interpolate(const HPoint& p, const HPoint& q, double s);

/// Riemannian logarithm: tangent at p whose metric norm is h_distance(p, q)
/// and whose exponential is q.
HTangent h_log(const HPoint& p, const HPoint& q);

/// Riemannian exponential: follow the geodesic from tangent.base with initial
/// velocity (vx, vy) for metric length equal to the tangent's metric norm.
HPoint h_exp(const HTangent& tangent);

/// Metric norm of a tangent vector, |v| / y at the base point.
double h_norm(const HTangent& tangent);

/// Hyperbolic circle of radius rho > 0 as its Euclidean center and radius:
/// center (x, y cosh rho), radius y sinh rho.
HCircle h_circle(const HPoint& center, double rho);

} // namespace fisherrao
