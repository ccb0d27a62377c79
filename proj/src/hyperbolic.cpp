#include "fisherrao/hyperbolic.hpp"

#include <cmath>

namespace fisherrao {

namespace {

// arccosh(1 + u) for u >= 0 without cancellation near u = 0.
double acosh1p(double u) {
    return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

void check_point(double x, double y, const char* what) {
    if (!std::isfinite(x) || !std::isfinite(y) || !(y > 0.0)) {
        throw invalid_parameter(std::string(what) + ": requires finite coordinates with y > 0");
    }
}

// Parameter value of a point on an arc geodesic, using the branch of
// e^t = (R + (x - c)) / y that avoids cancellation.
double arc_parameter(double c, double R, double x, double y) {
    const double dx = x - c;
    if (dx >= 0.0) {
        return std::log((R + dx) / y);
    }
    return -std::log((R - dx) / y);
}

constexpr double kVerticalTol = 1e-12;

bool nearly_vertical(double x1, double x2) {
    return std::abs(x1 - x2) < kVerticalTol * std::max({1.0, std::abs(x1), std::abs(x2)});
}

} // namespace

HPoint::HPoint(double x_, double y_) : x(x_), y(y_) {
    check_point(x_, y_, "HPoint");
}

HalfSpacePoint::HalfSpacePoint(Eigen::VectorXd x_, double y_) : x(std::move(x_)), y(y_) {
    if (x.size() < 1) {
        throw invalid_parameter("HalfSpacePoint: requires p >= 1 boundary coordinates");
    }
    if (!x.allFinite() || !std::isfinite(y) || !(y > 0.0)) {
        throw invalid_parameter("HalfSpacePoint: requires finite coordinates with y > 0");
    }
}

double h_distance(const HPoint& p, const HPoint& q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    const double u = (dx * dx + dy * dy) / (2.0 * p.y * q.y);
    return acosh1p(u);
}

double h_distance_halfspace(const HalfSpacePoint& p, const HalfSpacePoint& q) {
    if (p.dim() != q.dim()) {
        throw invalid_parameter("h_distance_halfspace: dimension mismatch");
    }
    const double dy = p.y - q.y;
    const double u = ((p.x - q.x).squaredNorm() + dy * dy) / (2.0 * p.y * q.y);
    return acosh1p(u);
}

HGeodesic h_geodesic(const HPoint& p, const HPoint& q) {
    if (p == q) {
        throw invalid_parameter("h_geodesic: degenerate geodesic, P == Q");
    }
    HGeodesic g;
    if (nearly_vertical(p.x, q.x)) {
        g.kind = HGeodesic::Kind::Vertical;
        g.x0 = 0.5 * (p.x + q.x);
        g.t_start = std::log(p.y);
        g.t_end = std::log(q.y);
        return g;
    }
    g.kind = HGeodesic::Kind::Arc;
    g.c = (p.x * p.x + p.y * p.y - q.x * q.x - q.y * q.y) / (2.0 * (p.x - q.x));
    g.R = std::hypot(p.x - g.c, p.y);
    g.t_start = arc_parameter(g.c, g.R, p.x, p.y);
    g.t_end = arc_parameter(g.c, g.R, q.x, q.y);
    return g;
}

HPoint h_geodesic_point(const HGeodesic& g, double t) {
    if (g.kind == HGeodesic::Kind::Vertical) {
        return HPoint(g.x0, std::exp(t));
    }
    return HPoint(g.c + g.R * std::tanh(t), g.R / std::cosh(t));
}

HPoint h_interpolate(const HPoint& p, const HPoint& q, double s) {
    if (p == q) {
        return p;
    }
    const HGeodesic g = h_geodesic(p, q);
    return h_geodesic_point(g, g.t_start + s * (g.t_end - g.t_start));
}

HTangent h_log(const HPoint& p, const HPoint& q) {
    if (p == q) {
        return HTangent{p, 0.0, 0.0};
    }
    const HGeodesic g = h_geodesic(p, q);
    const double dt = g.t_end - g.t_start;
    if (g.kind == HGeodesic::Kind::Vertical) {
        return HTangent{p, 0.0, dt * p.y};
    }
    // Velocity of (c + R tanh t, R sech t) at t_start, written in terms of the
    // base point: (y^2 / R, -y (x - c) / R). Its metric norm is 1.
    const double vx = p.y * p.y / g.R;
    const double vy = -p.y * (p.x - g.c) / g.R;
    return HTangent{p, dt * vx, dt * vy};
}

HPoint h_exp(const HTangent& tangent) {
    const HPoint& p = tangent.base;
    const double norm_e = std::hypot(tangent.vx, tangent.vy);
    if (norm_e == 0.0) {
        return p;
    }
    if (!std::isfinite(tangent.vx) || !std::isfinite(tangent.vy)) {
        throw invalid_parameter("h_exp: tangent components must be finite");
    }
    const double len = norm_e / p.y; // metric length to travel
    if (std::abs(tangent.vx) <= kVerticalTol * norm_e) {
        return HPoint(p.x, p.y * std::exp(tangent.vy > 0.0 ? len : -len));
    }
    // Arc geodesic through p tangent to v: its center c on the boundary is
    // where (p - (c, 0)) is orthogonal to v.
    const double c = p.x + p.y * tangent.vy / tangent.vx;
    const double R = std::hypot(p.x - c, p.y);
    const double t0 = arc_parameter(c, R, p.x, p.y);
    // Orientation: compare v against the +t velocity at t0.
    const double dir = (p.y * p.y / R) * tangent.vx + (-p.y * (p.x - c) / R) * tangent.vy;
    const double t = t0 + (dir >= 0.0 ? len : -len);
    return h_geodesic_point(HGeodesic{HGeodesic::Kind::Arc, 0.0, c, R, t0, t}, t);
}

double h_norm(const HTangent& tangent) {
    return std::hypot(tangent.vx, tangent.vy) / tangent.base.y;
}

HCircle h_circle(const HPoint& center, double rho) {
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw invalid_parameter("h_circle: radius must be positive");
    }
    return HCircle{HPoint(center.x, center.y * std::cosh(rho)), center.y * std::sinh(rho)};
}

} // namespace fisherrao
