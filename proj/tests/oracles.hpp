// Test-only reference computations: textbook quotient forms, numeric
// arc-length and divergence integrals, and a variational path shortener. These
// deliberately avoid the library's closed-form code paths so that agreement is
// meaningful.
#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace oracles {

// Half-plane distance as the logarithm of the quotient of Euclidean norms to
// the mirrored point: ln((|P - Qbar| + |P - Q|) / (|P - Qbar| - |P - Q|)).
inline double log_quotient_distance(double x1, double y1, double x2, double y2) {
    const double m = std::hypot(x1 - x2, y1 - y2);
    const double big = std::hypot(x1 - x2, y1 + y2);
    return std::log((big + m) / (big - m));
}

// Half-space version of the same quotient form.
inline double log_quotient_distance_halfspace(const Eigen::VectorXd& x1, double y1,
                                              const Eigen::VectorXd& x2, double y2) {
    const double dx2 = (x1 - x2).squaredNorm();
    const double m = std::sqrt(dx2 + (y1 - y2) * (y1 - y2));
    const double big = std::sqrt(dx2 + (y1 + y2) * (y1 + y2));
    return std::log((big + m) / (big - m));
}

// Expanded closed form of the Fisher distance in classic coordinates:
// sqrt(2) ln((F + dmu^2 + 2 (s1^2 + s2^2)) / (4 s1 s2)) with the radical F.
inline double classic_formula_distance(double mu1, double s1, double mu2, double s2) {
    const double d2 = (mu1 - mu2) * (mu1 - mu2);
    const double radical = std::sqrt((d2 + 2.0 * (s1 - s2) * (s1 - s2)) *
                                     (d2 + 2.0 * (s1 + s2) * (s1 + s2)));
    return std::numbers::sqrt2 *
           std::log((radical + d2 + 2.0 * (s1 * s1 + s2 * s2)) / (4.0 * s1 * s2));
}

// Quotient closed form of the Fisher distance in source coordinates.
inline double source_formula_distance(double l11, double l21, double l12, double l22) {
    const double dl = l11 - l12;
    const double a = std::sqrt(dl * dl + 2.0 * (std::sqrt(l21) - std::sqrt(l22)) *
                                             (std::sqrt(l21) - std::sqrt(l22)));
    const double b = std::sqrt(dl * dl + 2.0 * (std::sqrt(l21) + std::sqrt(l22)) *
                                             (std::sqrt(l21) + std::sqrt(l22)));
    return std::numbers::sqrt2 * std::log(-(a + b) / (a - b));
}

// Quotient closed form of the Fisher distance in expectation coordinates.
inline double expectation_formula_distance(double e11, double e21, double e12, double e22) {
    const double s1 = std::sqrt(e21 - e11 * e11);
    const double s2 = std::sqrt(e22 - e12 * e12);
    const double de = e11 - e12;
    const double a = std::sqrt(de * de + 2.0 * (s1 - s2) * (s1 - s2));
    const double b = std::sqrt(de * de + 2.0 * (s1 + s2) * (s1 + s2));
    return std::numbers::sqrt2 * std::log(-(a + b) / (a - b));
}

// Equal-sigma closed form (the horizontal-pair distance).
inline double horizontal_formula_distance(double mu1, double mu2, double sigma) {
    const double d2 = (mu1 - mu2) * (mu1 - mu2);
    const double s2 = sigma * sigma;
    return std::numbers::sqrt2 *
           std::log((4.0 * s2 + d2 + std::abs(mu1 - mu2) * std::sqrt(8.0 * s2 + d2)) /
                    (4.0 * s2));
}

// Expanded radical form of the symmetrized divergence.
inline double symmetrized_kl_formula(double mu1, double s1, double mu2, double s2) {
    const double d2 = (mu1 - mu2) * (mu1 - mu2);
    return std::sqrt(0.5 * (-2.0 + d2 / (s1 * s1) + (s1 * s1) / (s2 * s2) + d2 / (s2 * s2) +
                            (s2 * s2) / (s1 * s1)));
}

// Composite Simpson rule; n must be even.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2 != 0) {
        throw std::invalid_argument("simpson: n must be even");
    }
    const double h = (b - a) / n;
    double total = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        total += f(a + i * h) * (i % 2 == 0 ? 2.0 : 4.0);
    }
    return total * h / 3.0;
}

// Arc length of a parametric curve under a diagonal metric
// ds^2 = E dx^2 + G dy^2, with the velocity taken by central differences.
inline double metric_arc_length(const std::function<std::pair<double, double>(double)>& gamma,
                                const std::function<double(double, double)>& metric_E,
                                const std::function<double(double, double)>& metric_G, double t0,
                                double t1, int n = 2000) {
    const double dh = 1e-6 * std::max(1.0, std::abs(t1 - t0));
    const auto speed = [&](double t) {
        const auto [xp, yp] = gamma(t + dh);
        const auto [xm, ym] = gamma(t - dh);
        const double vx = (xp - xm) / (2.0 * dh);
        const double vy = (yp - ym) / (2.0 * dh);
        const auto [x, y] = gamma(t);
        return std::sqrt(metric_E(x, y) * vx * vx + metric_G(x, y) * vy * vy);
    };
    return std::abs(simpson(speed, t0, t1, n));
}

// Adaptive Simpson quadrature with interval-halving error control.
inline double adaptive_simpson_impl(const std::function<double(double)>& f, double a, double b,
                                    double fa, double fm, double fb, double whole, double tol,
                                    int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson_impl(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_impl(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 48) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_impl(f, a, b, fa, fm, fb, whole, tol, depth);
}

// KL divergence of two normal densities by direct integration of f ln(f / g).
inline double kl_by_quadrature(double mu1, double s1, double mu2, double s2) {
    const auto log_pdf = [](double x, double mu, double s) {
        const double z = (x - mu) / s;
        return -0.5 * z * z - std::log(s * std::sqrt(2.0 * std::numbers::pi));
    };
    const auto integrand = [&](double x) {
        return std::exp(log_pdf(x, mu1, s1)) * (log_pdf(x, mu1, s1) - log_pdf(x, mu2, s2));
    };
    return adaptive_simpson(integrand, mu1 - 15.0 * s1, mu1 + 15.0 * s1, 1e-12);
}

// Minimal path length in the Poincare half-plane by coarse-to-fine polyline
// shortening: start from the straight segment, repeatedly relax each interior
// node with a small Newton step on its local energy, subdivide, and finish by
// summing |step| / sqrt(y_k y_{k+1}). Touches only the metric, never the
// closed distance formula.
inline double variational_halfplane_length(double x1, double y1, double x2, double y2,
                                           int final_segments = 1024, int sweeps_per_level = 40) {
    std::vector<Eigen::Vector2d> nodes{{x1, y1}, {x2, y2}};
    const auto energy = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
        return (a - b).squaredNorm() / (a.y() * b.y());
    };
    int segments = 1;
    while (segments < final_segments) {
        // Subdivide every segment at its midpoint.
        std::vector<Eigen::Vector2d> refined;
        refined.reserve(nodes.size() * 2 - 1);
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            refined.push_back(nodes[i]);
            refined.push_back(0.5 * (nodes[i] + nodes[i + 1]));
        }
        refined.push_back(nodes.back());
        nodes = std::move(refined);
        segments *= 2;

        for (int sweep = 0; sweep < sweeps_per_level; ++sweep) {
            for (std::size_t k = 1; k + 1 < nodes.size(); ++k) {
                const Eigen::Vector2d& prev = nodes[k - 1];
                const Eigen::Vector2d& next = nodes[k + 1];
                const auto local = [&](const Eigen::Vector2d& v) {
                    return energy(prev, v) + energy(v, next);
                };
                Eigen::Vector2d& node = nodes[k];
                const double h = 1e-6 * std::max(1.0, node.norm());
                Eigen::Vector2d grad;
                Eigen::Matrix2d hess;
                const double e0 = local(node);
                for (int i = 0; i < 2; ++i) {
                    Eigen::Vector2d up = node, dn = node;
                    up[i] += h;
                    dn[i] -= h;
                    grad[i] = (local(up) - local(dn)) / (2.0 * h);
                    hess(i, i) = (local(up) - 2.0 * e0 + local(dn)) / (h * h);
                }
                Eigen::Vector2d pp = node, pm = node, mp = node, mm = node;
                pp += Eigen::Vector2d(h, h);
                pm += Eigen::Vector2d(h, -h);
                mp += Eigen::Vector2d(-h, h);
                mm += Eigen::Vector2d(-h, -h);
                hess(0, 1) = hess(1, 0) =
                    (local(pp) - local(pm) - local(mp) + local(mm)) / (4.0 * h * h);
                const Eigen::Vector2d step =
                    (hess + 1e-12 * Eigen::Matrix2d::Identity()).ldlt().solve(-grad);
                Eigen::Vector2d candidate = node + step;
                if (candidate.y() < 1e-9) {
                    candidate.y() = 1e-9;
                }
                if (candidate.allFinite() && local(candidate) < e0) {
                    node = candidate;
                }
            }
        }
    }
    double length = 0.0;
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        length += (nodes[k + 1] - nodes[k]).norm() / std::sqrt(nodes[k].y() * nodes[k + 1].y());
    }
    return length;
}

} // namespace oracles
