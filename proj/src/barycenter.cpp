#include "fisherrao/barycenter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "fisherrao/hyperbolic.hpp"

namespace fisherrao {

WeightedSet::WeightedSet(std::vector<GaussianUni> points_)
    : WeightedSet(std::move(points_), {}) {}

WeightedSet::WeightedSet(std::vector<GaussianUni> points_, std::vector<double> weights_)
    : points(std::move(points_)), weights(std::move(weights_)) {
    if (points.empty()) {
        throw invalid_parameter("WeightedSet: requires at least one point");
    }
    if (weights.empty()) {
        weights.assign(points.size(), 1.0 / static_cast<double>(points.size()));
        return;
    }
    if (weights.size() != points.size()) {
        throw invalid_parameter("WeightedSet: points and weights must have equal length");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w) || !(w > 0.0)) {
            throw invalid_parameter("WeightedSet: weights must be positive");
        }
        total += w;
    }
    for (double& w : weights) {
        w /= total;
    }
}

KarcherResult karcher_mean(const WeightedSet& set, double tol, int max_iter) {
    if (!(tol > 0.0) || max_iter < 1) {
        throw invalid_parameter("karcher_mean: requires tol > 0 and max_iter >= 1");
    }
    const std::size_t n = set.points.size();
    std::vector<HPoint> targets;
    targets.reserve(n);
    for (const GaussianUni& g : set.points) {
        targets.push_back(psi(g));
    }

    // Chart average with geometric-mean height; exact for two vertical points.
    double x0 = 0.0;
    double log_y0 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x0 += set.weights[i] * targets[i].x;
        log_y0 += set.weights[i] * std::log(targets[i].y);
    }
    HPoint m(x0, std::exp(log_y0));

    HPoint best = m;
    double best_residual = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= max_iter; ++it) {
        double tx = 0.0;
        double ty = 0.0;
        // Hessian bound of the objective: sum of w_i d_i coth(d_i), needed to
        // damp the step; a full step oscillates once points sit further apart
        // than d coth d = 2 allows.
        double hessian_bound = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const HTangent log_i = h_log(m, targets[i]);
            tx += set.weights[i] * log_i.vx;
            ty += set.weights[i] * log_i.vy;
            const double d = h_norm(log_i);
            const double coth_term = d < 1e-8 ? 1.0 + d * d / 3.0 : d / std::tanh(d);
            hessian_bound += set.weights[i] * coth_term;
        }
        const HTangent mean_tangent{m, tx, ty};
        const double residual = h_norm(mean_tangent);
        if (residual < best_residual) {
            best_residual = residual;
            best = m;
        }
        if (residual < tol) {
            return KarcherResult{psi_inverse(m), true, it, residual};
        }
        const double step = 2.0 / (1.0 + hessian_bound);
        m = h_exp(HTangent{m, step * tx, step * ty});
    }
    return KarcherResult{psi_inverse(best), false, max_iter, best_residual};
}

namespace {

double squared(double v) {
    return v * v;
}

int nearest_centroid(const GaussianUni& point, const std::vector<GaussianUni>& centroids) {
    int best = 0;
    double best_d = fisher_distance(point, centroids[0]);
    for (int j = 1; j < static_cast<int>(centroids.size()); ++j) {
        const double d = fisher_distance(point, centroids[static_cast<std::size_t>(j)]);
        if (d < best_d) {
            best_d = d;
            best = j;
        }
    }
    return best;
}

std::vector<GaussianUni> farthest_point_seeds(const std::vector<GaussianUni>& points, int k,
                                              std::size_t first) {
    std::vector<GaussianUni> centroids{points[first]};
    std::vector<double> nearest(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        nearest[i] = fisher_distance(points[i], centroids[0]);
    }
    while (static_cast<int>(centroids.size()) < k) {
        std::size_t pick = 0;
        for (std::size_t i = 1; i < points.size(); ++i) {
            if (nearest[i] > nearest[pick]) {
                pick = i;
            }
        }
        centroids.push_back(points[pick]);
        for (std::size_t i = 0; i < points.size(); ++i) {
            nearest[i] = std::min(nearest[i], fisher_distance(points[i], centroids.back()));
        }
    }
    return centroids;
}

struct LloydRun {
    std::vector<int> assignments;
    std::vector<GaussianUni> centroids;
    double dispersion;
    std::vector<double> history;
};

LloydRun lloyd(const std::vector<GaussianUni>& points, int k, std::size_t first_seed) {
    constexpr int kMaxLloydIters = 100;
    LloydRun run;
    run.centroids = farthest_point_seeds(points, k, first_seed);
    run.assignments.assign(points.size(), 0);

    for (int iter = 0; iter < kMaxLloydIters; ++iter) {
        std::vector<int> assignments(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) {
            assignments[i] = nearest_centroid(points[i], run.centroids);
        }
        // Re-seed empty clusters at the point farthest from its centroid.
        for (int j = 0; j < k; ++j) {
            if (std::find(assignments.begin(), assignments.end(), j) != assignments.end()) {
                continue;
            }
            std::size_t farthest = 0;
            double farthest_d = -1.0;
            for (std::size_t i = 0; i < points.size(); ++i) {
                const double d = fisher_distance(
                    points[i], run.centroids[static_cast<std::size_t>(assignments[i])]);
                if (d > farthest_d) {
                    farthest_d = d;
                    farthest = i;
                }
            }
            run.centroids[static_cast<std::size_t>(j)] = points[farthest];
            assignments[farthest] = j;
        }

        double dispersion = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            dispersion += squared(fisher_distance(
                points[i], run.centroids[static_cast<std::size_t>(assignments[i])]));
        }
        run.history.push_back(dispersion);

        const bool stable = assignments == run.assignments && iter > 0;
        run.assignments = std::move(assignments);
        run.dispersion = dispersion;
        if (stable) {
            break;
        }

        for (int j = 0; j < k; ++j) {
            std::vector<GaussianUni> members;
            for (std::size_t i = 0; i < points.size(); ++i) {
                if (run.assignments[i] == j) {
                    members.push_back(points[i]);
                }
            }
            if (!members.empty()) {
                run.centroids[static_cast<std::size_t>(j)] =
                    karcher_mean(WeightedSet(std::move(members))).mean;
            }
        }
    }

    // Final assignment/dispersion against the last centroid update.
    double dispersion = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        run.assignments[i] = nearest_centroid(points[i], run.centroids);
        dispersion += squared(
            fisher_distance(points[i], run.centroids[static_cast<std::size_t>(run.assignments[i])]));
    }
    run.history.push_back(dispersion);
    run.dispersion = dispersion;
    return run;
}

} // namespace

ClusterResult cluster(const std::vector<GaussianUni>& points, int k, std::uint64_t seed,
                      int restarts) {
    if (points.empty()) {
        throw invalid_parameter("cluster: requires at least one point");
    }
    if (k < 1 || k > static_cast<int>(points.size())) {
        throw invalid_parameter("cluster: requires 1 <= k <= number of points");
    }
    if (restarts < 1) {
        throw invalid_parameter("cluster: requires at least one restart");
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_first(0, points.size() - 1);

    LloydRun best;
    best.dispersion = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        LloydRun run = lloyd(points, k, pick_first(rng));
        if (run.dispersion < best.dispersion) {
            best = std::move(run);
        }
    }
    return ClusterResult{std::move(best.assignments), std::move(best.centroids), best.dispersion,
                         std::move(best.history)};
}

} // namespace fisherrao
