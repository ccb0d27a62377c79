#pragma once

#include <cstdint>
#include <vector>

#include "fisherrao/errors.hpp"
#include "fisherrao/univariate.hpp"

namespace fisherrao {

/// Weighted collection of univariate normals; weights are strictly positive
/// and normalized to sum to 1 at construction.
struct WeightedSet {
    std::vector<GaussianUni> points;
    std::vector<double> weights;

    explicit WeightedSet(std::vector<GaussianUni> points_); // uniform weights
    WeightedSet(std::vector<GaussianUni> points_, std::vector<double> weights_);
};

struct KarcherResult {
    GaussianUni mean;
    bool converged;
    int iterations;
    double residual; // metric norm of the final tangent mean
};

/// Weighted Karcher mean under the Fisher metric: tangent-space fixed-point
/// iteration in the half-plane image of psi, started from the coordinate
/// average with geometric-mean height. Returns the best iterate with
/// converged = false when max_iter is exhausted.
KarcherResult karcher_mean(const WeightedSet& set, double tol = 1e-10, int max_iter = 200);

struct ClusterResult {
    std::vector<int> assignments;
    std::vector<GaussianUni> centroids;
    double within_dispersion; // sum of squared Fisher distances to assigned centroids
    std::vector<double> dispersion_history; // per Lloyd iteration of the winning restart
};

/// Lloyd clustering under the Fisher distance with Karcher-mean centroid
/// updates. Deterministic given seed; farthest-point seeding; the best of
/// `restarts` runs is returned. Empty clusters are re-seeded at the point
/// farthest from its assigned centroid.
ClusterResult cluster(const std::vector<GaussianUni>& points, int k, std::uint64_t seed,
                      int restarts = 8);

} // namespace fisherrao
