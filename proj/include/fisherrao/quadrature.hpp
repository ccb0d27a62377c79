#pragma once

#include <Eigen/Core>

namespace fisherrao {

/// Nodes and weights of the n-point Gauss-Hermite rule for the physicists'
/// weight: integral of e^{-t^2} f(t) dt ~ sum_k weights[k] f(nodes[k]).
struct GaussHermiteRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

/// Golub-Welsch construction via the symmetric tridiagonal Jacobi matrix.
GaussHermiteRule gauss_hermite(int n);

} // namespace fisherrao
