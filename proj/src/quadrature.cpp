#include "fisherrao/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "fisherrao/errors.hpp"

namespace fisherrao {

GaussHermiteRule gauss_hermite(int n) {
    if (n < 1) {
        throw invalid_parameter("gauss_hermite: need at least one node");
    }
    // Jacobi matrix of the Hermite recurrence: zero diagonal, off-diagonal
    // sqrt(k/2). Eigenvalues are the nodes; the squared first eigenvector
    // components give the weights up to the total mass sqrt(pi).
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = std::sqrt(0.5 * k);
        jacobi(k, k - 1) = b;
        jacobi(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    if (solver.info() != Eigen::Success) {
        throw numeric_failure("gauss_hermite: eigensolver did not converge");
    }
    GaussHermiteRule rule;
    rule.nodes = solver.eigenvalues();
    rule.weights.resize(n);
    const double mass = std::sqrt(std::numbers::pi);
    for (int k = 0; k < n; ++k) {
        const double v0 = solver.eigenvectors()(0, k);
        rule.weights[k] = mass * v0 * v0;
    }
    return rule;
}

} // namespace fisherrao
