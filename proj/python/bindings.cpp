#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fisherrao/barycenter.hpp"
#include "fisherrao/hyperbolic.hpp"
#include "fisherrao/multivariate.hpp"
#include "fisherrao/univariate.hpp"

namespace py = pybind11;
using namespace fisherrao;

namespace {

Parametrization chart_from(const std::string& name) {
    return parametrization_from_string(name);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fisher-Rao geometry of normal distributions";

    py::register_exception<invalid_parameter>(m, "InvalidParameter", PyExc_ValueError);
    py::register_exception<numeric_failure>(m, "NumericFailure", PyExc_ArithmeticError);

    py::class_<GaussianUni>(m, "GaussianUni")
        .def(py::init<double, double>(), py::arg("mu"), py::arg("sigma"))
        .def_readonly("mu", &GaussianUni::mu)
        .def_readonly("sigma", &GaussianUni::sigma)
        .def("__repr__", [](const GaussianUni& g) {
            return "GaussianUni(mu=" + std::to_string(g.mu) +
                   ", sigma=" + std::to_string(g.sigma) + ")";
        });

    py::class_<BivariateAngular>(m, "BivariateAngular")
        .def(py::init<double, double, double, double, double>(), py::arg("sigma1"),
             py::arg("sigma2"), py::arg("mu1"), py::arg("mu2"), py::arg("u"))
        .def_readonly("sigma1", &BivariateAngular::sigma1)
        .def_readonly("sigma2", &BivariateAngular::sigma2)
        .def_readonly("mu1", &BivariateAngular::mu1)
        .def_readonly("mu2", &BivariateAngular::mu2)
        .def_readonly("u", &BivariateAngular::u)
        .def("covariance", &BivariateAngular::covariance);

    py::class_<KarcherResult>(m, "KarcherResult")
        .def_readonly("mean", &KarcherResult::mean)
        .def_readonly("converged", &KarcherResult::converged)
        .def_readonly("iterations", &KarcherResult::iterations)
        .def_readonly("residual", &KarcherResult::residual);

    py::class_<ClusterResult>(m, "ClusterResult")
        .def_readonly("assignments", &ClusterResult::assignments)
        .def_readonly("centroids", &ClusterResult::centroids)
        .def_readonly("within_dispersion", &ClusterResult::within_dispersion)
        .def_readonly("dispersion_history", &ClusterResult::dispersion_history);

    py::class_<PathEstimate>(m, "PathEstimate")
        .def_readonly("length", &PathEstimate::length)
        .def_readonly("iterations", &PathEstimate::iterations)
        .def_readonly("length_history", &PathEstimate::length_history);

    // univariate
    m.def("fisher_distance", &fisher_distance, py::arg("p"), py::arg("q"),
          "Fisher-Rao distance between two univariate normals");
    m.def(
        "fisher_distance_in",
        [](const std::string& chart, std::pair<double, double> p, std::pair<double, double> q) {
            return fisher_distance_in(chart_from(chart), {p.first, p.second},
                                      {q.first, q.second});
        },
        py::arg("parametrization"), py::arg("p"), py::arg("q"),
        "Fisher distance with inputs in classic/source/natural/expectation coordinates");
    m.def(
        "convert",
        [](std::pair<double, double> point, const std::string& from, const std::string& to) {
            const ParamPoint result =
                convert({point.first, point.second}, chart_from(from), chart_from(to));
            return std::pair{result[0], result[1]};
        },
        py::arg("point"), py::arg("from_chart"), py::arg("to_chart"));
    m.def("fisher_midpoint", &fisher_midpoint, py::arg("p"), py::arg("q"));
    m.def("fisher_interpolate", &fisher_interpolate, py::arg("p"), py::arg("q"), py::arg("s"));
    m.def(
        "fisher_geodesic_points",
        [](const GaussianUni& p, const GaussianUni& q, int n) {
            if (n < 2) {
                throw invalid_parameter("geodesic sampling requires n >= 2");
            }
            const FisherGeodesic g = fisher_geodesic(p, q);
            std::vector<GaussianUni> points;
            points.reserve(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k) {
                const double t = g.t_start + (g.t_end - g.t_start) * k / (n - 1);
                points.push_back(fisher_geodesic_point(g, t));
            }
            return points;
        },
        py::arg("p"), py::arg("q"), py::arg("n"),
        "n points along the geodesic from p to q, endpoints included");
    m.def("fisher_circle", &fisher_circle, py::arg("center"), py::arg("r"), py::arg("n"));
    m.def("kl_divergence", &kl_divergence, py::arg("p"), py::arg("q"));
    m.def("kl_symmetrized", &kl_symmetrized, py::arg("p"), py::arg("q"));
    m.def(
        "kl_from_fisher_vertical",
        [](double d) {
            const KlVertical v = kl_from_fisher_vertical(d);
            return std::make_tuple(v.kl_pq, v.kl_qp, v.dkl);
        },
        py::arg("d"), "(KL(P||Q), KL(Q||P), symmetrized) for a vertical pair at signed distance d");
    m.def("estimate_fisher_matrix", &estimate_fisher_matrix, py::arg("mu"), py::arg("sigma"));
    m.def("gaussian_curvature", &gaussian_curvature, py::arg("metric_E"), py::arg("metric_G"),
          py::arg("mu"), py::arg("sigma"), py::arg("h") = 1e-4);
    m.def(
        "fisher_curvature",
        [](double mu, double sigma, double h) {
            return gaussian_curvature([](double, double s) { return 1.0 / (s * s); },
                                      [](double, double s) { return 2.0 / (s * s); }, mu, sigma,
                                      h);
        },
        py::arg("mu"), py::arg("sigma"), py::arg("h") = 1e-4,
        "curvature of the Fisher metric itself at (mu, sigma)");
    m.def(
        "horizontal_bound_check",
        [](const GaussianUni& p, const GaussianUni& q) {
            const HorizontalBound hb = horizontal_bound_check(p, q);
            return std::pair{hb.distance, hb.bound};
        },
        py::arg("p"), py::arg("q"));

    // multivariate
    m.def(
        "fisher_distance_round",
        [](const Eigen::VectorXd& mu1, double sigma1, const Eigen::VectorXd& mu2, double sigma2) {
            return fisher_distance_round(RoundGaussian(mu1, sigma1), RoundGaussian(mu2, sigma2));
        },
        py::arg("mu1"), py::arg("sigma1"), py::arg("mu2"), py::arg("sigma2"));
    m.def(
        "fisher_distance_diagonal",
        [](const Eigen::VectorXd& mu1, const Eigen::VectorXd& sigma1, const Eigen::VectorXd& mu2,
           const Eigen::VectorXd& sigma2) {
            return fisher_distance_diagonal(DiagonalGaussian(mu1, sigma1),
                                            DiagonalGaussian(mu2, sigma2));
        },
        py::arg("mu1"), py::arg("sigma1"), py::arg("mu2"), py::arg("sigma2"));
    m.def("fisher_distance_fixed_mean", &fisher_distance_fixed_mean, py::arg("s1"), py::arg("s2"));
    m.def("fisher_distance_diag_u0", &fisher_distance_diag_u0, py::arg("p"), py::arg("q"));
    m.def("bivariate_metric", &bivariate_metric, py::arg("beta"));
    m.def("estimate_fisher_matrix_bivariate", &estimate_fisher_matrix_bivariate, py::arg("beta"));
    m.def("bivariate_distance_estimate", &bivariate_distance_estimate, py::arg("p"), py::arg("q"),
          py::arg("segments") = 64, py::arg("iterations") = 500);

    // barycenter
    m.def(
        "karcher_mean",
        [](const std::vector<GaussianUni>& points, const std::vector<double>& weights, double tol,
           int max_iter) {
            const WeightedSet set =
                weights.empty() ? WeightedSet(points) : WeightedSet(points, weights);
            return karcher_mean(set, tol, max_iter);
        },
        py::arg("points"), py::arg("weights") = std::vector<double>{}, py::arg("tol") = 1e-10,
        py::arg("max_iter") = 200);
    m.def("cluster", &cluster, py::arg("points"), py::arg("k"), py::arg("seed"),
          py::arg("restarts") = 8);
}
