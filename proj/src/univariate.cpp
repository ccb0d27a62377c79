#include "fisherrao/univariate.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fisherrao/quadrature.hpp"

namespace fisherrao {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSigmaFloor = 1e-300;

double acosh1p(double u) {
    return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw invalid_parameter(std::string(what) + " must be finite");
    }
}

} // namespace

GaussianUni::GaussianUni(double mu_, double sigma_) : mu(mu_), sigma(sigma_) {
    require_finite(mu_, "GaussianUni: mu");
    if (!std::isfinite(sigma_) || !(sigma_ >= kSigmaFloor)) {
        throw invalid_parameter("GaussianUni: sigma must be positive");
    }
}

SourceParams::SourceParams(double lambda1_, double lambda2_)
    : lambda1(lambda1_), lambda2(lambda2_) {
    require_finite(lambda1_, "SourceParams: lambda1");
    if (!std::isfinite(lambda2_) || !(lambda2_ > 0.0)) {
        throw invalid_parameter("SourceParams: lambda2 must be positive");
    }
}

NaturalParams::NaturalParams(double theta1_, double theta2_) : theta1(theta1_), theta2(theta2_) {
    require_finite(theta1_, "NaturalParams: theta1");
    if (!std::isfinite(theta2_) || !(theta2_ < 0.0)) {
        throw invalid_parameter("NaturalParams: theta2 must be negative");
    }
}

ExpectationParams::ExpectationParams(double eta1_, double eta2_) : eta1(eta1_), eta2(eta2_) {
    require_finite(eta1_, "ExpectationParams: eta1");
    require_finite(eta2_, "ExpectationParams: eta2");
    if (!(eta2_ - eta1_ * eta1_ > 0.0)) {
        throw invalid_parameter("ExpectationParams: requires eta2 - eta1^2 > 0");
    }
}

Parametrization parametrization_from_string(const std::string& name) {
    if (name == "classic") return Parametrization::Classic;
    if (name == "source") return Parametrization::Source;
    if (name == "natural") return Parametrization::Natural;
    if (name == "expectation") return Parametrization::Expectation;
    throw invalid_parameter("unknown parametrization: " + name);
}

std::string to_string(Parametrization chart) {
    switch (chart) {
        case Parametrization::Classic: return "classic";
        case Parametrization::Source: return "source";
        case Parametrization::Natural: return "natural";
        case Parametrization::Expectation: return "expectation";
    }
    throw invalid_parameter("unknown parametrization enum value");
}

GaussianUni to_classic(const SourceParams& p) {
    return GaussianUni(p.lambda1, std::sqrt(p.lambda2));
}

GaussianUni to_classic(const NaturalParams& p) {
    return GaussianUni(-p.theta1 / (2.0 * p.theta2), 1.0 / std::sqrt(-2.0 * p.theta2));
}

GaussianUni to_classic(const ExpectationParams& p) {
    return GaussianUni(p.eta1, std::sqrt(p.eta2 - p.eta1 * p.eta1));
}

SourceParams to_source(const GaussianUni& g) {
    return SourceParams(g.mu, g.sigma * g.sigma);
}

NaturalParams to_natural(const GaussianUni& g) {
    const double s2 = g.sigma * g.sigma;
    return NaturalParams(g.mu / s2, -0.5 / s2);
}

ExpectationParams to_expectation(const GaussianUni& g) {
    return ExpectationParams(g.mu, g.sigma * g.sigma + g.mu * g.mu);
}

namespace {

GaussianUni classic_from(const ParamPoint& p, Parametrization chart) {
    switch (chart) {
        case Parametrization::Classic: return GaussianUni(p[0], p[1]);
        case Parametrization::Source: return to_classic(SourceParams(p[0], p[1]));
        case Parametrization::Natural: return to_classic(NaturalParams(p[0], p[1]));
        case Parametrization::Expectation: return to_classic(ExpectationParams(p[0], p[1]));
    }
    throw invalid_parameter("unknown parametrization enum value");
}

ParamPoint to_chart(const GaussianUni& g, Parametrization chart) {
    switch (chart) {
        case Parametrization::Classic: return {g.mu, g.sigma};
        case Parametrization::Source: {
            const auto s = to_source(g);
            return {s.lambda1, s.lambda2};
        }
        case Parametrization::Natural: {
            const auto n = to_natural(g);
            return {n.theta1, n.theta2};
        }
        case Parametrization::Expectation: {
            const auto e = to_expectation(g);
            return {e.eta1, e.eta2};
        }
    }
    throw invalid_parameter("unknown parametrization enum value");
}

} // namespace

ParamPoint convert(const ParamPoint& point, Parametrization from, Parametrization to) {
    return to_chart(classic_from(point, from), to);
}

HPoint psi(const GaussianUni& g) {
    return HPoint(g.mu / kSqrt2, g.sigma);
}

GaussianUni psi_inverse(const HPoint& p) {
    return GaussianUni(p.x * kSqrt2, p.y);
}

namespace {

// ln(e^a + e^b) with -inf handled.
double log_sum_exp(double a, double b) {
    const double hi = std::max(a, b);
    if (hi == -std::numeric_limits<double>::infinity()) {
        return hi;
    }
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

} // namespace

double fisher_distance(const GaussianUni& p, const GaussianUni& q) {
    // Rescale by the geometric mean of the sigmas (a Fisher isometry), so the
    // arccosh argument stays representable for wildly separated magnitudes.
    const double s = std::sqrt(p.sigma) * std::sqrt(q.sigma);
    const double dm = (p.mu - q.mu) / s;
    const double a = std::sqrt(p.sigma) / std::sqrt(q.sigma);
    const double ds = a - 1.0 / a;
    const double u = 0.5 * (0.5 * dm * dm + ds * ds);
    if (u < 1e15) {
        return kSqrt2 * acosh1p(u);
    }
    // Log-space route: for u >= 1e15, arccosh(1 + u) = ln(2u) to below double
    // precision, and ln(2u) is assembled from logarithms of the raw inputs so
    // that overflowed intermediates never enter.
    const double lsp = std::log(p.sigma);
    const double lsq = std::log(q.sigma);
    const double lr = std::abs(lsp - lsq);
    const double log_ds2 =
        lr == 0.0 ? -std::numeric_limits<double>::infinity()
                  : lr + 2.0 * std::log1p(-std::exp(-lr));
    const double dmu = std::abs(p.mu - q.mu);
    const double log_dm2_half =
        dmu == 0.0 ? -std::numeric_limits<double>::infinity()
                   : std::log(0.5) + 2.0 * (std::log(dmu) - 0.5 * (lsp + lsq));
    return kSqrt2 * log_sum_exp(log_ds2, log_dm2_half);
}

double fisher_distance_in(Parametrization chart, const ParamPoint& p, const ParamPoint& q) {
    return fisher_distance(classic_from(p, chart), classic_from(q, chart));
}

FisherGeodesic fisher_geodesic(const GaussianUni& p, const GaussianUni& q) {
    if (p == q) {
        throw invalid_parameter("fisher_geodesic: degenerate geodesic, P == Q");
    }
    const HGeodesic g = h_geodesic(psi(p), psi(q));
    FisherGeodesic fg;
    if (g.kind == HGeodesic::Kind::Vertical) {
        fg.kind = FisherGeodesic::Kind::Vertical;
        fg.mu0 = g.x0 * kSqrt2;
    } else {
        fg.kind = FisherGeodesic::Kind::HalfEllipse;
        fg.c = g.c;
        fg.R = g.R;
    }
    fg.t_start = g.t_start;
    fg.t_end = g.t_end;
    return fg;
}

GaussianUni fisher_geodesic_point(const FisherGeodesic& g, double t) {
    if (g.kind == FisherGeodesic::Kind::Vertical) {
        return GaussianUni(g.mu0, std::exp(t));
    }
    return GaussianUni(kSqrt2 * (g.c + g.R * std::tanh(t)), g.R / std::cosh(t));
}

GaussianUni fisher_interpolate(const GaussianUni& p, const GaussianUni& q, double s) {
    if (p == q) {
        return p;
    }
    const FisherGeodesic g = fisher_geodesic(p, q);
    return fisher_geodesic_point(g, g.t_start + s * (g.t_end - g.t_start));
}

GaussianUni fisher_midpoint(const GaussianUni& p, const GaussianUni& q) {
    return fisher_interpolate(p, q, 0.5);
}

std::vector<GaussianUni> fisher_circle(const GaussianUni& center, double r, int n) {
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw invalid_parameter("fisher_circle: radius must be positive");
    }
    if (n < 3) {
        throw invalid_parameter("fisher_circle: need at least 3 points");
    }
    const HCircle circle = h_circle(psi(center), r / kSqrt2);
    std::vector<GaussianUni> points;
    points.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / n;
        const double x = circle.center.x + circle.radius * std::cos(theta);
        const double y = circle.center.y + circle.radius * std::sin(theta);
        points.push_back(psi_inverse(HPoint(x, y)));
    }
    return points;
}

double kl_divergence(const GaussianUni& p, const GaussianUni& q) {
    const double r = p.sigma / q.sigma;
    const double dm = (p.mu - q.mu) / q.sigma;
    return 0.5 * (2.0 * std::log(q.sigma / p.sigma) + r * r + dm * dm - 1.0);
}

double kl_symmetrized(const GaussianUni& p, const GaussianUni& q) {
    const double sum = kl_divergence(p, q) + kl_divergence(q, p);
    return std::sqrt(std::max(sum, 0.0));
}

KlVertical kl_from_fisher_vertical(double d) {
    const double x = kSqrt2 * d;
    // g(d) = (e^{-x} + x - 1) / 2 via expm1 to avoid cancellation near 0, and
    // cosh(x) - 1 = 2 sinh^2(x/2) likewise.
    const double kl_pq = 0.5 * (std::expm1(-x) + x);
    const double kl_qp = 0.5 * (std::expm1(x) - x);
    const double dkl = kSqrt2 * std::abs(std::sinh(0.5 * x));
    return KlVertical{kl_pq, kl_qp, dkl};
}

Eigen::Matrix2d estimate_fisher_matrix(double mu, double sigma) {
    if (!std::isfinite(mu) || !std::isfinite(sigma) || !(sigma > 0.0)) {
        throw invalid_parameter("estimate_fisher_matrix: sigma must be positive");
    }
    const auto estimate = [&](int n) {
        const GaussHermiteRule rule = gauss_hermite(n);
        Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
        const double inv_mass = 1.0 / std::sqrt(std::numbers::pi);
        for (int k = 0; k < n; ++k) {
            // x = mu + sqrt(2) sigma t, z = (x - mu) / sigma
            const double z = kSqrt2 * rule.nodes[k];
            const double d_mu = z / sigma;
            const double d_sigma = (z * z - 1.0) / sigma;
            const double w = rule.weights[k] * inv_mass;
            m(0, 0) += w * d_mu * d_mu;
            m(0, 1) += w * d_mu * d_sigma;
            m(1, 1) += w * d_sigma * d_sigma;
        }
        m(1, 0) = m(0, 1);
        return m;
    };
    const Eigen::Matrix2d coarse = estimate(64);
    const Eigen::Matrix2d fine = estimate(96);
    const double scale = 1.0 + fine.cwiseAbs().maxCoeff();
    if ((coarse - fine).cwiseAbs().maxCoeff() > 1e-9 * scale) {
        throw numeric_failure("estimate_fisher_matrix: quadrature did not converge");
    }
    return fine;
}

double gaussian_curvature(const MetricCoefficient& metric_E, const MetricCoefficient& metric_G,
                          double mu, double sigma, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw invalid_parameter("gaussian_curvature: step h must be positive");
    }
    const auto value = [](const MetricCoefficient& f, double m, double s, const char* name) {
        const double v = f(m, s);
        if (!std::isfinite(v) || !(v > 0.0)) {
            throw invalid_parameter(std::string("gaussian_curvature: invalid metric, ") + name +
                                    " must be positive");
        }
        return v;
    };
    const auto sqrt_eg = [&](double m, double s) {
        return std::sqrt(value(metric_E, m, s, "E") * value(metric_G, m, s, "G"));
    };
    // K = -1/(2 sqrt(EG)) [ d/dmu (G_mu / sqrt(EG)) + d/dsigma (E_sigma / sqrt(EG)) ]
    const auto g_mu_term = [&](double m, double s) {
        const double g_mu = (value(metric_G, m + h, s, "G") - value(metric_G, m - h, s, "G")) /
                            (2.0 * h);
        return g_mu / sqrt_eg(m, s);
    };
    const auto e_sigma_term = [&](double m, double s) {
        const double e_sigma = (value(metric_E, m, s + h, "E") - value(metric_E, m, s - h, "E")) /
                               (2.0 * h);
        return e_sigma / sqrt_eg(m, s);
    };
    const double outer = (g_mu_term(mu + h, sigma) - g_mu_term(mu - h, sigma)) / (2.0 * h) +
                         (e_sigma_term(mu, sigma + h) - e_sigma_term(mu, sigma - h)) / (2.0 * h);
    return -outer / (2.0 * sqrt_eg(mu, sigma));
}

HorizontalBound horizontal_bound_check(const GaussianUni& p, const GaussianUni& q) {
    if (p.sigma != q.sigma) {
        throw invalid_parameter("horizontal_bound_check: requires equal sigma");
    }
    return HorizontalBound{fisher_distance(p, q), std::abs(q.mu - p.mu) / p.sigma};
}

} // namespace fisherrao
