// Command line front end: parses distributions from flags or JSON documents,
// dispatches to the library and emits deterministic JSON or CSV results.
//
// Exit codes: 0 success, 2 parse/schema error, 3 domain error, 4 numeric failure.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fisherrao/barycenter.hpp"
#include "fisherrao/multivariate.hpp"
#include "fisherrao/univariate.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace fisherrao;

class schema_error : public std::runtime_error {
public:
    explicit schema_error(const std::string& what) : std::runtime_error(what) {}
};

struct OutputOptions {
    std::string format = "json";
    int digits = 12;
};

// ---------------------------------------------------------------------------
// formatting

double round_sig(double value, int digits) {
    if (!std::isfinite(value)) {
        throw numeric_failure("refusing to emit a non-finite number");
    }
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*g", digits, value);
    return std::strtod(buffer, nullptr);
}

std::string format_sig(double value, int digits) {
    if (!std::isfinite(value)) {
        throw numeric_failure("refusing to emit a non-finite number");
    }
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*g", digits, value);
    return buffer;
}

json json_number(double value, const OutputOptions& out) {
    return json(round_sig(value, out.digits));
}

json json_vector(const Eigen::VectorXd& v, const OutputOptions& out) {
    json arr = json::array();
    for (int i = 0; i < v.size(); ++i) {
        arr.push_back(json_number(v[i], out));
    }
    return arr;
}

json json_matrix(const Eigen::MatrixXd& m, const OutputOptions& out) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) {
            row.push_back(json_number(m(i, j), out));
        }
        rows.push_back(row);
    }
    return rows;
}

void emit_json(const json& doc) {
    std::cout << doc.dump(2) << "\n";
}

void emit_csv_rows(const std::vector<std::pair<std::string, double>>& rows,
                   const OutputOptions& out) {
    for (const auto& [name, value] : rows) {
        std::cout << name << "," << format_sig(value, out.digits) << "\n";
    }
}

void emit_csv_points(const std::vector<std::array<double, 3>>& rows, const OutputOptions& out) {
    std::cout << "t,mu,sigma\n";
    for (const auto& row : rows) {
        std::cout << format_sig(row[0], out.digits) << "," << format_sig(row[1], out.digits)
                  << "," << format_sig(row[2], out.digits) << "\n";
    }
}

// ---------------------------------------------------------------------------
// inline value parsing

double parse_number(const std::string& text) {
    const char* begin = text.data();
    const char* end = begin + text.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw schema_error("not a number: '" + text + "'");
    }
    return value;
}

std::vector<double> parse_number_list(const std::string& text, std::size_t expected = 0) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        values.push_back(parse_number(item));
    }
    if (expected != 0 && values.size() != expected) {
        throw schema_error("expected " + std::to_string(expected) + " comma-separated values, got " +
                           std::to_string(values.size()) + " in '" + text + "'");
    }
    return values;
}

// ---------------------------------------------------------------------------
// JSON document schema

json load_json(const std::string& path) {
    try {
        if (path == "-") {
            return json::parse(std::cin);
        }
        std::ifstream file(path);
        if (!file) {
            throw schema_error("cannot open input file: " + path);
        }
        return json::parse(file);
    } catch (const nlohmann::json::exception& e) {
        throw schema_error(std::string("invalid JSON: ") + e.what());
    }
}

void check_fields(const json& doc, const std::vector<std::string>& allowed,
                  const std::vector<std::string>& required) {
    if (!doc.is_object()) {
        throw schema_error("distribution document must be a JSON object");
    }
    for (const auto& [key, value] : doc.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw schema_error("unknown field '" + key + "' in distribution document");
        }
    }
    for (const std::string& key : required) {
        if (!doc.contains(key)) {
            throw schema_error("missing field '" + key + "' in distribution document");
        }
    }
}

double number_field(const json& doc, const std::string& key) {
    if (!doc.at(key).is_number()) {
        throw schema_error("field '" + key + "' must be a number");
    }
    return doc.at(key).get<double>();
}

Eigen::VectorXd vector_field(const json& doc, const std::string& key) {
    const json& arr = doc.at(key);
    if (!arr.is_array() || arr.empty()) {
        throw schema_error("field '" + key + "' must be a non-empty array of numbers");
    }
    Eigen::VectorXd v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number()) {
            throw schema_error("field '" + key + "' must contain only numbers");
        }
        v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
    }
    return v;
}

Eigen::MatrixXd matrix_field(const json& doc, const std::string& key) {
    const json& rows = doc.at(key);
    if (!rows.is_array() || rows.empty()) {
        throw schema_error("field '" + key + "' must be a non-empty array of rows");
    }
    const std::size_t n = rows.size();
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n) {
            throw schema_error("field '" + key + "' must be a square array of arrays");
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (!rows[i][j].is_number()) {
                throw schema_error("field '" + key + "' must contain only numbers");
            }
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows[i][j].get<double>();
        }
    }
    return m;
}

// A parsed distribution document: the variant of supported models.
struct Distribution {
    std::string type;
    Parametrization chart = Parametrization::Classic; // univariate only
    std::optional<GaussianUni> univariate;
    std::optional<RoundGaussian> round;
    std::optional<DiagonalGaussian> diagonal;
    std::optional<FixedMeanGaussian> fixed_mean;
    std::optional<BivariateAngular> bivariate;

    json echo(const OutputOptions& out) const;
};

const char* payload_key_1(Parametrization chart) {
    switch (chart) {
        case Parametrization::Classic: return "mu";
        case Parametrization::Source: return "lambda1";
        case Parametrization::Natural: return "theta1";
        case Parametrization::Expectation: return "eta1";
    }
    return "mu";
}

const char* payload_key_2(Parametrization chart) {
    switch (chart) {
        case Parametrization::Classic: return "sigma";
        case Parametrization::Source: return "lambda2";
        case Parametrization::Natural: return "theta2";
        case Parametrization::Expectation: return "eta2";
    }
    return "sigma";
}

Distribution parse_distribution(const json& doc) {
    if (!doc.is_object() || !doc.contains("type") || !doc.at("type").is_string()) {
        throw schema_error("distribution document requires a string 'type' field");
    }
    Distribution dist;
    dist.type = doc.at("type").get<std::string>();
    if (dist.type == "univariate") {
        std::string chart_name = "classic";
        if (doc.contains("parametrization")) {
            if (!doc.at("parametrization").is_string()) {
                throw schema_error("field 'parametrization' must be a string");
            }
            chart_name = doc.at("parametrization").get<std::string>();
        }
        try {
            dist.chart = parametrization_from_string(chart_name);
        } catch (const invalid_parameter& e) {
            throw schema_error(e.what());
        }
        const std::string k1 = payload_key_1(dist.chart);
        const std::string k2 = payload_key_2(dist.chart);
        check_fields(doc, {"type", "parametrization", k1, k2}, {k1, k2});
        const ParamPoint point{number_field(doc, k1), number_field(doc, k2)};
        const ParamPoint classic = convert(point, dist.chart, Parametrization::Classic);
        dist.univariate = GaussianUni(classic[0], classic[1]);
    } else if (dist.type == "round") {
        check_fields(doc, {"type", "mu", "sigma"}, {"mu", "sigma"});
        dist.round = RoundGaussian(vector_field(doc, "mu"), number_field(doc, "sigma"));
    } else if (dist.type == "diagonal") {
        check_fields(doc, {"type", "mu", "sigma"}, {"mu", "sigma"});
        dist.diagonal = DiagonalGaussian(vector_field(doc, "mu"), vector_field(doc, "sigma"));
    } else if (dist.type == "fixed-mean") {
        check_fields(doc, {"type", "mu", "covariance"}, {"mu", "covariance"});
        dist.fixed_mean = FixedMeanGaussian(vector_field(doc, "mu"), matrix_field(doc, "covariance"));
    } else if (dist.type == "bivariate-angular") {
        check_fields(doc, {"type", "sigma1", "sigma2", "mu1", "mu2", "u"},
                     {"sigma1", "sigma2", "mu1", "mu2", "u"});
        dist.bivariate =
            BivariateAngular(number_field(doc, "sigma1"), number_field(doc, "sigma2"),
                             number_field(doc, "mu1"), number_field(doc, "mu2"),
                             number_field(doc, "u"));
    } else {
        throw schema_error("unknown distribution type: '" + dist.type + "'");
    }
    return dist;
}

json Distribution::echo(const OutputOptions& out) const {
    json doc;
    doc["type"] = type;
    if (univariate) {
        doc["parametrization"] = to_string(chart);
        const ParamPoint point = convert({univariate->mu, univariate->sigma},
                                         Parametrization::Classic, chart);
        doc[payload_key_1(chart)] = json_number(point[0], out);
        doc[payload_key_2(chart)] = json_number(point[1], out);
    } else if (round) {
        doc["mu"] = json_vector(round->mu, out);
        doc["sigma"] = json_number(round->sigma, out);
    } else if (diagonal) {
        doc["mu"] = json_vector(diagonal->mu, out);
        doc["sigma"] = json_vector(diagonal->sigma, out);
    } else if (fixed_mean) {
        doc["mu"] = json_vector(fixed_mean->mu, out);
        doc["covariance"] = json_matrix(fixed_mean->Sigma, out);
    } else if (bivariate) {
        doc["sigma1"] = json_number(bivariate->sigma1, out);
        doc["sigma2"] = json_number(bivariate->sigma2, out);
        doc["mu1"] = json_number(bivariate->mu1, out);
        doc["mu2"] = json_number(bivariate->mu2, out);
        doc["u"] = json_number(bivariate->u, out);
    }
    return doc;
}

// A pair of documents from --p1/--p2 inline values or an --in JSON file.
struct PairInputs {
    std::string p1_inline;
    std::string p2_inline;
    std::string in_path;
    std::string chart_name = "classic";

    std::pair<Distribution, Distribution> resolve() const {
        if (!in_path.empty()) {
            const json doc = load_json(in_path);
            if (!doc.is_object() || !doc.contains("p1") || !doc.contains("p2")) {
                throw schema_error("expected a JSON object with 'p1' and 'p2' documents");
            }
            return {parse_distribution(doc.at("p1")), parse_distribution(doc.at("p2"))};
        }
        if (p1_inline.empty() || p2_inline.empty()) {
            throw CLI::ValidationError("provide --p1 and --p2, or --in");
        }
        Parametrization chart;
        try {
            chart = parametrization_from_string(chart_name);
        } catch (const invalid_parameter& e) {
            throw schema_error(e.what());
        }
        const auto make = [&](const std::string& text) {
            const auto values = parse_number_list(text, 2);
            Distribution dist;
            dist.type = "univariate";
            dist.chart = chart;
            const ParamPoint classic =
                convert({values[0], values[1]}, chart, Parametrization::Classic);
            dist.univariate = GaussianUni(classic[0], classic[1]);
            return dist;
        };
        return {make(p1_inline), make(p2_inline)};
    }

    void add_options(CLI::App* cmd, bool with_chart = true) {
        cmd->add_option("--p1", p1_inline, "first point as 'a,b' (univariate)");
        cmd->add_option("--p2", p2_inline, "second point as 'a,b' (univariate)");
        cmd->add_option("--in", in_path, "JSON file with {\"p1\":..., \"p2\":...} ('-' = stdin)");
        if (with_chart) {
            cmd->add_option("--parametrization", chart_name,
                            "chart of inline points: classic|source|natural|expectation");
        }
    }
};

GaussianUni require_univariate(const Distribution& dist) {
    if (!dist.univariate) {
        throw invalid_parameter("this operation requires univariate inputs");
    }
    return *dist.univariate;
}

json result_header(const std::string& operation, std::initializer_list<json> inputs) {
    json doc;
    doc["operation"] = operation;
    doc["inputs"] = json::array();
    for (const json& input : inputs) {
        doc["inputs"].push_back(input);
    }
    return doc;
}

// ---------------------------------------------------------------------------
// commands

void run_dist(const PairInputs& inputs, const OutputOptions& out) {
    const auto [a, b] = inputs.resolve();
    if (a.type != b.type) {
        throw invalid_parameter("both inputs must have the same model type");
    }
    double distance = 0.0;
    if (a.univariate) {
        distance = fisher_distance(*a.univariate, *b.univariate);
    } else if (a.round) {
        distance = fisher_distance_round(*a.round, *b.round);
    } else if (a.diagonal) {
        distance = fisher_distance_diagonal(*a.diagonal, *b.diagonal);
    } else if (a.fixed_mean) {
        if (a.fixed_mean->mu != b.fixed_mean->mu) {
            throw invalid_parameter("fixed-mean model requires equal means");
        }
        distance = fisher_distance_fixed_mean(a.fixed_mean->Sigma, b.fixed_mean->Sigma);
    } else if (a.bivariate) {
        distance = fisher_distance_diag_u0(*a.bivariate, *b.bivariate);
    }
    if (out.format == "csv") {
        emit_csv_rows({{"distance", distance}}, out);
        return;
    }
    json doc = result_header("dist", {a.echo(out), b.echo(out)});
    doc["model"] = a.type;
    doc["distance"] = json_number(distance, out);
    emit_json(doc);
}

void run_geodesic(const PairInputs& inputs, int n, const OutputOptions& out) {
    if (n < 2) {
        throw invalid_parameter("geodesic sampling requires n >= 2");
    }
    const auto [a, b] = inputs.resolve();
    const GaussianUni p = require_univariate(a);
    const GaussianUni q = require_univariate(b);
    const FisherGeodesic g = fisher_geodesic(p, q);
    std::vector<std::array<double, 3>> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double t = g.t_start + (g.t_end - g.t_start) * k / (n - 1);
        const GaussianUni pt = fisher_geodesic_point(g, t);
        rows.push_back({t, pt.mu, pt.sigma});
    }
    if (out.format == "csv") {
        emit_csv_points(rows, out);
        return;
    }
    json doc = result_header("geodesic", {a.echo(out), b.echo(out)});
    doc["kind"] = g.kind == FisherGeodesic::Kind::Vertical ? "vertical" : "half-ellipse";
    doc["distance"] = json_number(fisher_distance(p, q), out);
    doc["points"] = json::array();
    for (const auto& row : rows) {
        json point;
        point["t"] = json_number(row[0], out);
        point["mu"] = json_number(row[1], out);
        point["sigma"] = json_number(row[2], out);
        doc["points"].push_back(point);
    }
    emit_json(doc);
}

void run_circle(const std::string& center_text, double r, int n, const OutputOptions& out) {
    const auto values = parse_number_list(center_text, 2);
    const GaussianUni center(values[0], values[1]);
    const std::vector<GaussianUni> points = fisher_circle(center, r, n);
    std::vector<std::array<double, 3>> rows;
    rows.reserve(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(points.size());
        rows.push_back({theta, points[k].mu, points[k].sigma});
    }
    if (out.format == "csv") {
        emit_csv_points(rows, out);
        return;
    }
    Distribution echo_center;
    echo_center.type = "univariate";
    echo_center.univariate = center;
    json doc = result_header("circle", {echo_center.echo(out)});
    doc["radius"] = json_number(r, out);
    doc["points"] = json::array();
    for (const auto& row : rows) {
        json point;
        point["t"] = json_number(row[0], out);
        point["mu"] = json_number(row[1], out);
        point["sigma"] = json_number(row[2], out);
        doc["points"].push_back(point);
    }
    emit_json(doc);
}

void run_midpoint(const PairInputs& inputs, const OutputOptions& out) {
    const auto [a, b] = inputs.resolve();
    const GaussianUni p = require_univariate(a);
    const GaussianUni q = require_univariate(b);
    const GaussianUni mid = fisher_midpoint(p, q);
    if (out.format == "csv") {
        emit_csv_points({{0.5, mid.mu, mid.sigma}}, out);
        return;
    }
    json doc = result_header("midpoint", {a.echo(out), b.echo(out)});
    doc["midpoint"]["mu"] = json_number(mid.mu, out);
    doc["midpoint"]["sigma"] = json_number(mid.sigma, out);
    doc["diagnostics"]["distance_p1"] = json_number(fisher_distance(p, mid), out);
    doc["diagnostics"]["distance_p2"] = json_number(fisher_distance(q, mid), out);
    emit_json(doc);
}

void run_average(const std::vector<std::string>& point_texts, const std::string& weights_text,
                 const std::string& in_path, double tol, int max_iter, const OutputOptions& out) {
    std::vector<GaussianUni> points;
    std::vector<double> weights;
    json echoed = json::array();
    if (!in_path.empty()) {
        const json doc = load_json(in_path);
        if (!doc.is_object() || !doc.contains("points") || !doc.at("points").is_array()) {
            throw schema_error("expected a JSON object with a 'points' array");
        }
        for (const json& entry : doc.at("points")) {
            const Distribution dist = parse_distribution(entry);
            points.push_back(require_univariate(dist));
            echoed.push_back(dist.echo(out));
        }
        if (doc.contains("weights")) {
            for (const json& w : doc.at("weights")) {
                if (!w.is_number()) {
                    throw schema_error("'weights' must contain only numbers");
                }
                weights.push_back(w.get<double>());
            }
        }
    } else {
        for (const std::string& text : point_texts) {
            const auto values = parse_number_list(text, 2);
            points.emplace_back(values[0], values[1]);
            Distribution dist;
            dist.type = "univariate";
            dist.univariate = points.back();
            echoed.push_back(dist.echo(out));
        }
        if (!weights_text.empty()) {
            weights = parse_number_list(weights_text);
        }
    }
    if (points.empty()) {
        throw CLI::ValidationError("provide at least one --point, or --in");
    }
    const WeightedSet set = weights.empty() ? WeightedSet(points) : WeightedSet(points, weights);
    const KarcherResult result = karcher_mean(set, tol, max_iter);
    if (!result.converged) {
        throw numeric_failure("karcher mean did not converge within max-iter");
    }
    if (out.format == "csv") {
        emit_csv_points({{0.0, result.mean.mu, result.mean.sigma}}, out);
        return;
    }
    json doc;
    doc["operation"] = "average";
    doc["inputs"] = echoed;
    doc["mean"]["mu"] = json_number(result.mean.mu, out);
    doc["mean"]["sigma"] = json_number(result.mean.sigma, out);
    doc["diagnostics"]["iterations"] = result.iterations;
    doc["diagnostics"]["residual"] = json_number(result.residual, out);
    emit_json(doc);
}

void run_cluster(const std::string& in_path, int k, std::uint64_t seed, int restarts,
                 const OutputOptions& out) {
    const json doc = load_json(in_path);
    const json* array = nullptr;
    if (doc.is_array()) {
        array = &doc;
    } else if (doc.is_object() && doc.contains("points") && doc.at("points").is_array()) {
        array = &doc.at("points");
    } else {
        throw schema_error("expected a JSON array of documents or an object with 'points'");
    }
    std::vector<GaussianUni> points;
    for (const json& entry : *array) {
        points.push_back(require_univariate(parse_distribution(entry)));
    }
    const ClusterResult result = cluster(points, k, seed, restarts);
    if (out.format == "csv") {
        std::vector<std::array<double, 3>> rows;
        for (std::size_t j = 0; j < result.centroids.size(); ++j) {
            rows.push_back({static_cast<double>(j), result.centroids[j].mu,
                            result.centroids[j].sigma});
        }
        emit_csv_points(rows, out);
        return;
    }
    json res;
    res["operation"] = "cluster";
    res["k"] = k;
    res["seed"] = seed;
    res["restarts"] = restarts;
    res["assignments"] = result.assignments;
    res["centroids"] = json::array();
    for (const GaussianUni& c : result.centroids) {
        json centroid;
        centroid["mu"] = json_number(c.mu, out);
        centroid["sigma"] = json_number(c.sigma, out);
        res["centroids"].push_back(centroid);
    }
    res["within_dispersion"] = json_number(result.within_dispersion, out);
    res["diagnostics"]["iterations"] = result.dispersion_history.size();
    res["diagnostics"]["dispersion_history"] = json::array();
    for (double d : result.dispersion_history) {
        res["diagnostics"]["dispersion_history"].push_back(json_number(d, out));
    }
    emit_json(res);
}

void run_kl(const PairInputs& inputs, const OutputOptions& out) {
    const auto [a, b] = inputs.resolve();
    const GaussianUni p = require_univariate(a);
    const GaussianUni q = require_univariate(b);
    const double kl_pq = kl_divergence(p, q);
    const double kl_qp = kl_divergence(q, p);
    const double sym = kl_symmetrized(p, q);
    if (out.format == "csv") {
        emit_csv_rows({{"kl_pq", kl_pq}, {"kl_qp", kl_qp}, {"symmetrized", sym}}, out);
        return;
    }
    json doc = result_header("kl", {a.echo(out), b.echo(out)});
    doc["kl_pq"] = json_number(kl_pq, out);
    doc["kl_qp"] = json_number(kl_qp, out);
    doc["symmetrized"] = json_number(sym, out);
    emit_json(doc);
}

void run_fisher_matrix(const std::string& model, const std::string& point_text,
                       const std::string& beta_text, const std::string& in_path,
                       const OutputOptions& out) {
    if (model == "univariate") {
        if (point_text.empty()) {
            throw CLI::ValidationError("--model univariate requires --point mu,sigma");
        }
        const auto values = parse_number_list(point_text, 2);
        const Eigen::Matrix2d estimate = estimate_fisher_matrix(values[0], values[1]);
        if (out.format == "csv") {
            std::vector<std::pair<std::string, double>> rows;
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    rows.push_back({std::to_string(i) + "," + std::to_string(j), estimate(i, j)});
                }
            }
            emit_csv_rows(rows, out);
            return;
        }
        json doc;
        doc["operation"] = "fisher-matrix";
        doc["model"] = model;
        doc["point"]["mu"] = json_number(values[0], out);
        doc["point"]["sigma"] = json_number(values[1], out);
        doc["estimate"] = json_matrix(estimate, out);
        emit_json(doc);
        return;
    }
    if (model == "bivariate-angular") {
        std::optional<BivariateAngular> beta;
        if (!beta_text.empty()) {
            const auto values = parse_number_list(beta_text, 5);
            beta.emplace(values[0], values[1], values[2], values[3], values[4]);
        } else if (!in_path.empty()) {
            const Distribution dist = parse_distribution(load_json(in_path));
            if (!dist.bivariate) {
                throw schema_error("expected a bivariate-angular document");
            }
            beta = *dist.bivariate;
        } else {
            throw CLI::ValidationError(
                "--model bivariate-angular requires --beta s1,s2,m1,m2,u or --in");
        }
        const Eigen::Matrix<double, 5, 5> closed = bivariate_metric(*beta);
        const Eigen::Matrix<double, 5, 5> estimate = estimate_fisher_matrix_bivariate(*beta);
        if (out.format == "csv") {
            std::vector<std::pair<std::string, double>> rows;
            for (int i = 0; i < 5; ++i) {
                for (int j = 0; j < 5; ++j) {
                    rows.push_back({std::to_string(i) + "," + std::to_string(j), closed(i, j)});
                }
            }
            emit_csv_rows(rows, out);
            return;
        }
        json doc;
        doc["operation"] = "fisher-matrix";
        doc["model"] = model;
        Distribution echo_dist;
        echo_dist.type = "bivariate-angular";
        echo_dist.bivariate = beta;
        doc["point"] = echo_dist.echo(out);
        doc["closed"] = json_matrix(closed, out);
        doc["estimate"] = json_matrix(estimate, out);
        doc["max_residual"] = json_number((closed - estimate).cwiseAbs().maxCoeff(), out);
        emit_json(doc);
        return;
    }
    throw schema_error("unknown model for fisher-matrix: '" + model + "'");
}

void run_curvature(const std::string& point_text, double h, const OutputOptions& out) {
    const auto values = parse_number_list(point_text, 2);
    const GaussianUni point(values[0], values[1]);
    const auto fisher_E = [](double, double s) { return 1.0 / (s * s); };
    const auto fisher_G = [](double, double s) { return 2.0 / (s * s); };
    const double k = gaussian_curvature(fisher_E, fisher_G, point.mu, point.sigma, h);
    if (out.format == "csv") {
        emit_csv_rows({{"curvature", k}}, out);
        return;
    }
    json doc;
    doc["operation"] = "curvature";
    doc["point"]["mu"] = json_number(point.mu, out);
    doc["point"]["sigma"] = json_number(point.sigma, out);
    doc["step"] = json_number(h, out);
    doc["curvature"] = json_number(k, out);
    emit_json(doc);
}

void run_bivar_estimate(const std::string& b1_text, const std::string& b2_text,
                        const std::string& in_path, int segments, int iterations,
                        const OutputOptions& out) {
    std::optional<BivariateAngular> p, q;
    if (!in_path.empty()) {
        const json doc = load_json(in_path);
        if (!doc.is_object() || !doc.contains("p1") || !doc.contains("p2")) {
            throw schema_error("expected a JSON object with 'p1' and 'p2' documents");
        }
        const Distribution a = parse_distribution(doc.at("p1"));
        const Distribution b = parse_distribution(doc.at("p2"));
        if (!a.bivariate || !b.bivariate) {
            throw schema_error("expected bivariate-angular documents");
        }
        p = *a.bivariate;
        q = *b.bivariate;
    } else {
        if (b1_text.empty() || b2_text.empty()) {
            throw CLI::ValidationError("provide --b1 and --b2 as s1,s2,m1,m2,u, or --in");
        }
        const auto v1 = parse_number_list(b1_text, 5);
        const auto v2 = parse_number_list(b2_text, 5);
        p.emplace(v1[0], v1[1], v1[2], v1[3], v1[4]);
        q.emplace(v2[0], v2[1], v2[2], v2[3], v2[4]);
    }
    const PathEstimate estimate = bivariate_distance_estimate(*p, *q, segments, iterations);
    if (out.format == "csv") {
        emit_csv_rows({{"length", estimate.length},
                       {"iterations", static_cast<double>(estimate.iterations)}},
                      out);
        return;
    }
    Distribution ed1, ed2;
    ed1.type = ed2.type = "bivariate-angular";
    ed1.bivariate = p;
    ed2.bivariate = q;
    json doc = result_header("bivar-estimate", {ed1.echo(out), ed2.echo(out)});
    doc["length"] = json_number(estimate.length, out);
    doc["segments"] = segments;
    doc["diagnostics"]["iterations"] = estimate.iterations;
    doc["diagnostics"]["length_history"] = json::array();
    for (double l : estimate.length_history) {
        doc["diagnostics"]["length_history"].push_back(json_number(l, out));
    }
    emit_json(doc);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fisher-Rao geometry of normal distributions"};
    app.require_subcommand(1);
    app.fallthrough();

    OutputOptions out;
    app.add_option("--format", out.format, "output encoding")
        ->check(CLI::IsMember({"json", "csv"}))
        ->default_val("json");
    app.add_option("--digits", out.digits, "significant digits in emitted numbers")
        ->check(CLI::Range(1, 17))
        ->default_val(12);

    PairInputs dist_inputs;
    CLI::App* dist_cmd = app.add_subcommand("dist", "Fisher-Rao distance between two documents");
    dist_inputs.add_options(dist_cmd);

    PairInputs geo_inputs;
    int geo_n = 64;
    CLI::App* geo_cmd = app.add_subcommand("geodesic", "sample the geodesic between two normals");
    geo_inputs.add_options(geo_cmd);
    geo_cmd->add_option("--n", geo_n, "number of samples (including endpoints)");

    std::string circle_center;
    double circle_r = 1.0;
    int circle_n = 64;
    CLI::App* circle_cmd = app.add_subcommand("circle", "sample a Fisher circle");
    circle_cmd->add_option("--center", circle_center, "center as 'mu,sigma'")->required();
    circle_cmd->add_option("--r", circle_r, "Fisher radius")->required();
    circle_cmd->add_option("--n", circle_n, "number of sampled points");

    PairInputs mid_inputs;
    CLI::App* mid_cmd = app.add_subcommand("midpoint", "Fisher average of two normals");
    mid_inputs.add_options(mid_cmd);

    std::vector<std::string> avg_points;
    std::string avg_weights;
    std::string avg_in;
    double avg_tol = 1e-10;
    int avg_max_iter = 200;
    CLI::App* avg_cmd = app.add_subcommand("average", "weighted Karcher mean of several normals");
    avg_cmd->add_option("--point", avg_points, "point as 'mu,sigma' (repeatable)");
    avg_cmd->add_option("--weights", avg_weights, "comma-separated positive weights");
    avg_cmd->add_option("--in", avg_in, "JSON file with 'points' (and optional 'weights')");
    avg_cmd->add_option("--tol", avg_tol, "convergence tolerance");
    avg_cmd->add_option("--max-iter", avg_max_iter, "iteration cap");

    std::string cluster_in;
    int cluster_k = 2;
    std::uint64_t cluster_seed = 0;
    int cluster_restarts = 8;
    CLI::App* cluster_cmd = app.add_subcommand("cluster", "Lloyd clustering under the Fisher distance");
    cluster_cmd->add_option("--in", cluster_in, "JSON file with univariate documents")->required();
    cluster_cmd->add_option("--k", cluster_k, "number of clusters")->required();
    cluster_cmd->add_option("--seed", cluster_seed, "RNG seed")->required();
    cluster_cmd->add_option("--restarts", cluster_restarts, "number of seeded restarts");

    PairInputs kl_inputs;
    CLI::App* kl_cmd = app.add_subcommand("kl", "Kullback-Leibler divergences and symmetrized form");
    kl_inputs.add_options(kl_cmd);

    std::string fm_model = "univariate";
    std::string fm_point;
    std::string fm_beta;
    std::string fm_in;
    CLI::App* fm_cmd = app.add_subcommand("fisher-matrix", "Fisher information matrix estimates");
    fm_cmd->add_option("--model", fm_model, "univariate or bivariate-angular");
    fm_cmd->add_option("--point", fm_point, "univariate point as 'mu,sigma'");
    fm_cmd->add_option("--beta", fm_beta, "bivariate parameters as 's1,s2,m1,m2,u'");
    fm_cmd->add_option("--in", fm_in, "JSON bivariate-angular document");

    std::string curv_point;
    double curv_h = 1e-4;
    CLI::App* curv_cmd = app.add_subcommand("curvature", "Fisher-metric curvature at a point");
    curv_cmd->add_option("--point", curv_point, "point as 'mu,sigma'")->required();
    curv_cmd->add_option("--step", curv_h, "finite-difference step");

    std::string bv_b1, bv_b2, bv_in;
    int bv_segments = 64;
    int bv_iterations = 500;
    CLI::App* bv_cmd =
        app.add_subcommand("bivar-estimate", "numeric bivariate Fisher distance estimate");
    bv_cmd->add_option("--b1", bv_b1, "first point as 's1,s2,m1,m2,u'");
    bv_cmd->add_option("--b2", bv_b2, "second point as 's1,s2,m1,m2,u'");
    bv_cmd->add_option("--in", bv_in, "JSON file with {\"p1\":..., \"p2\":...}");
    bv_cmd->add_option("--segments", bv_segments, "discretization segments");
    bv_cmd->add_option("--iterations", bv_iterations, "refinement sweeps");

    try {
        app.parse(argc, argv);
        if (dist_cmd->parsed()) {
            run_dist(dist_inputs, out);
        } else if (geo_cmd->parsed()) {
            run_geodesic(geo_inputs, geo_n, out);
        } else if (circle_cmd->parsed()) {
            run_circle(circle_center, circle_r, circle_n, out);
        } else if (mid_cmd->parsed()) {
            run_midpoint(mid_inputs, out);
        } else if (avg_cmd->parsed()) {
            run_average(avg_points, avg_weights, avg_in, avg_tol, avg_max_iter, out);
        } else if (cluster_cmd->parsed()) {
            run_cluster(cluster_in, cluster_k, cluster_seed, cluster_restarts, out);
        } else if (kl_cmd->parsed()) {
            run_kl(kl_inputs, out);
        } else if (fm_cmd->parsed()) {
            run_fisher_matrix(fm_model, fm_point, fm_beta, fm_in, out);
        } else if (curv_cmd->parsed()) {
            run_curvature(curv_point, curv_h, out);
        } else if (bv_cmd->parsed()) {
            run_bivar_estimate(bv_b1, bv_b2, bv_in, bv_segments, bv_iterations, out);
        }
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const schema_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const invalid_parameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const numeric_failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
