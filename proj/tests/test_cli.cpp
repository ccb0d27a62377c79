// Integration tests driving the installed CLI binary end to end.
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#ifndef FISHERRAO_CLI_PATH
#error "FISHERRAO_CLI_PATH must point at the CLI binary"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args, const std::string& stdin_data = "") {
    std::string command = std::string(FISHERRAO_CLI_PATH) + " " + args + " 2>/dev/null";
    if (!stdin_data.empty()) {
        const std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                                 "/fisherrao_cli_stdin.json";
        std::ofstream file(path);
        file << stdin_data;
        file.close();
        command += " < " + path;
    }
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buffer;
    while (std::size_t n = std::fread(buffer.data(), 1, buffer.size(), pipe)) {
        result.output.append(buffer.data(), n);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

} // namespace

TEST_CASE("dist reproduces the figure value with 12 significant digits") {
    const RunResult r = run_cli("dist --p1 1.5,0.75 --p2 3.5,0.75");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    CHECK(doc.at("distance").get<double>() == doctest::Approx(2.37686841245).epsilon(1e-12));
    CHECK(r.output.find("2.37686841245") != std::string::npos);
}

TEST_CASE("dist accepts parametrization flags") {
    const RunResult r = run_cli("dist --p1 0,1 --p2 0,7.38905609893065 --parametrization source");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    CHECK(doc.at("distance").get<double>() == doctest::Approx(1.41421356237).epsilon(1e-11));
}

TEST_CASE("fixed-mean documents flow through stdin") {
    const std::string pair = R"({
      "p1": {"type": "fixed-mean", "mu": [0, 0], "covariance": [[1, 0], [0, 1]]},
      "p2": {"type": "fixed-mean", "mu": [0, 0],
             "covariance": [[7.38905609893065, 0], [0, 7.38905609893065]]}
    })";
    const RunResult r = run_cli("dist --in -", pair);
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    CHECK(doc.at("distance").get<double>() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("schema violations exit 2, domain violations exit 3") {
    CHECK(run_cli("dist --p1 1.5 --p2 3.5,0.75").exit_code == 2);
    CHECK(run_cli("dist --p1 abc,1 --p2 0,1").exit_code == 2);
    CHECK(run_cli("dist --in -", R"({"p1": {"type": "nope"}, "p2": {}})").exit_code == 2);
    CHECK(run_cli("dist --in -",
                  R"({"p1": {"type": "univariate", "mu": 0, "sigma": 1, "extra": 1},
                      "p2": {"type": "univariate", "mu": 0, "sigma": 1}})")
              .exit_code == 2);
    // sigma = -1 is schema-valid but violates the domain
    CHECK(run_cli("dist --p1 0,-1 --p2 0,1").exit_code == 3);
    CHECK(run_cli("dist --in -",
                  R"({"p1": {"type": "fixed-mean", "mu": [0], "covariance": [[-1]]},
                      "p2": {"type": "fixed-mean", "mu": [0], "covariance": [[1]]}})")
              .exit_code == 3);
    CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("circle emits n equidistant rows in csv") {
    const RunResult r = run_cli("circle --center 1.5,0.75 --r 2.3769 --n 64 --format csv");
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.output);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "t,mu,sigma");
    int rows = 0;
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty()) ++rows;
    }
    CHECK(rows == 64);
}

TEST_CASE("echoed inputs round-trip through the schema") {
    const RunResult first = run_cli("dist --p1 1.5,0.75 --p2 3.5,0.75 --digits 17");
    REQUIRE(first.exit_code == 0);
    const auto doc = nlohmann::json::parse(first.output);
    nlohmann::json pair;
    pair["p1"] = doc.at("inputs")[0];
    pair["p2"] = doc.at("inputs")[1];
    const RunResult second = run_cli("dist --in - --digits 17", pair.dump());
    REQUIRE(second.exit_code == 0);
    const auto round_trip = nlohmann::json::parse(second.output);
    CHECK(round_trip.at("distance") == doc.at("distance"));
}

TEST_CASE("midpoint matches the reported average") {
    const RunResult r = run_cli("midpoint --p1 1.5,0.75 --p2 1.0610,0.1646");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    CHECK(doc.at("midpoint").at("mu").get<double>() == doctest::Approx(1.1400).epsilon(1e-3));
    CHECK(doc.at("midpoint").at("sigma").get<double>() == doctest::Approx(0.3711).epsilon(1e-3));
}

TEST_CASE("kl of identical inputs is zero") {
    const RunResult r = run_cli("kl --p1 0,1 --p2 0,1");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    CHECK(doc.at("kl_pq").get<double>() == 0.0);
    CHECK(doc.at("kl_qp").get<double>() == 0.0);
    CHECK(doc.at("symmetrized").get<double>() == 0.0);
}

TEST_CASE("geodesic sampling returns the requested rows and re-parses") {
    const RunResult r = run_cli("geodesic --p1 -1,1 --p2 1,1 --n 9");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    CHECK(doc.at("kind").get<std::string>() == "half-ellipse");
    CHECK(doc.at("points").size() == 9);
    for (const auto& point : doc.at("points")) {
        CHECK(point.at("sigma").get<double>() > 0.0);
    }
}

TEST_CASE("average and cluster are deterministic") {
    const std::string points = R"({"points": [
        {"type": "univariate", "mu": 0.0, "sigma": 1.0},
        {"type": "univariate", "mu": 0.2, "sigma": 1.1},
        {"type": "univariate", "mu": 4.0, "sigma": 0.1},
        {"type": "univariate", "mu": 4.1, "sigma": 0.12}
    ]})";
    const RunResult avg = run_cli("average --in -", points);
    REQUIRE(avg.exit_code == 0);

    const RunResult c1 = run_cli("cluster --in - --k 2 --seed 42", points);
    const RunResult c2 = run_cli("cluster --in - --k 2 --seed 42", points);
    REQUIRE(c1.exit_code == 0);
    CHECK(c1.output == c2.output);
    const auto doc = nlohmann::json::parse(c1.output);
    const auto assignments = doc.at("assignments").get<std::vector<int>>();
    REQUIRE(assignments.size() == 4);
    CHECK(assignments[0] == assignments[1]);
    CHECK(assignments[2] == assignments[3]);
    CHECK(assignments[0] != assignments[2]);
}

TEST_CASE("fisher-matrix closed and estimated forms agree") {
    const RunResult r = run_cli("fisher-matrix --model bivariate-angular --beta 1,2,0,0,0.5");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    CHECK(doc.at("max_residual").get<double>() < 1e-4);

    const RunResult uni = run_cli("fisher-matrix --model univariate --point 0,2");
    REQUIRE(uni.exit_code == 0);
    const auto est = nlohmann::json::parse(uni.output).at("estimate");
    CHECK(est[0][0].get<double>() == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(est[1][1].get<double>() == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("curvature defaults to the Fisher metric constant") {
    const RunResult r = run_cli("curvature --point 2,0.4");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    CHECK(doc.at("curvature").get<double>() == doctest::Approx(-0.5).epsilon(1e-3));
}

TEST_CASE("bivar-estimate approaches the closed submanifold distance") {
    const RunResult r = run_cli(
        "bivar-estimate --b1 1,1,0,0,0 --b2 2.71828182845905,2.71828182845905,0,0,0 "
        "--segments 32 --iterations 200");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    CHECK(doc.at("length").get<double>() == doctest::Approx(2.0).epsilon(0.01));
    const auto history = doc.at("diagnostics").at("length_history");
    for (std::size_t i = 1; i < history.size(); ++i) {
        CHECK(history[i].get<double>() <= history[i - 1].get<double>() + 1e-12);
    }
}

TEST_CASE("digits flag controls printed precision") {
    const RunResult r = run_cli("dist --p1 1.5,0.75 --p2 3.5,0.75 --digits 5 --format csv");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output == "distance,2.3769\n");
}
