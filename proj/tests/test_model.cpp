#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "helpers.hpp"
#include "mlcd/model.hpp"

using namespace mlcd;

TEST_SUITE("model") {

TEST_CASE("expected adjacency on a worked three-node instance") {
    MldcsbmParams params;
    params.labels.K = 2;
    params.labels.z = {1, 1, 2};
    params.theta = Eigen::Vector3d(0.5, 1.0, 0.2);
    Eigen::MatrixXd b(2, 2);
    b << 0.8, 0.2,
         0.2, 0.4;
    params.B = {b};
    params.validate();

    Eigen::MatrixXd omega = expected_adjacency(params, 0);
    CHECK(omega(0, 1) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(omega(0, 2) == doctest::Approx(0.02).epsilon(1e-15));
    CHECK(omega(2, 2) == doctest::Approx(0.016).epsilon(1e-15));
    CHECK((omega - omega.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("relabeling communities while permuting B leaves the expectation alone") {
    MldcsbmParams params = simulation_params(20, 3, 2, 0.5, false, 7);
    Eigen::MatrixXd before = expected_adjacency(params, 1);

    // swap community ids 1 and 3, and rows/columns 0 and 2 of every B
    MldcsbmParams swapped = params;
    for (int& z : swapped.labels.z) {
        if (z == 1) z = 3;
        else if (z == 3) z = 1;
    }
    for (auto& b : swapped.B) {
        b.row(0).swap(b.row(2));
        b.col(0).swap(b.col(2));
    }
    swapped.validate();
    CHECK((expected_adjacency(swapped, 1) - before).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("generated parameters respect their documented ranges") {
    const double rho = 0.36;
    MldcsbmParams params = simulation_params(200, 4, 6, rho, false, 42);
    params.validate();

    CHECK(params.theta.minCoeff() > 0.0);
    CHECK(params.theta.maxCoeff() <= std::sqrt(rho));
    for (const auto& b : params.B) {
        CHECK(b.minCoeff() >= 0.0);
        CHECK(b.maxCoeff() <= 1.0);
        CHECK((b - b.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
    for (int l = 0; l < params.L(); ++l) {
        Eigen::MatrixXd omega = expected_adjacency(params, l);
        CHECK(omega.minCoeff() >= 0.0);
        CHECK(omega.maxCoeff() <= rho + 1e-15);
    }

    // every community inhabited
    std::vector<int> counts(5, 0);
    for (int z : params.labels.z) ++counts[z];
    for (int k = 1; k <= 4; ++k) CHECK(counts[k] > 0);
}

TEST_CASE("single community and assortative diagonals") {
    MldcsbmParams one = simulation_params(10, 1, 3, 0.5, false, 3);
    for (int z : one.labels.z) CHECK(z == 1);
    CHECK(one.B[0].rows() == 1);

    MldcsbmParams ass = simulation_params(30, 3, 4, 0.25, true, 4);
    for (const auto& b : ass.B) {
        CHECK(b.diagonal().minCoeff() == 1.0);
        CHECK(b.diagonal().maxCoeff() == 1.0);
    }
}

TEST_CASE("parameter generation is a pure function of the seed") {
    MldcsbmParams a = simulation_params(50, 3, 4, 0.2, true, 99);
    MldcsbmParams b = simulation_params(50, 3, 4, 0.2, true, 99);
    MldcsbmParams c = simulation_params(50, 3, 4, 0.2, true, 100);

    CHECK(a.labels.z == b.labels.z);
    CHECK((a.theta - b.theta).cwiseAbs().maxCoeff() == 0.0);
    for (int l = 0; l < 4; ++l)
        CHECK((a.B[l] - b.B[l]).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.theta - c.theta).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("generation rejects out-of-domain arguments") {
    CHECK_THROWS_AS(simulation_params(3, 4, 1, 0.5, false, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulation_params(10, 2, 1, 0.0, false, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulation_params(10, 2, 1, 1.5, false, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulation_params(10, 2, 0, 0.5, false, 1), std::invalid_argument);
}

TEST_CASE("degenerate mixing matrices produce the obvious networks") {
    MldcsbmParams params;
    params.labels.K = 1;
    params.labels.z = {1, 1, 1, 1};
    params.theta = Eigen::VectorXd::Ones(4);
    params.B = {Eigen::MatrixXd::Zero(1, 1)};

    MultiLayerNetwork empty = sample_network(params, 5);
    CHECK(empty.layers[0].nnz() == 0);

    params.B = {Eigen::MatrixXd::Ones(1, 1)};
    MultiLayerNetwork full = sample_network(params, 5);
    CHECK(full.layers[0].edge_count() == 6);   // all off-diagonal pairs
    CHECK(full.layers[0].loop_count() == 4);   // unit diagonal probabilities

    MultiLayerNetwork loopless = sample_network(params, 5, false);
    CHECK(loopless.layers[0].edge_count() == 6);
    CHECK(loopless.layers[0].loop_count() == 0);
}

TEST_CASE("network sampling is seed-deterministic") {
    MldcsbmParams params = simulation_params(40, 2, 3, 0.5, false, 8);
    MultiLayerNetwork a = sample_network(params, 17);
    MultiLayerNetwork b = sample_network(params, 17);
    MultiLayerNetwork c = sample_network(params, 18);

    bool same = true, differ = false;
    for (int l = 0; l < 3; ++l) {
        same = same && a.layers[l].edges() == b.layers[l].edges();
        differ = differ || a.layers[l].edges() != c.layers[l].edges();
    }
    CHECK(same);
    CHECK(differ);
}

TEST_CASE("empirical edge frequencies track the expectation matrix") {
    MldcsbmParams params;
    params.labels.K = 2;
    params.labels.z = {1, 1, 2};
    params.theta = Eigen::Vector3d(0.5, 1.0, 0.2);
    Eigen::MatrixXd b(2, 2);
    b << 0.8, 0.2,
         0.2, 0.4;
    params.B = {b};

    const int draws = 2000;
    Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(3, 3);
    for (int t = 0; t < draws; ++t)
        mean += testutil::dense_adjacency(sample_network(params, 1000 + t).layers[0]);
    mean /= draws;

    Eigen::MatrixXd omega = expected_adjacency(params, 0);
    CHECK((mean - omega).cwiseAbs().maxCoeff() < 4.0 / std::sqrt(double(draws)));
}

} // TEST_SUITE
