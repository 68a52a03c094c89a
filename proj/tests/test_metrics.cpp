#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include "helpers.hpp"
#include "mlcd/metrics.hpp"

using namespace mlcd;

TEST_SUITE("metrics") {

TEST_CASE("worked two-community example") {
    std::vector<int> truth = {1, 1, 2, 2};
    std::vector<int> est = {1, 1, 1, 2};

    CHECK(clustering_error(truth, est, 2) == doctest::Approx(0.5));
    CHECK(hamming_error(truth, est, 2) == doctest::Approx(0.25));
}

TEST_CASE("identical partitions score perfectly on every metric") {
    std::vector<int> z = {1, 2, 3, 1, 2, 3, 1};
    MetricsReport r = score_all(z, z, 3);
    CHECK(r.clustering_error == 0.0);
    CHECK(r.hamming == 0.0);
    CHECK(r.nmi == 1.0);
    CHECK(r.ari == 1.0);
}

TEST_CASE("globally swapped labels are a perfect match") {
    std::vector<int> truth = {1, 1, 2, 2, 1};
    std::vector<int> swapped = {2, 2, 1, 1, 2};
    CHECK(clustering_error(truth, swapped, 2) == 0.0);
    CHECK(hamming_error(truth, swapped, 2) == 0.0);
    CHECK(ari(truth, swapped) == doctest::Approx(1.0));
    CHECK(nmi(truth, swapped) == doctest::Approx(1.0));
}

TEST_CASE("independent labelings: zero information, negative adjustment") {
    std::vector<int> truth = {1, 1, 2, 2};
    std::vector<int> est = {1, 2, 1, 2};
    CHECK(nmi(truth, est) == doctest::Approx(0.0));
    CHECK(ari(truth, est) == doctest::Approx(-0.5));
}

TEST_CASE("degenerate partitions fall back to the documented conventions") {
    std::vector<int> ones = {1, 1, 1, 1};
    CHECK(nmi(ones, ones) == 1.0);
    CHECK(ari(ones, ones) == 1.0);

    std::vector<int> singletons = {1, 2, 3, 4};
    CHECK(ari(singletons, singletons) == 1.0);
}

TEST_CASE("estimate accuracy is the fraction of exact hits") {
    CHECK(accuracy_rate({3, 3, 3}, 3) == 1.0);
    CHECK(accuracy_rate({1, 2, 4}, 3) == 0.0);
    CHECK(accuracy_rate({3, 3, 3, 3, 3, 3, 3, 2, 4, 1}, 3) == doctest::Approx(0.7));
    CHECK_THROWS_AS((void)accuracy_rate({}, 3), std::invalid_argument);
}

TEST_CASE("guard rails: size mismatches, label range, large K") {
    CHECK_THROWS_AS((void)clustering_error({1, 2}, {1}, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)clustering_error({1, 2}, {1, 3}, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)clustering_error({1, 2}, {1, 2}, 9), std::invalid_argument);
    // truth must inhabit every community up to K
    CHECK_THROWS_AS((void)clustering_error({1, 1, 1}, {1, 1, 2}, 2), std::invalid_argument);
}

TEST_CASE("estimated partitions may leave some of the K communities empty") {
    std::vector<int> truth = {1, 1, 2, 2, 3, 3};
    std::vector<int> est = {1, 1, 1, 1, 1, 1};
    CHECK(clustering_error(truth, est, 3) ==
          doctest::Approx(testutil::oracle_clustering_error(truth, est, 3)));
    CHECK(hamming_error(truth, est, 3) ==
          doctest::Approx(testutil::oracle_hamming(truth, est, 3)));
}

TEST_CASE("all metrics agree with their brute-force oracles over small partitions") {
    auto parts = testutil::partitions_upto(6, 3);  // 203 canonical labelings
    for (const auto& truth : parts) {
        int K = *std::max_element(truth.begin(), truth.end());
        for (const auto& est : parts) {
            int est_max = *std::max_element(est.begin(), est.end());
            if (est_max > K) continue;  // estimate constrained to truth's K
            CAPTURE(truth);
            CAPTURE(est);
            CHECK(clustering_error(truth, est, K) ==
                  doctest::Approx(testutil::oracle_clustering_error(truth, est, K))
                      .epsilon(1e-12));
            CHECK(hamming_error(truth, est, K) ==
                  doctest::Approx(testutil::oracle_hamming(truth, est, K)).epsilon(1e-12));
            CHECK(ari(truth, est) ==
                  doctest::Approx(testutil::oracle_ari(truth, est)).epsilon(1e-12));
            CHECK(nmi(truth, est) ==
                  doctest::Approx(testutil::oracle_nmi(truth, est)).epsilon(1e-10));
        }
    }
}

TEST_CASE("perfect scores coincide across metrics exactly when partitions match") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 4 + static_cast<int>(rng() % 9);  // 4..12
        std::vector<int> truth(n), est(n);
        // truth must use all of 1..K
        int K = 2 + static_cast<int>(rng() % 2);
        for (int i = 0; i < n; ++i) truth[i] = 1 + static_cast<int>(rng() % K);
        for (int k = 1; k <= K; ++k) truth[(k - 1) % n] = k;
        for (int i = 0; i < n; ++i) est[i] = 1 + static_cast<int>(rng() % K);

        bool zero_ce = clustering_error(truth, est, K) == 0.0;
        bool zero_ham = hamming_error(truth, est, K) == 0.0;
        bool unit_ari = ari(truth, est) > 1.0 - 1e-12;
        bool unit_nmi = nmi(truth, est) > 1.0 - 1e-12;
        CAPTURE(truth);
        CAPTURE(est);
        CHECK(zero_ce == zero_ham);
        CHECK(zero_ce == unit_ari);
        CHECK(zero_ce == unit_nmi);
    }
}

TEST_CASE("metrics ignore estimated label names and node order") {
    std::vector<int> truth = {1, 1, 2, 2, 3, 3, 1, 2};
    std::vector<int> est = {1, 2, 2, 2, 3, 3, 1, 1};

    std::vector<int> renamed(est.size());
    int map[] = {0, 3, 1, 2};  // 1->3, 2->1, 3->2
    for (size_t i = 0; i < est.size(); ++i) renamed[i] = map[est[i]];
    CHECK(clustering_error(truth, est, 3) == clustering_error(truth, renamed, 3));
    CHECK(hamming_error(truth, est, 3) == hamming_error(truth, renamed, 3));
    CHECK(ari(truth, est) == doctest::Approx(ari(truth, renamed)).epsilon(1e-12));
    CHECK(nmi(truth, est) == doctest::Approx(nmi(truth, renamed)).epsilon(1e-12));

    std::vector<int> perm = {4, 2, 7, 0, 5, 1, 3, 6};
    std::vector<int> truth_p(truth.size()), est_p(est.size());
    for (size_t i = 0; i < perm.size(); ++i) {
        truth_p[i] = truth[perm[i]];
        est_p[i] = est[perm[i]];
    }
    CHECK(clustering_error(truth_p, est_p, 3) == clustering_error(truth, est, 3));
    CHECK(ari(truth_p, est_p) == doctest::Approx(ari(truth, est)).epsilon(1e-12));
}

} // TEST_SUITE
