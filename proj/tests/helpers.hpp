#pragma once

// Fixtures and brute-force oracles shared by the unit suites and the
// acceptance runner. Everything here recomputes results from first
// principles with dense matrices and exhaustive loops so that the library
// is checked against an independent path, not against itself.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "mlcd/model.hpp"
#include "mlcd/network.hpp"

namespace testutil {

inline Eigen::MatrixXd dense_adjacency(const mlcd::SparseLayer& layer) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(layer.n(), layer.n());
    for (int i = 0; i < layer.n(); ++i)
        for (int j : layer.neighbors(i)) a(i, j) = 1.0;
    return a;
}

inline Eigen::MatrixXd oracle_sum(const mlcd::MultiLayerNetwork& net) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(net.n, net.n);
    for (const auto& layer : net.layers) acc += dense_adjacency(layer);
    return acc;
}

inline Eigen::MatrixXd oracle_sum_squares(const mlcd::MultiLayerNetwork& net) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(net.n, net.n);
    for (const auto& layer : net.layers) {
        Eigen::MatrixXd a = dense_adjacency(layer);
        acc += a * a;
    }
    return acc;
}

inline Eigen::MatrixXd oracle_debiased(const mlcd::MultiLayerNetwork& net) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(net.n, net.n);
    for (const auto& layer : net.layers) {
        Eigen::MatrixXd a = dense_adjacency(layer);
        Eigen::MatrixXd sq = a * a;
        for (int i = 0; i < net.n; ++i) sq(i, i) -= static_cast<double>(layer.degree(i));
        acc += sq;
    }
    return acc;
}

// Path 1-2-3 (0-based edges {0,1} and {1,2}).
inline mlcd::SparseLayer path3() {
    return mlcd::SparseLayer::from_edges(3, {{0, 1}, {1, 2}});
}

inline mlcd::MultiLayerNetwork single_layer(mlcd::SparseLayer layer) {
    mlcd::MultiLayerNetwork net;
    net.n = layer.n();
    net.layers.push_back(std::move(layer));
    return net;
}

// Planted-partition parameters with explicit control of the mixing matrix:
// contiguous equal-size communities, constant theta, B with p_in on the
// diagonal and p_out elsewhere, identical across layers.
inline mlcd::MldcsbmParams planted_params(int n, int K, int L, double p_in, double p_out,
                                          double theta = 1.0) {
    mlcd::MldcsbmParams params;
    params.labels.K = K;
    params.labels.z.resize(n);
    for (int i = 0; i < n; ++i) params.labels.z[i] = 1 + (i * K) / n;
    params.theta = Eigen::VectorXd::Constant(n, theta);
    Eigen::MatrixXd b = Eigen::MatrixXd::Constant(K, K, p_out);
    b.diagonal().setConstant(p_in);
    params.B.assign(L, b);
    return params;
}

// ---------------------------------------------------------------------------
// Metric oracles: literal transcriptions of the definitions.
// ---------------------------------------------------------------------------

inline std::vector<std::vector<int>> permutations_of(int K) {
    std::vector<int> p(K);
    std::iota(p.begin(), p.end(), 1);
    std::vector<std::vector<int>> all;
    do {
        all.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return all;
}

// min over permutations pi of max_k (|C_k \ Chat_{pi(k)}| + |Chat_{pi(k)} \ C_k|) / |C_k|,
// evaluated by literally building the sets for every permutation.
inline double oracle_clustering_error(const std::vector<int>& truth,
                                      const std::vector<int>& est, int K) {
    const int n = static_cast<int>(truth.size());
    double best = std::numeric_limits<double>::infinity();
    for (const auto& pi : permutations_of(K)) {
        double worst = 0.0;
        for (int k = 1; k <= K; ++k) {
            int size_k = 0, missed = 0, intruded = 0;
            for (int i = 0; i < n; ++i) {
                bool in_true = truth[i] == k;
                bool in_est = est[i] == pi[k - 1];
                size_k += in_true;
                missed += in_true && !in_est;
                intruded += !in_true && in_est;
            }
            worst = std::max(worst, static_cast<double>(missed + intruded) / size_k);
        }
        best = std::min(best, worst);
    }
    return best;
}

inline double oracle_hamming(const std::vector<int>& truth, const std::vector<int>& est,
                             int K) {
    const int n = static_cast<int>(truth.size());
    int best = n + 1;
    for (const auto& pi : permutations_of(K)) {
        int mismatches = 0;
        for (int i = 0; i < n; ++i)
            if (truth[i] != pi[est[i] - 1]) ++mismatches;
        best = std::min(best, mismatches);
    }
    return static_cast<double>(best) / n;
}

// Pair-counting ARI: classify every unordered node pair as together/apart in
// each partition and apply the adjusted index formula directly.
inline double oracle_ari(const std::vector<int>& a, const std::vector<int>& b) {
    const int n = static_cast<int>(a.size());
    double together_both = 0, together_a = 0, together_b = 0;
    double pairs = 0.5 * n * (n - 1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            bool sa = a[i] == a[j], sb = b[i] == b[j];
            together_a += sa;
            together_b += sb;
            together_both += sa && sb;
        }
    double expected = together_a * together_b / pairs;
    double maximum = 0.5 * (together_a + together_b);
    if (maximum == expected) return 1.0;
    return (together_both - expected) / (maximum - expected);
}

inline double oracle_nmi(const std::vector<int>& a, const std::vector<int>& b) {
    const int n = static_cast<int>(a.size());
    std::map<int, double> pa, pb;
    std::map<std::pair<int, int>, double> pab;
    for (int i = 0; i < n; ++i) {
        pa[a[i]] += 1.0 / n;
        pb[b[i]] += 1.0 / n;
        pab[{a[i], b[i]}] += 1.0 / n;
    }
    double mi = 0.0;
    for (const auto& [key, p] : pab)
        mi += p * std::log(p / (pa[key.first] * pb[key.second]));
    double ha = 0.0, hb = 0.0;
    for (const auto& [k, p] : pa) ha -= p * std::log(p);
    for (const auto& [k, p] : pb) hb -= p * std::log(p);
    if (ha + hb == 0.0) return 1.0;
    return std::clamp(mi / (0.5 * (ha + hb)), 0.0, 1.0);
}

// All set partitions of {0..n-1} into at most max_blocks blocks, emitted as
// canonical label vectors (element 0 carries label 1, the next unseen block
// gets the next label). Enumerated by restricted growth strings.
inline std::vector<std::vector<int>> partitions_upto(int n, int max_blocks) {
    std::vector<std::vector<int>> out;
    std::vector<int> labels(n, 1);
    auto rec = [&](auto&& self, int i, int used) -> void {
        if (i == n) {
            out.push_back(labels);
            return;
        }
        int limit = std::min(used + 1, max_blocks);
        for (int c = 1; c <= limit; ++c) {
            labels[i] = c;
            self(self, i + 1, std::max(used, c));
        }
    };
    rec(rec, 1, 1);
    return out;
}

// Newman-Girvan modularity of one layer by the O(n^2) double sum.
inline double oracle_modularity(const Eigen::MatrixXd& a, const std::vector<int>& labels) {
    const int n = static_cast<int>(a.rows());
    Eigen::VectorXd deg = a.rowwise().sum();
    double two_m = deg.sum();
    if (two_m == 0.0) return 0.0;
    double q = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (labels[i] == labels[j]) q += a(i, j) - deg(i) * deg(j) / two_m;
    return q / two_m;
}

inline double oracle_wcss(const Eigen::MatrixXd& points, const std::vector<int>& labels,
                          int k) {
    double total = 0.0;
    for (int c = 1; c <= k; ++c) {
        Eigen::RowVectorXd centroid = Eigen::RowVectorXd::Zero(points.cols());
        int count = 0;
        for (int i = 0; i < points.rows(); ++i)
            if (labels[i] == c) {
                centroid += points.row(i);
                ++count;
            }
        if (count == 0) continue;
        centroid /= count;
        for (int i = 0; i < points.rows(); ++i)
            if (labels[i] == c) total += (points.row(i) - centroid).squaredNorm();
    }
    return total;
}

// Sorted pairwise row distances; invariant under column sign flips and
// orthogonal column transforms, which makes embeddings comparable across
// eigen and singular solvers.
inline std::vector<double> pairwise_row_distances(const Eigen::MatrixXd& m) {
    std::vector<double> d;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i + 1; j < m.rows(); ++j)
            d.push_back((m.row(i) - m.row(j)).norm());
    std::sort(d.begin(), d.end());
    return d;
}

} // namespace testutil
