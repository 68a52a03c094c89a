#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mlcd/network.hpp"

namespace mlcd {

/// Community assignment for n nodes; labels run 1..K and every label in
/// that range occurs at least once.
struct NodeLabels {
    int K = 0;
    std::vector<int> z;

    int n() const { return static_cast<int>(z.size()); }
    void validate() const;
};

/// Degree-corrected multi-layer block model: edge (i,j) in layer l appears
/// independently with probability theta(i) * theta(j) * B_l(z(i), z(j)).
struct MldcsbmParams {
    NodeLabels labels;
    Eigen::VectorXd theta;            // entries in (0, 1]
    std::vector<Eigen::MatrixXd> B;   // K x K, symmetric, entries in [0, 1]

    int n() const { return labels.n(); }
    int K() const { return labels.K; }
    int L() const { return static_cast<int>(B.size()); }
    void validate() const;
};

/// Expected adjacency of one layer: Theta Z B_l Z^T Theta, always symmetric.
Eigen::MatrixXd expected_adjacency(const MldcsbmParams& params, int layer);

/// Draw every layer with independent Bernoulli entries on the upper triangle
/// and mirror. Self-loops are sampled from the diagonal probabilities unless
/// allow_self_loops is false. Deterministic in the seed.
MultiLayerNetwork sample_network(const MldcsbmParams& params, std::uint64_t seed,
                                 bool allow_self_loops = true);

/// Standard simulation recipe: uniform labels over 1..K (resampled until no
/// community is empty, at most 100 attempts), theta(i) = sqrt(rho) * U(0,1)
/// clamped to >= 1e-12, B_l = (Btilde + Btilde^T)/2 with U(0,1) entries, and
/// unit diagonal when assortative is set.
MldcsbmParams simulation_params(int n, int K, int L, double rho, bool assortative,
                                std::uint64_t seed);

} // namespace mlcd
