#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "mlcd/aggregates.hpp"

namespace mlcd {

/// K leading eigen- or singular vectors (columns) with their values.
struct Embedding {
    Eigen::MatrixXd vectors;  // n x K, orthonormal columns
    Eigen::VectorXd values;   // length K
};

struct SpectralOptions {
    /// Square problems at or below this order use the dense symmetric solver;
    /// larger ones use Lanczos with full reorthogonalization. Tests lower it
    /// to force the iterative path on small matrices.
    int dense_cutoff = 2048;
    /// Residual target, relative to max(1, Frobenius norm of the input).
    double tol = 1e-10;
    int max_lanczos_dim = 400;
};

/// Top K eigenpairs of a symmetric matrix ordered by |eigenvalue| descending;
/// ties broken by signed value descending, then by position. Throws
/// std::invalid_argument if K is out of range or the matrix is asymmetric
/// beyond 1e-9.
Embedding top_k_eigen(const AggregateMatrix& m, int k, const SpectralOptions& opts = {});
Embedding top_k_eigen(const Eigen::MatrixXd& m, int k, const SpectralOptions& opts = {});

/// Top K left-singular vectors of a rectangular matrix, singular values
/// descending. Columns are orthonormal; u = M v / sigma is used on the Gram
/// route, so sigma of (numerical) zero marks rank deficiency and the
/// corresponding vector is completed by orthogonalization.
Embedding top_k_left_singular(const AggregateMatrix& m, int k, const SpectralOptions& opts = {});
Embedding top_k_left_singular(const Eigen::MatrixXd& m, int k, const SpectralOptions& opts = {});

/// Scale each row to unit Euclidean norm. Rows with norm below 1e-12 are left
/// as-is and their indices (0-based) are reported.
std::pair<Eigen::MatrixXd, std::vector<int>> row_normalize(const Eigen::MatrixXd& m);

struct KmeansOptions {
    int iterations = 100;
    int restarts = 10;
};

struct KmeansResult {
    std::vector<int> labels;        // 1..K, as assigned (not canonicalized)
    Eigen::MatrixXd centroids;      // K x dim
    double cost = 0.0;              // within-cluster sum of squares
    int best_restart = -1;
    std::vector<double> cost_trace; // cost after each Lloyd sweep of the winner
};

/// Lloyd's algorithm with k-means++ seeding. Runs opts.restarts independent
/// starts (seeds derived from `seed`), keeps the lowest objective, breaking
/// ties by restart index. Deterministic.
KmeansResult kmeans(const Eigen::MatrixXd& points, int k, const KmeansOptions& opts,
                    std::uint64_t seed);

} // namespace mlcd
