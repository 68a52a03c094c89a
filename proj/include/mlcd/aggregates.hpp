#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <string>
#include <vector>

#include "mlcd/network.hpp"

namespace mlcd {

enum class AggregateKind {
    sum_adjacency,            // sum_l A_l
    debiased_sum_squares,     // sum_l (A_l^2 - D_l)
    sum_squares,              // sum_l A_l^2
    subsampled_sum,           // sum over sampled layers of A_l(:, node set)
    subsampled_debiased,      // debiased square restricted to sampled columns
};

const char* aggregate_kind_name(AggregateKind kind);

/// Aggregate of layer matrices. Stored dense when the estimated fill exceeds
/// 5% of rows*cols, sparse (column-major) otherwise; entries are identical
/// either way and are exact small integers by construction.
class AggregateMatrix {
public:
    AggregateMatrix() = default;

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_dense() const { return dense_; }
    AggregateKind kind() const { return kind_; }

    double coeff(int i, int j) const;
    Eigen::MatrixXd to_dense() const;
    double frobenius_norm() const;

    /// y = M x
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
    /// y = M^T x
    Eigen::VectorXd apply_transpose(const Eigen::VectorXd& x) const;

    /// Largest |M(i,j) - M(j,i)|; only meaningful for square aggregates.
    double max_abs_asymmetry() const;

    static AggregateMatrix from_dense(AggregateKind kind, Eigen::MatrixXd m);
    static AggregateMatrix from_sparse(AggregateKind kind, Eigen::SparseMatrix<double> m);

private:
    AggregateKind kind_ = AggregateKind::sum_adjacency;
    int rows_ = 0, cols_ = 0;
    bool dense_ = false;
    Eigen::MatrixXd d_;
    Eigen::SparseMatrix<double> s_;
};

/// sum_l A_l
AggregateMatrix aggregate_sum(const MultiLayerNetwork& net);

/// sum_l (A_l^2 - D_l) where D_l is the diagonal degree matrix of layer l.
/// Identity: this equals sum_l A_l^2 with every diagonal degree removed, so
/// adding the degrees back reproduces the raw sum of squares exactly.
AggregateMatrix debiased_sum_squares(const MultiLayerNetwork& net);

/// sum_l A_l^2, bias left in place.
AggregateMatrix sum_of_squares(const MultiLayerNetwork& net);

/// Node and layer subsets used by the subsampled detectors. Both lists are
/// strictly increasing, 0-based.
struct SubsamplePlan {
    std::vector<int> node_set;
    std::vector<int> layer_set;
};

/// Uniform sampling without replacement of n_sample nodes and L_sample
/// layers; deterministic in the seed. Requires 1 <= n_sample <= n and
/// 1 <= L_sample <= L.
SubsamplePlan make_subsample(int n, int L, int n_sample, int L_sample, std::uint64_t seed);

/// sum over plan layers of A_l(:, plan.node_set); n x n_sample.
AggregateMatrix subsampled_sum(const MultiLayerNetwork& net, const SubsamplePlan& plan);

/// Columns at plan.node_set of sum over plan layers of
/// (A^sub_l (A^sub_l)^T - D^sub_l), where A^sub_l = A_l(:, plan.node_set) and
/// D^sub_l(i,i) counts i's sampled neighbors; n x n_sample.
AggregateMatrix subsampled_debiased_sum_squares(const MultiLayerNetwork& net,
                                                const SubsamplePlan& plan);

} // namespace mlcd
