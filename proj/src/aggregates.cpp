#include "mlcd/aggregates.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "mlcd/rng.hpp"

namespace mlcd {

namespace {

constexpr double kDenseThreshold = 0.05;

// Column-at-a-time accumulator that commits to dense or sparse storage up
// front and builds the matrix column by column (both targets are col-major).
class ColumnSink {
public:
    ColumnSink(AggregateKind kind, int rows, int cols, bool dense)
        : kind_(kind), rows_(rows), cols_(cols), dense_(dense),
          work_(rows, 0.0) {
        if (dense_) mat_ = Eigen::MatrixXd::Zero(rows, cols);
        else outer_.reserve(cols + 1), outer_.push_back(0);
    }

    void add(int row, double v) {
        if (work_[row] == 0.0 && v != 0.0) touched_.push_back(row);
        work_[row] += v;
    }

    void commit_column(int col) {
        if (dense_) {
            for (int r : touched_) mat_(r, col) = work_[r];
        } else {
            std::sort(touched_.begin(), touched_.end());
            for (int r : touched_) {
                if (work_[r] == 0.0) continue;  // exact cancellation, drop
                inner_.push_back(r);
                values_.push_back(work_[r]);
            }
            outer_.push_back(static_cast<std::int64_t>(inner_.size()));
        }
        for (int r : touched_) work_[r] = 0.0;
        touched_.clear();
    }

    AggregateMatrix finish() {
        if (dense_) return AggregateMatrix::from_dense(kind_, std::move(mat_));
        Eigen::SparseMatrix<double> s(rows_, cols_);
        s.reserve(static_cast<Eigen::Index>(values_.size()));
        for (int c = 0; c < cols_; ++c) {
            s.startVec(c);
            for (std::int64_t k = outer_[c]; k < outer_[c + 1]; ++k)
                s.insertBack(inner_[k], c) = values_[k];
        }
        s.finalize();
        return AggregateMatrix::from_sparse(kind_, std::move(s));
    }

private:
    AggregateKind kind_;
    int rows_, cols_;
    bool dense_;
    std::vector<double> work_;
    std::vector<int> touched_;
    Eigen::MatrixXd mat_;
    std::vector<std::int64_t> outer_;
    std::vector<int> inner_;
    std::vector<double> values_;
};

bool pick_dense(double estimated_nnz, int rows, int cols) {
    double cells = static_cast<double>(rows) * static_cast<double>(cols);
    return estimated_nnz > kDenseThreshold * cells;
}

std::vector<int> all_layers(const MultiLayerNetwork& net) {
    std::vector<int> idx(net.num_layers());
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
}

// Shared core for the two square-of-adjacency aggregates. Column c of A^2 is
// the sum of columns A(:,k) over neighbors k of c; with the debias flag the
// layer degree is removed from the diagonal cell.
AggregateMatrix squares_aggregate(const MultiLayerNetwork& net, bool debias) {
    net.validate();
    const int n = net.n;

    double est = 0;
    for (const auto& layer : net.layers)
        for (int i = 0; i < n; ++i) {
            double d = static_cast<double>(layer.degree(i));
            est += std::min(static_cast<double>(n), d * d);
        }
    AggregateKind kind = debias ? AggregateKind::debiased_sum_squares
                                : AggregateKind::sum_squares;
    ColumnSink sink(kind, n, n, pick_dense(est, n, n));

    for (int c = 0; c < n; ++c) {
        for (const auto& layer : net.layers) {
            for (int k : layer.neighbors(c))
                for (int j : layer.neighbors(k)) sink.add(j, 1.0);
            if (debias) sink.add(c, -static_cast<double>(layer.degree(c)));
        }
        sink.commit_column(c);
    }
    return sink.finish();
}

} // namespace

const char* aggregate_kind_name(AggregateKind kind) {
    switch (kind) {
        case AggregateKind::sum_adjacency: return "sum_adjacency";
        case AggregateKind::debiased_sum_squares: return "debiased_sum_squares";
        case AggregateKind::sum_squares: return "sum_squares";
        case AggregateKind::subsampled_sum: return "subsampled_sum";
        case AggregateKind::subsampled_debiased: return "subsampled_debiased";
    }
    return "unknown";
}

double AggregateMatrix::coeff(int i, int j) const {
    return dense_ ? d_(i, j) : s_.coeff(i, j);
}

Eigen::MatrixXd AggregateMatrix::to_dense() const {
    return dense_ ? d_ : Eigen::MatrixXd(s_);
}

double AggregateMatrix::frobenius_norm() const {
    return dense_ ? d_.norm() : s_.norm();
}

Eigen::VectorXd AggregateMatrix::apply(const Eigen::VectorXd& x) const {
    return dense_ ? Eigen::VectorXd(d_ * x) : Eigen::VectorXd(s_ * x);
}

Eigen::VectorXd AggregateMatrix::apply_transpose(const Eigen::VectorXd& x) const {
    return dense_ ? Eigen::VectorXd(d_.transpose() * x)
                  : Eigen::VectorXd(s_.transpose() * x);
}

double AggregateMatrix::max_abs_asymmetry() const {
    if (rows_ != cols_) throw std::invalid_argument("asymmetry check needs a square matrix");
    if (dense_) {
        if (rows_ == 0) return 0.0;
        return (d_ - d_.transpose()).cwiseAbs().maxCoeff();
    }
    Eigen::SparseMatrix<double> diff = s_ - Eigen::SparseMatrix<double>(s_.transpose());
    double worst = 0.0;
    for (int c = 0; c < diff.outerSize(); ++c)
        for (Eigen::SparseMatrix<double>::InnerIterator it(diff, c); it; ++it)
            worst = std::max(worst, std::abs(it.value()));
    return worst;
}

AggregateMatrix AggregateMatrix::from_dense(AggregateKind kind, Eigen::MatrixXd m) {
    AggregateMatrix out;
    out.kind_ = kind;
    out.rows_ = static_cast<int>(m.rows());
    out.cols_ = static_cast<int>(m.cols());
    out.dense_ = true;
    out.d_ = std::move(m);
    return out;
}

AggregateMatrix AggregateMatrix::from_sparse(AggregateKind kind, Eigen::SparseMatrix<double> m) {
    AggregateMatrix out;
    out.kind_ = kind;
    out.rows_ = static_cast<int>(m.rows());
    out.cols_ = static_cast<int>(m.cols());
    out.dense_ = false;
    out.s_ = std::move(m);
    out.s_.makeCompressed();
    return out;
}

AggregateMatrix aggregate_sum(const MultiLayerNetwork& net) {
    net.validate();
    const int n = net.n;
    double est = 0;
    for (const auto& layer : net.layers) est += static_cast<double>(layer.nnz());

    ColumnSink sink(AggregateKind::sum_adjacency, n, n, pick_dense(est, n, n));
    for (int c = 0; c < n; ++c) {
        for (const auto& layer : net.layers)
            for (int j : layer.neighbors(c)) sink.add(j, 1.0);
        sink.commit_column(c);
    }
    return sink.finish();
}

AggregateMatrix debiased_sum_squares(const MultiLayerNetwork& net) {
    return squares_aggregate(net, true);
}

AggregateMatrix sum_of_squares(const MultiLayerNetwork& net) {
    return squares_aggregate(net, false);
}

SubsamplePlan make_subsample(int n, int L, int n_sample, int L_sample, std::uint64_t seed) {
    if (n_sample < 1 || n_sample > n) throw std::invalid_argument("n_sample out of [1, n]");
    if (L_sample < 1 || L_sample > L) throw std::invalid_argument("L_sample out of [1, L]");

    auto draw = [](int total, int count, std::mt19937_64& rng) {
        std::vector<int> idx(total);
        std::iota(idx.begin(), idx.end(), 0);
        for (int i = 0; i < count; ++i) {
            std::uniform_int_distribution<int> pick(i, total - 1);
            std::swap(idx[i], idx[pick(rng)]);
        }
        idx.resize(count);
        std::sort(idx.begin(), idx.end());
        return idx;
    };

    SubsamplePlan plan;
    auto node_rng = make_rng(derive_seed(seed, 0xA11CE));
    auto layer_rng = make_rng(derive_seed(seed, 0xBEE5));
    plan.node_set = draw(n, n_sample, node_rng);
    plan.layer_set = draw(L, L_sample, layer_rng);
    return plan;
}

namespace {

void check_plan(const MultiLayerNetwork& net, const SubsamplePlan& plan) {
    net.validate();
    if (plan.node_set.empty() || plan.layer_set.empty())
        throw std::invalid_argument("subsample plan is empty");
    for (std::size_t i = 0; i < plan.node_set.size(); ++i) {
        int v = plan.node_set[i];
        if (v < 0 || v >= net.n) throw std::invalid_argument("plan node out of range");
        if (i > 0 && v <= plan.node_set[i - 1])
            throw std::invalid_argument("plan nodes must be strictly increasing");
    }
    for (std::size_t i = 0; i < plan.layer_set.size(); ++i) {
        int l = plan.layer_set[i];
        if (l < 0 || l >= net.num_layers())
            throw std::invalid_argument("plan layer out of range");
        if (i > 0 && l <= plan.layer_set[i - 1])
            throw std::invalid_argument("plan layers must be strictly increasing");
    }
}

} // namespace

AggregateMatrix subsampled_sum(const MultiLayerNetwork& net, const SubsamplePlan& plan) {
    check_plan(net, plan);
    const int n = net.n;
    const int m = static_cast<int>(plan.node_set.size());

    double est = 0;
    for (int l : plan.layer_set)
        for (int c : plan.node_set) est += static_cast<double>(net.layers[l].degree(c));

    ColumnSink sink(AggregateKind::subsampled_sum, n, m, pick_dense(est, n, m));
    for (int p = 0; p < m; ++p) {
        int c = plan.node_set[p];
        for (int l : plan.layer_set)
            for (int j : net.layers[l].neighbors(c)) sink.add(j, 1.0);
        sink.commit_column(p);
    }
    return sink.finish();
}

AggregateMatrix subsampled_debiased_sum_squares(const MultiLayerNetwork& net,
                                                const SubsamplePlan& plan) {
    check_plan(net, plan);
    const int n = net.n;
    const int m = static_cast<int>(plan.node_set.size());

    // position of each node inside the sample, -1 when unsampled
    std::vector<int> pos(n, -1);
    for (int p = 0; p < m; ++p) pos[plan.node_set[p]] = p;

    double est = 0;
    for (int l : plan.layer_set) {
        double mean_deg = static_cast<double>(net.layers[l].nnz()) / std::max(1, n);
        for (int c : plan.node_set)
            est += std::min(static_cast<double>(n),
                            static_cast<double>(net.layers[l].degree(c)) * mean_deg);
    }

    ColumnSink sink(AggregateKind::subsampled_debiased, n, m, pick_dense(est, n, m));
    for (int p = 0; p < m; ++p) {
        int c = plan.node_set[p];
        for (int l : plan.layer_set) {
            const auto& layer = net.layers[l];
            std::int64_t sampled_degree = 0;
            // (A_sub A_sub^T)(:, c) sums the full columns A(:, v) over
            // sampled neighbors v of c; only v inside the sample contribute.
            for (int v : layer.neighbors(c)) {
                if (pos[v] < 0) continue;
                ++sampled_degree;
                for (int j : layer.neighbors(v)) sink.add(j, 1.0);
            }
            sink.add(c, -static_cast<double>(sampled_degree));
        }
        sink.commit_column(p);
    }
    return sink.finish();
}

} // namespace mlcd
