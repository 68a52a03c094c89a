#include "mlcd/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "mlcd/rng.hpp"

namespace mlcd {

namespace {

// Matrix-free view over an aggregate; keeps the dense and sparse storages
// behind one interface for the iterative solver.
struct LinOp {
    int rows = 0;
    int cols = 0;
    double frob = 0.0;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> mul;    // M x
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> mul_t;  // M^T x
};

LinOp make_op(const AggregateMatrix& m) {
    LinOp op;
    op.rows = m.rows();
    op.cols = m.cols();
    op.frob = m.frobenius_norm();
    op.mul = [&m](const Eigen::VectorXd& x) { return m.apply(x); };
    op.mul_t = [&m](const Eigen::VectorXd& x) { return m.apply_transpose(x); };
    return op;
}

// Order eigenvalue indices by |value| descending; ties by signed value
// descending, then by original position.
std::vector<int> magnitude_order(const Eigen::VectorXd& vals) {
    std::vector<int> idx(vals.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        double ma = std::abs(vals[a]), mb = std::abs(vals[b]);
        if (ma != mb) return ma > mb;
        if (vals[a] != vals[b]) return vals[a] > vals[b];
        return a < b;
    });
    return idx;
}

Embedding dense_sym_topk(const Eigen::MatrixXd& m, int k) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("dense symmetric eigensolver failed");
    auto order = magnitude_order(es.eigenvalues());
    Embedding e;
    e.vectors.resize(m.rows(), k);
    e.values.resize(k);
    for (int j = 0; j < k; ++j) {
        e.vectors.col(j) = es.eigenvectors().col(order[j]);
        e.values[j] = es.eigenvalues()[order[j]];
    }
    return e;
}

// Lanczos with full reorthogonalization on a symmetric operator. `apply` is
// the matvec, `dim` its order. Residual target is tol * scale; vectors whose
// true residual stays above accept * scale after the subspace budget is
// exhausted cause a failure (nullopt) so callers can fall back.
struct LanczosOut {
    Eigen::MatrixXd vectors;
    Eigen::VectorXd values;
    bool converged = false;
};

LanczosOut lanczos_sym_topk(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
                            int dim, int k, double scale, const SpectralOptions& opts) {
    const double tol = opts.tol;
    const double accept = std::max(opts.tol * 10.0, 1e-13);
    const int m_max = std::min(dim, std::max(opts.max_lanczos_dim, 4 * k + 20));

    Eigen::MatrixXd V(dim, m_max + 1);
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m_max);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(m_max);

    auto rng = make_rng(0x3a93c0de);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto fresh = [&]() {
        Eigen::VectorXd v(dim);
        for (int i = 0; i < dim; ++i) v[i] = gauss(rng);
        return v;
    };
    auto reorthogonalize = [&](Eigen::VectorXd& w, int upto) {
        for (int pass = 0; pass < 2; ++pass) {
            Eigen::VectorXd proj = V.leftCols(upto).transpose() * w;
            w.noalias() -= V.leftCols(upto) * proj;
        }
    };

    Eigen::VectorXd v0 = fresh();
    V.col(0) = v0 / v0.norm();

    LanczosOut out;
    for (int j = 0; j < m_max; ++j) {
        Eigen::VectorXd w = apply(V.col(j));
        alpha[j] = V.col(j).dot(w);
        w.noalias() -= alpha[j] * V.col(j);
        if (j > 0) w.noalias() -= beta[j - 1] * V.col(j - 1);
        reorthogonalize(w, j + 1);
        double nb = w.norm();
        if (nb <= 1e-13 * std::max(1.0, scale)) {
            // Invariant subspace reached; continue from a fresh direction.
            do {
                w = fresh();
                reorthogonalize(w, j + 1);
                nb = w.norm();
            } while (nb < 1e-8);
            beta[j] = 0.0;
        } else {
            beta[j] = nb;
        }
        V.col(j + 1) = w / nb;

        const int m = j + 1;
        const bool last = (j == m_max - 1);
        if (m < k || (!last && m % 8 != 0)) continue;

        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            T(i, i) = alpha[i];
            if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        auto order = magnitude_order(es.eigenvalues());

        bool estimates_ok = true;
        for (int t = 0; t < k && estimates_ok; ++t) {
            double res = std::abs(beta[m - 1] * es.eigenvectors()(m - 1, order[t]));
            estimates_ok = res <= tol * std::max(1.0, scale);
        }
        if (!estimates_ok && !last) continue;

        Eigen::MatrixXd ritz(dim, k);
        Eigen::VectorXd theta(k);
        for (int t = 0; t < k; ++t) {
            ritz.col(t) = V.leftCols(m) * es.eigenvectors().col(order[t]);
            ritz.col(t).normalize();
            theta[t] = es.eigenvalues()[order[t]];
        }
        // Estimates can drift after reorthogonalization; trust only the
        // true residuals.
        double worst = 0.0;
        for (int t = 0; t < k; ++t) {
            double res = (apply(ritz.col(t)) - theta[t] * ritz.col(t)).norm();
            worst = std::max(worst, res);
        }
        if (worst <= accept * std::max(1.0, scale) || last) {
            out.vectors = std::move(ritz);
            out.values = std::move(theta);
            out.converged = worst <= accept * std::max(1.0, scale);
            if (out.converged || last) return out;
        }
    }
    return out;
}

// Deterministic fill-in for rank-deficient singular blocks: a pseudo-random
// direction orthogonalized against everything already chosen.
Eigen::VectorXd orthonormal_complement(const Eigen::MatrixXd& basis, int ncols, int salt) {
    auto rng = make_rng(derive_seed(0xf111, static_cast<std::uint64_t>(salt)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int attempt = 0; attempt < 32; ++attempt) {
        Eigen::VectorXd v(basis.rows());
        for (int i = 0; i < v.size(); ++i) v[i] = gauss(rng);
        for (int pass = 0; pass < 2; ++pass)
            if (ncols > 0) {
                Eigen::VectorXd proj = basis.leftCols(ncols).transpose() * v;
                v.noalias() -= basis.leftCols(ncols) * proj;
            }
        double nb = v.norm();
        if (nb > 1e-8) return v / nb;
    }
    throw std::runtime_error("could not complete orthonormal basis");
}

} // namespace

Embedding top_k_eigen(const AggregateMatrix& m, int k, const SpectralOptions& opts) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eigen decomposition needs a square matrix");
    const int n = m.rows();
    if (k < 1 || k > n) throw std::invalid_argument("k must lie in [1, n]");
    if (m.max_abs_asymmetry() > 1e-9)
        throw std::invalid_argument("matrix is not symmetric within tolerance");

    // The iterative path only pays off for a handful of leading pairs.
    bool use_dense = n <= opts.dense_cutoff || k > std::max(1, opts.max_lanczos_dim / 4);
    if (use_dense) return dense_sym_topk(m.to_dense(), k);

    LinOp op = make_op(m);
    LanczosOut lz = lanczos_sym_topk(op.mul, n, k, op.frob, opts);
    if (!lz.converged) {
        if (n <= 8192) return dense_sym_topk(m.to_dense(), k);
        throw std::runtime_error("Lanczos failed to reach the residual tolerance");
    }
    Embedding e;
    e.vectors = std::move(lz.vectors);
    e.values = std::move(lz.values);
    return e;
}

Embedding top_k_eigen(const Eigen::MatrixXd& m, int k, const SpectralOptions& opts) {
    return top_k_eigen(AggregateMatrix::from_dense(AggregateKind::sum_adjacency, m), k, opts);
}

Embedding top_k_left_singular(const AggregateMatrix& m, int k, const SpectralOptions& opts) {
    const int r = m.rows(), c = m.cols();
    if (k < 1 || k > std::min(r, c))
        throw std::invalid_argument("k must lie in [1, min(rows, cols)]");

    if (std::max(r, c) <= opts.dense_cutoff) {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(m.to_dense(), Eigen::ComputeThinU);
        Embedding e;
        e.vectors = svd.matrixU().leftCols(k);
        e.values = svd.singularValues().head(k);
        return e;
    }

    // Large input: Lanczos on the smaller Gram operator. With G = M M^T the
    // eigenvectors are the left-singular vectors directly; with G = M^T M
    // they are right vectors and u = M v / sigma recovers the left ones.
    LinOp op = make_op(m);
    const bool gram_left = r <= c;
    const int dim = gram_left ? r : c;
    auto gram = [&](const Eigen::VectorXd& x) {
        return gram_left ? op.mul(op.mul_t(x)) : op.mul_t(op.mul(x));
    };
    SpectralOptions gopts = opts;
    gopts.tol = std::min(opts.tol * 10.0, 1e-9);  // residual contract is relative to |M|_F
    LanczosOut lz = lanczos_sym_topk(gram, dim, k, std::max(1.0, op.frob), gopts);
    if (!lz.converged) {
        if (static_cast<double>(r) * c <= 4096.0 * 4096.0) {
            Eigen::BDCSVD<Eigen::MatrixXd> svd(m.to_dense(), Eigen::ComputeThinU);
            Embedding e;
            e.vectors = svd.matrixU().leftCols(k);
            e.values = svd.singularValues().head(k);
            return e;
        }
        throw std::runtime_error("Lanczos failed to reach the residual tolerance");
    }

    Embedding e;
    e.values.resize(k);
    e.vectors.resize(r, k);
    const double rank_tol = 1e-12 * std::max(1.0, op.frob);
    for (int t = 0; t < k; ++t) {
        double sigma = std::sqrt(std::max(0.0, lz.values[t]));
        e.values[t] = sigma;
        if (gram_left) {
            e.vectors.col(t) = lz.vectors.col(t);
        } else if (sigma > rank_tol) {
            Eigen::VectorXd u = op.mul(lz.vectors.col(t));
            e.vectors.col(t) = u / u.norm();
        } else {
            e.vectors.col(t) = orthonormal_complement(e.vectors, t, t);
        }
    }
    if (!gram_left && k > 1) {
        // u = M v / sigma inherits the Gram-route residual, so cross terms can
        // sit just above the orthonormality budget; a thin QR of the nearly
        // orthonormal block removes them without moving any column materially.
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(e.vectors);
        Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(r, k);
        Eigen::MatrixXd rr = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
        for (int t = 0; t < k; ++t)
            if (rr(t, t) < 0.0) q.col(t) = -q.col(t);
        e.vectors = std::move(q);
    }
    return e;
}

Embedding top_k_left_singular(const Eigen::MatrixXd& m, int k, const SpectralOptions& opts) {
    return top_k_left_singular(AggregateMatrix::from_dense(AggregateKind::subsampled_sum, m), k, opts);
}

std::pair<Eigen::MatrixXd, std::vector<int>> row_normalize(const Eigen::MatrixXd& m) {
    Eigen::MatrixXd out = m;
    std::vector<int> flagged;
    for (int i = 0; i < m.rows(); ++i) {
        double nrm = m.row(i).norm();
        if (nrm < 1e-12) flagged.push_back(i);
        else out.row(i) /= nrm;
    }
    return {std::move(out), std::move(flagged)};
}

} // namespace mlcd
