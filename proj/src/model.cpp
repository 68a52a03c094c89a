#include "mlcd/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mlcd/rng.hpp"

namespace mlcd {

void NodeLabels::validate() const {
    if (K < 1) throw std::invalid_argument("label count must be at least 1");
    std::vector<char> seen(K, 0);
    for (int v : z) {
        if (v < 1 || v > K) throw std::invalid_argument("label outside 1..K");
        seen[v - 1] = 1;
    }
    if (!std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; }))
        throw std::invalid_argument("some community is empty");
}

void MldcsbmParams::validate() const {
    labels.validate();
    if (theta.size() != labels.n()) throw std::invalid_argument("theta length mismatch");
    for (int i = 0; i < theta.size(); ++i)
        if (!(theta[i] > 0.0) || theta[i] > 1.0)
            throw std::invalid_argument("theta entries must lie in (0, 1]");
    if (B.empty()) throw std::invalid_argument("need at least one layer matrix");
    for (const auto& b : B) {
        if (b.rows() != labels.K || b.cols() != labels.K)
            throw std::invalid_argument("B matrix must be K x K");
        for (int r = 0; r < b.rows(); ++r)
            for (int c = 0; c < b.cols(); ++c) {
                if (b(r, c) < 0.0 || b(r, c) > 1.0)
                    throw std::invalid_argument("B entries must lie in [0, 1]");
                if (b(r, c) != b(c, r))
                    throw std::invalid_argument("B matrices must be symmetric");
            }
    }
}

Eigen::MatrixXd expected_adjacency(const MldcsbmParams& params, int layer) {
    params.validate();
    if (layer < 0 || layer >= params.L())
        throw std::invalid_argument("layer index out of range");
    const int n = params.n();
    const auto& b = params.B[layer];
    Eigen::MatrixXd omega(n, n);
    for (int j = 0; j < n; ++j) {
        int cj = params.labels.z[j] - 1;
        for (int i = 0; i < n; ++i) {
            int ci = params.labels.z[i] - 1;
            omega(i, j) = params.theta[i] * params.theta[j] * b(ci, cj);
        }
    }
    return omega;
}

MultiLayerNetwork sample_network(const MldcsbmParams& params, std::uint64_t seed,
                                 bool allow_self_loops) {
    params.validate();
    const int n = params.n();
    MultiLayerNetwork net;
    net.n = n;
    net.layers.reserve(params.L());

    for (int l = 0; l < params.L(); ++l) {
        auto rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(l), 0x5A3B));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const auto& b = params.B[l];
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i) {
            int ci = params.labels.z[i] - 1;
            for (int j = i; j < n; ++j) {
                if (i == j && !allow_self_loops) continue;
                double p = params.theta[i] * params.theta[j] * b(ci, params.labels.z[j] - 1);
                if (unif(rng) < p) edges.emplace_back(i, j);
            }
        }
        net.layers.push_back(SparseLayer::from_edges(n, edges));
    }
    return net;
}

MldcsbmParams simulation_params(int n, int K, int L, double rho, bool assortative,
                                std::uint64_t seed) {
    if (n < 1 || K < 1 || L < 1) throw std::invalid_argument("n, K, L must be positive");
    if (n < K) throw std::invalid_argument("need at least one node per community");
    if (rho <= 0.0 || rho > 1.0) throw std::invalid_argument("rho must lie in (0, 1]");

    MldcsbmParams params;
    params.labels.K = K;
    params.labels.z.resize(n);

    auto label_rng = make_rng(derive_seed(seed, 0x1AB));
    std::uniform_int_distribution<int> pick(1, K);
    bool ok = false;
    for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
        std::vector<int> count(K, 0);
        for (int i = 0; i < n; ++i) {
            params.labels.z[i] = pick(label_rng);
            ++count[params.labels.z[i] - 1];
        }
        ok = std::all_of(count.begin(), count.end(), [](int c) { return c > 0; });
    }
    if (!ok) throw std::runtime_error("could not draw labels with every community non-empty");

    auto theta_rng = make_rng(derive_seed(seed, 0x7E7A));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    params.theta.resize(n);
    double root = std::sqrt(rho);
    for (int i = 0; i < n; ++i)
        params.theta[i] = std::max(1e-12, root * unif(theta_rng));

    auto b_rng = make_rng(derive_seed(seed, 0xB0B));
    params.B.reserve(L);
    for (int l = 0; l < L; ++l) {
        Eigen::MatrixXd raw(K, K);
        for (int r = 0; r < K; ++r)
            for (int c = 0; c < K; ++c) raw(r, c) = unif(b_rng);
        Eigen::MatrixXd b = 0.5 * (raw + raw.transpose());
        if (assortative) b.diagonal().setOnes();
        params.B.push_back(std::move(b));
    }
    return params;
}

} // namespace mlcd
