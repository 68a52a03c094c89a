#include "mlcd/network.hpp"

#include <algorithm>
#include <stdexcept>

namespace mlcd {

SparseLayer SparseLayer::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw std::invalid_argument("node count must be non-negative");
    std::vector<std::pair<std::int32_t, std::int32_t>> dir;
    dir.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        dir.emplace_back(u, v);
        if (u != v) dir.emplace_back(v, u);
    }
    std::sort(dir.begin(), dir.end());
    dir.erase(std::unique(dir.begin(), dir.end()), dir.end());

    SparseLayer layer;
    layer.n_ = n;
    layer.row_ptr_.assign(n + 1, 0);
    layer.cols_.reserve(dir.size());
    for (auto [u, v] : dir) {
        ++layer.row_ptr_[u + 1];
        layer.cols_.push_back(v);
    }
    for (int i = 0; i < n; ++i) layer.row_ptr_[i + 1] += layer.row_ptr_[i];
    return layer;
}

bool SparseLayer::has_edge(int i, int j) const {
    auto nb = neighbors(i);
    return std::binary_search(nb.begin(), nb.end(), j);
}

std::int64_t SparseLayer::edge_count() const {
    return (nnz() - loop_count()) / 2;
}

std::int64_t SparseLayer::loop_count() const {
    std::int64_t loops = 0;
    for (int i = 0; i < n_; ++i)
        if (has_edge(i, i)) ++loops;
    return loops;
}

std::vector<std::pair<int, int>> SparseLayer::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(nnz()));
    for (int i = 0; i < n_; ++i)
        for (int j : neighbors(i))
            if (i <= j) out.emplace_back(i, j);
    return out;
}

SparseLayer SparseLayer::induced(const std::vector<int>& keep) const {
    std::vector<int> pos(n_, -1);
    for (std::size_t k = 0; k < keep.size(); ++k) {
        int v = keep[k];
        if (v < 0 || v >= n_) throw std::invalid_argument("kept node out of range");
        if (k > 0 && keep[k] <= keep[k - 1])
            throw std::invalid_argument("kept nodes must be strictly increasing");
        pos[v] = static_cast<int>(k);
    }
    std::vector<std::pair<int, int>> sub;
    for (int i : keep)
        for (int j : neighbors(i))
            if (i <= j && pos[j] >= 0) sub.emplace_back(pos[i], pos[j]);
    return from_edges(static_cast<int>(keep.size()), sub);
}

void MultiLayerNetwork::validate() const {
    if (layers.empty()) throw std::invalid_argument("network needs at least one layer");
    for (const auto& layer : layers)
        if (layer.n() != n) throw std::invalid_argument("layer node count mismatch");
}

} // namespace mlcd
