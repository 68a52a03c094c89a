#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace mlcd {

/// One layer of a multi-layer network: an undirected, unweighted adjacency
/// matrix in CSR form. Both directions of an edge are stored; a self-loop is
/// stored once as (i,i). Node indices are 0-based in memory (file formats and
/// the CLI are 1-based).
class SparseLayer {
public:
    SparseLayer() = default;

    /// Build from an edge list (0-based endpoints). Duplicates collapse,
    /// (u,v) and (v,u) both yield the symmetric pair, loops are kept.
    static SparseLayer from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int n() const { return n_; }
    std::int64_t nnz() const { return static_cast<std::int64_t>(cols_.size()); }

    std::span<const std::int32_t> neighbors(int i) const {
        return {cols_.data() + row_ptr_[i], cols_.data() + row_ptr_[i + 1]};
    }

    /// Row sum of the adjacency matrix; a self-loop contributes 1.
    std::int64_t degree(int i) const { return row_ptr_[i + 1] - row_ptr_[i]; }

    bool has_edge(int i, int j) const;

    /// Distinct off-diagonal edges, each counted once.
    std::int64_t edge_count() const;
    std::int64_t loop_count() const;

    /// Every stored edge as (u, v) with u <= v, sorted; loops included once.
    std::vector<std::pair<int, int>> edges() const;

    /// Induced subgraph on keep (0-based, strictly increasing); node k of the
    /// result is keep[k].
    SparseLayer induced(const std::vector<int>& keep) const;

private:
    int n_ = 0;
    std::vector<std::int64_t> row_ptr_ = {0};
    std::vector<std::int32_t> cols_;
};

/// A stack of layers over one shared node set.
struct MultiLayerNetwork {
    int n = 0;
    std::vector<SparseLayer> layers;

    int num_layers() const { return static_cast<int>(layers.size()); }

    /// Throws std::invalid_argument unless every layer has exactly n nodes
    /// and at least one layer exists.
    void validate() const;
};

} // namespace mlcd
