#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mlcd/network.hpp"

namespace mlcd {

/// One line of a multi-layer edge list, in original (file) ids.
struct EdgeRecord {
    int layer = 0;   // 1-based
    long u = 0;      // original node id
    long v = 0;
    double w = 1.0;
};

struct LoadOptions {
    /// Column order of each line: layer first (default) or layer third.
    enum class Columns { layer_u_v, u_v_layer };
    Columns columns = Columns::layer_u_v;
};

struct LoadedNetwork {
    MultiLayerNetwork net;
    /// node_ids[i] is the original id of internal node i; ascending.
    std::vector<long> node_ids;
    std::int64_t total_edges = 0;  // distinct off-diagonal edges over all layers
    std::int64_t total_loops = 0;
};

/// Parse a whitespace-separated edge list ("layer u v [weight]" by default,
/// '#' starts a comment). Any nonzero weight becomes an edge; zero weight
/// means no edge. Edges are symmetrized, duplicates collapse, self-loops are
/// kept. Node ids are remapped to a dense range in ascending order; the layer
/// count is the maximum layer id, so intermediate layers may be empty.
/// Throws ParseError with a line number on malformed input or an empty list.
LoadedNetwork load_edge_list(const std::string& path, const LoadOptions& opts = {});

struct LccResult {
    MultiLayerNetwork net;
    /// Internal indices (into the input network) of the kept nodes, ascending.
    std::vector<int> kept;
};

/// Restrict to the largest connected component of the aggregate support
/// graph (an edge wherever any layer has one, self-loops ignored). Ties on
/// size go to the component containing the smallest node index.
LccResult largest_connected_component(const MultiLayerNetwork& net);

/// Edge density over the whole stack: total distinct off-diagonal edges
/// divided by L * n * (n - 1) / 2. Self-loops are excluded.
double nu_sparsity(const MultiLayerNetwork& net);

/// Per-asset return series: one row per asset, one column per period.
struct ReturnsPanel {
    std::vector<std::string> asset_ids;
    Eigen::MatrixXd returns;
};

/// CSV with header "asset_id,t1,...,tT", one asset per row.
ReturnsPanel load_returns_panel(const std::string& path);

struct ThresholdResult {
    MultiLayerNetwork net;
    std::vector<std::string> kept_assets;
    std::vector<std::string> dropped_assets;  // constant series, excluded
};

/// One layer per threshold tau: nodes i and j are linked when the absolute
/// Pearson correlation of their return series exceeds tau. Constant series
/// are dropped before the correlation pass; at least two must survive.
ThresholdResult build_threshold_multilayer(const ReturnsPanel& panel,
                                           const std::vector<double>& thresholds);

/// Canonical writer: "layer u v 1" lines sorted by (layer, u, v), 1-based.
/// When node_ids is given, internal indices are translated back through it.
void write_edge_list(const std::string& path, const MultiLayerNetwork& net,
                     const std::vector<long>* node_ids = nullptr);

} // namespace mlcd
