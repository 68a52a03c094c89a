#include <doctest.h>

#include <Eigen/Dense>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "mlcd/errors.hpp"
#include "mlcd/ingest.hpp"

using namespace mlcd;
namespace fs = std::filesystem;

namespace {

// RAII fixture file under the system temp directory.
struct TempFile {
    fs::path path;
    explicit TempFile(const std::string& name, const std::string& contents)
        : path(fs::temp_directory_path() / name) {
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::error_code ec; fs::remove(path, ec); }
    std::string str() const { return path.string(); }
};

} // namespace

TEST_SUITE("ingest") {

TEST_CASE("edge list parsing: layers, symmetrization, duplicate collapse") {
    TempFile f("mlcd_basic.edges",
               "# comment line\n"
               "1 1 2 1\n"
               "2 2 3 1\n"
               "1 2 1 5\n");
    LoadedNetwork loaded = load_edge_list(f.str());

    CHECK(loaded.net.n == 3);
    CHECK(loaded.net.num_layers() == 2);
    CHECK(loaded.net.layers[0].edge_count() == 1);
    CHECK(loaded.net.layers[0].has_edge(0, 1));
    CHECK(loaded.net.layers[1].edge_count() == 1);
    CHECK(loaded.net.layers[1].has_edge(1, 2));
    CHECK(loaded.total_edges == 2);
    CHECK(loaded.node_ids == std::vector<long>{1, 2, 3});
}

TEST_CASE("weight column is optional and zero weight contributes nothing") {
    TempFile f("mlcd_weights.edges",
               "1 1 2\n"
               "1 3 4 0\n"
               "1 4 5 2.5\n");
    LoadedNetwork loaded = load_edge_list(f.str());
    // the zero-weight record is valid but adds neither an edge nor nodes, so
    // node 3 does not exist in the loaded network at all
    CHECK(loaded.net.n == 4);
    CHECK(loaded.node_ids == std::vector<long>{1, 2, 4, 5});
    CHECK(loaded.net.layers[0].edge_count() == 2);  // {1,2} and {4,5}
    CHECK(loaded.net.layers[0].has_edge(0, 1));
    CHECK(loaded.net.layers[0].has_edge(2, 3));
}

TEST_CASE("sparse original ids are remapped densely but remembered") {
    TempFile f("mlcd_ids.edges",
               "1 100 7 1\n"
               "1 7 4000 1\n");
    LoadedNetwork loaded = load_edge_list(f.str());
    CHECK(loaded.net.n == 3);
    CHECK(loaded.node_ids == std::vector<long>{7, 100, 4000});
    CHECK(loaded.net.layers[0].has_edge(0, 1));   // 7 - 100
    CHECK(loaded.net.layers[0].has_edge(0, 2));   // 7 - 4000
}

TEST_CASE("alternate column order puts the layer last") {
    TempFile f("mlcd_cols.edges", "1 2 1 1\n3 4 2\n");
    LoadOptions opts;
    opts.columns = LoadOptions::Columns::u_v_layer;
    LoadedNetwork loaded = load_edge_list(f.str(), opts);
    CHECK(loaded.net.num_layers() == 2);
    CHECK(loaded.net.layers[0].has_edge(0, 1));
    CHECK(loaded.net.layers[1].has_edge(2, 3));
}

TEST_CASE("malformed input is rejected with a line number") {
    TempFile empty("mlcd_empty.edges", "");
    CHECK_THROWS_AS((void)load_edge_list(empty.str()), ParseError);

    TempFile comments("mlcd_comments.edges", "# nothing\n# here\n");
    CHECK_THROWS_AS((void)load_edge_list(comments.str()), ParseError);

    TempFile bad("mlcd_bad.edges", "1 1 2 1\n1 x 2 1\n");
    try {
        (void)load_edge_list(bad.str());
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }

    TempFile zero_id("mlcd_zero.edges", "1 0 2 1\n");
    CHECK_THROWS_AS((void)load_edge_list(zero_id.str()), ParseError);

    TempFile missing("mlcd_missing.edges", "does_not_exist_anywhere.edges");
    CHECK_THROWS_AS((void)load_edge_list("/nonexistent/no.edges"), ParseError);
}

TEST_CASE("writer and loader are inverse on canonical networks") {
    // dense enough that no node is isolated, so the id range survives the trip
    MldcsbmParams params = testutil::planted_params(20, 2, 3, 0.9, 0.3);
    MultiLayerNetwork net = sample_network(params, 6, false);

    fs::path path = fs::temp_directory_path() / "mlcd_roundtrip.edges";
    write_edge_list(path.string(), net);
    LoadedNetwork loaded = load_edge_list(path.string());
    fs::remove(path);

    // every node appears in some edge for this density, so n survives
    REQUIRE(loaded.net.n == net.n);
    REQUIRE(loaded.net.num_layers() == net.num_layers());
    for (int l = 0; l < net.num_layers(); ++l)
        CHECK(loaded.net.layers[l].edges() == net.layers[l].edges());
}

TEST_CASE("largest component wins, with ties going to the smallest node") {
    // component {0,1,2} in layer 1, component {3,4} in layer 2
    MultiLayerNetwork net;
    net.n = 5;
    net.layers.push_back(SparseLayer::from_edges(5, {{0, 1}, {1, 2}}));
    net.layers.push_back(SparseLayer::from_edges(5, {{3, 4}}));

    LccResult lcc = largest_connected_component(net);
    CHECK(lcc.kept == std::vector<int>{0, 1, 2});
    CHECK(lcc.net.n == 3);
    CHECK(lcc.net.layers[0].edge_count() == 2);
    CHECK(lcc.net.layers[1].edge_count() == 0);

    // two components of equal size: keep the one containing node 0
    MultiLayerNetwork tie;
    tie.n = 4;
    tie.layers.push_back(SparseLayer::from_edges(4, {{0, 1}, {2, 3}}));
    CHECK(largest_connected_component(tie).kept == std::vector<int>{0, 1});
}

TEST_CASE("connected networks pass through the component filter unchanged") {
    MultiLayerNetwork net = testutil::single_layer(testutil::path3());
    LccResult lcc = largest_connected_component(net);
    CHECK(lcc.kept == std::vector<int>{0, 1, 2});
    CHECK(lcc.net.layers[0].edges() == net.layers[0].edges());
}

TEST_CASE("component membership matches a brute-force flood fill") {
    MldcsbmParams params = simulation_params(40, 4, 2, 0.02, false, 77);
    MultiLayerNetwork net = sample_network(params, 78, false);

    // oracle: BFS over the union support
    Eigen::MatrixXd support = testutil::oracle_sum(net);
    std::vector<int> comp(40, -1);
    int n_comp = 0;
    for (int s = 0; s < 40; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> queue = {s};
        comp[s] = n_comp;
        while (!queue.empty()) {
            int u = queue.back();
            queue.pop_back();
            for (int v = 0; v < 40; ++v)
                if (v != u && support(u, v) > 0 && comp[v] < 0) {
                    comp[v] = n_comp;
                    queue.push_back(v);
                }
        }
        ++n_comp;
    }
    std::vector<int> sizes(n_comp, 0);
    for (int c : comp) ++sizes[c];
    int best = 0;
    for (int c = 1; c < n_comp; ++c)
        if (sizes[c] > sizes[best]) best = c;  // first maximum = smallest node

    std::vector<int> want;
    for (int i = 0; i < 40; ++i)
        if (comp[i] == best) want.push_back(i);

    CHECK(largest_connected_component(net).kept == want);
}

TEST_CASE("edge density over the stack") {
    MultiLayerNetwork empty;
    empty.n = 4;
    empty.layers.push_back(SparseLayer::from_edges(4, {}));
    CHECK(nu_sparsity(empty) == 0.0);

    // complete loopless layers saturate at 1
    std::vector<std::pair<int, int>> all;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) all.emplace_back(i, j);
    MultiLayerNetwork full;
    full.n = 4;
    full.layers.push_back(SparseLayer::from_edges(4, all));
    full.layers.push_back(SparseLayer::from_edges(4, all));
    CHECK(nu_sparsity(full) == 1.0);

    // loops do not count
    MultiLayerNetwork loops;
    loops.n = 2;
    loops.layers.push_back(SparseLayer::from_edges(2, {{0, 0}, {0, 1}}));
    CHECK(nu_sparsity(loops) == 1.0);

    MultiLayerNetwork tiny;
    tiny.n = 1;
    tiny.layers.push_back(SparseLayer::from_edges(1, {}));
    CHECK_THROWS_AS((void)nu_sparsity(tiny), std::invalid_argument);
}

TEST_CASE("returns panel parsing and its guard rails") {
    TempFile f("mlcd_panel.csv",
               "asset_id,t1,t2,t3,t4\n"
               "AAA,0.1,0.2,0.3,0.4\n"
               "BBB,-0.1,0.0,0.1,0.2\n");
    ReturnsPanel panel = load_returns_panel(f.str());
    CHECK(panel.asset_ids == std::vector<std::string>{"AAA", "BBB"});
    CHECK(panel.returns.rows() == 2);
    CHECK(panel.returns.cols() == 4);
    CHECK(panel.returns(1, 0) == doctest::Approx(-0.1));

    TempFile short_panel("mlcd_short.csv", "asset_id,t1,t2\nAAA,1,2\n");
    CHECK_THROWS_AS((void)load_returns_panel(short_panel.str()), ParseError);

    TempFile ragged("mlcd_ragged.csv", "asset_id,t1,t2,t3\nAAA,1,2\n");
    CHECK_THROWS_AS((void)load_returns_panel(ragged.str()), ParseError);
}

TEST_CASE("correlation layers: hand-checked edges and threshold nesting") {
    // series 1 and 2 nearly parallel, series 3 anti-correlated with 2
    ReturnsPanel panel;
    panel.asset_ids = {"A", "B", "C"};
    panel.returns.resize(3, 5);
    panel.returns << 1.0, 2.0, 3.0, 4.0, 5.0,
                     1.1, 2.0, 3.2, 3.9, 5.1,
                     4.8, 4.2, 3.1, 2.2, 0.9;

    // oracle correlations
    auto pearson = [&](int i, int j) {
        Eigen::VectorXd x = panel.returns.row(i);
        Eigen::VectorXd y = panel.returns.row(j);
        x.array() -= x.mean();
        y.array() -= y.mean();
        return x.dot(y) / (x.norm() * y.norm());
    };

    std::vector<double> taus = {0.5, 0.9, 0.999};
    ThresholdResult built = build_threshold_multilayer(panel, taus);
    CHECK(built.net.num_layers() == 3);
    CHECK(built.dropped_assets.empty());

    for (int l = 0; l < 3; ++l)
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                CHECK(built.net.layers[l].has_edge(i, j) ==
                      (std::abs(pearson(i, j)) > taus[l]));

    // tighter thresholds only remove edges
    for (int l = 1; l < 3; ++l)
        for (auto [u, v] : built.net.layers[l].edges())
            CHECK(built.net.layers[l - 1].has_edge(u, v));
}

TEST_CASE("constant series are dropped, and too few survivors is an error") {
    ReturnsPanel panel;
    panel.asset_ids = {"FLAT", "A", "B"};
    panel.returns.resize(3, 4);
    panel.returns << 2.0, 2.0, 2.0, 2.0,
                     1.0, 2.0, 3.0, 4.0,
                     4.0, 3.0, 2.0, 1.0;

    ThresholdResult built = build_threshold_multilayer(panel, {0.5});
    CHECK(built.dropped_assets == std::vector<std::string>{"FLAT"});
    CHECK(built.kept_assets == std::vector<std::string>{"A", "B"});
    CHECK(built.net.n == 2);
    CHECK(built.net.layers[0].has_edge(0, 1));  // perfectly anti-correlated

    ReturnsPanel hopeless;
    hopeless.asset_ids = {"X", "Y"};
    hopeless.returns = Eigen::MatrixXd::Ones(2, 4);
    CHECK_THROWS_AS((void)build_threshold_multilayer(hopeless, {0.5}),
                    DegenerateInputError);

    CHECK_THROWS_AS((void)build_threshold_multilayer(panel, {}), std::invalid_argument);
    CHECK_THROWS_AS((void)build_threshold_multilayer(panel, {1.0}), std::invalid_argument);
}

} // TEST_SUITE
