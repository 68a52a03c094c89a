#include "mlcd/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mlcd/errors.hpp"

namespace mlcd {

namespace {

bool parse_long(const std::string& tok, long& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

bool parse_double(const std::string& tok, double& out) {
    try {
        std::size_t used = 0;
        out = std::stod(tok, &used);
        return used == tok.size();
    } catch (...) {
        return false;
    }
}

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

LoadedNetwork load_edge_list(const std::string& path, const LoadOptions& opts) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");

    std::vector<EdgeRecord> records;
    std::string line;
    long line_no = 0;
    int max_layer = 0;
    std::set<long> ids;

    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = strip(line);
        if (line.empty()) continue;

        std::istringstream ss(line);
        std::vector<std::string> tok;
        std::string t;
        while (ss >> t) tok.push_back(t);
        if (tok.size() != 3 && tok.size() != 4)
            throw ParseError(path, line_no, "expected 3 or 4 columns, got " +
                                                std::to_string(tok.size()));

        EdgeRecord rec;
        long a = 0, b = 0, c = 0;
        bool ok = parse_long(tok[0], a) && parse_long(tok[1], b) && parse_long(tok[2], c);
        if (!ok) throw ParseError(path, line_no, "node and layer ids must be integers");
        if (opts.columns == LoadOptions::Columns::layer_u_v) {
            rec.layer = static_cast<int>(a);
            rec.u = b;
            rec.v = c;
        } else {
            rec.u = a;
            rec.v = b;
            rec.layer = static_cast<int>(c);
        }
        if (tok.size() == 4) {
            if (!parse_double(tok[3], rec.w))
                throw ParseError(path, line_no, "weight must be numeric");
        }
        if (rec.layer < 1) throw ParseError(path, line_no, "layer ids start at 1");
        if (rec.u < 1 || rec.v < 1) throw ParseError(path, line_no, "node ids start at 1");
        if (rec.w == 0.0) continue;  // zero weight: no edge, line still valid

        max_layer = std::max(max_layer, rec.layer);
        ids.insert(rec.u);
        ids.insert(rec.v);
        records.push_back(rec);
    }
    if (records.empty()) throw ParseError(path, line_no, "no edge records found");

    LoadedNetwork out;
    out.node_ids.assign(ids.begin(), ids.end());
    std::map<long, int> index;
    for (std::size_t i = 0; i < out.node_ids.size(); ++i)
        index[out.node_ids[i]] = static_cast<int>(i);

    const int n = static_cast<int>(out.node_ids.size());
    std::vector<std::vector<std::pair<int, int>>> per_layer(max_layer);
    for (const auto& rec : records)
        per_layer[rec.layer - 1].emplace_back(index[rec.u], index[rec.v]);

    out.net.n = n;
    out.net.layers.reserve(max_layer);
    for (const auto& edges : per_layer)
        out.net.layers.push_back(SparseLayer::from_edges(n, edges));
    for (const auto& layer : out.net.layers) {
        out.total_edges += layer.edge_count();
        out.total_loops += layer.loop_count();
    }
    return out;
}

LccResult largest_connected_component(const MultiLayerNetwork& net) {
    net.validate();
    const int n = net.n;
    std::vector<int> comp(n, -1);
    int best_comp = -1;
    std::int64_t best_size = 0;
    int comps = 0;

    std::vector<int> stack;
    for (int start = 0; start < n; ++start) {
        if (comp[start] >= 0) continue;
        int id = comps++;
        std::int64_t size = 0;
        stack.push_back(start);
        comp[start] = id;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            ++size;
            for (const auto& layer : net.layers)
                for (int w : layer.neighbors(v))
                    if (w != v && comp[w] < 0) {
                        comp[w] = id;
                        stack.push_back(w);
                    }
        }
        // first component of the largest size wins, which is the one
        // containing the smallest node index
        if (size > best_size) {
            best_size = size;
            best_comp = id;
        }
    }

    LccResult out;
    for (int v = 0; v < n; ++v)
        if (comp[v] == best_comp) out.kept.push_back(v);
    out.net.n = static_cast<int>(out.kept.size());
    out.net.layers.reserve(net.num_layers());
    for (const auto& layer : net.layers) out.net.layers.push_back(layer.induced(out.kept));
    return out;
}

double nu_sparsity(const MultiLayerNetwork& net) {
    net.validate();
    if (net.n < 2) throw std::invalid_argument("sparsity needs at least two nodes");
    std::int64_t edges = 0;
    for (const auto& layer : net.layers) edges += layer.edge_count();
    double possible = static_cast<double>(net.num_layers()) * net.n * (net.n - 1) / 2.0;
    return static_cast<double>(edges) / possible;
}

ReturnsPanel load_returns_panel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");

    std::string line;
    long line_no = 0;
    if (!std::getline(in, line)) throw ParseError(path, 1, "missing header row");
    ++line_no;

    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        for (char c : s) {
            if (c == ',') {
                out.push_back(strip(cur));
                cur.clear();
            } else cur += c;
        }
        out.push_back(strip(cur));
        return out;
    };

    auto header = split(line);
    if (header.size() < 2 || header[0] != "asset_id")
        throw ParseError(path, 1, "header must start with asset_id,t1,...");
    const std::size_t T = header.size() - 1;
    if (T < 3) throw ParseError(path, 1, "need at least 3 time points");

    ReturnsPanel panel;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (strip(line).empty()) continue;
        auto tok = split(line);
        if (tok.size() != header.size())
            throw ParseError(path, line_no, "row width does not match header");
        panel.asset_ids.push_back(tok[0]);
        std::vector<double> vals(T);
        for (std::size_t j = 0; j < T; ++j)
            if (!parse_double(tok[j + 1], vals[j]))
                throw ParseError(path, line_no, "non-numeric return value");
        rows.push_back(std::move(vals));
    }
    if (rows.empty()) throw ParseError(path, line_no, "no asset rows found");

    panel.returns.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(T));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < T; ++j) panel.returns(static_cast<Eigen::Index>(i),
                                                          static_cast<Eigen::Index>(j)) = rows[i][j];
    return panel;
}

ThresholdResult build_threshold_multilayer(const ReturnsPanel& panel,
                                           const std::vector<double>& thresholds) {
    if (thresholds.empty()) throw std::invalid_argument("need at least one threshold");
    for (double tau : thresholds)
        if (!(tau >= 0.0 && tau < 1.0))
            throw std::invalid_argument("thresholds must lie in [0, 1)");
    const Eigen::Index m = panel.returns.rows();
    const Eigen::Index T = panel.returns.cols();
    if (static_cast<std::size_t>(m) != panel.asset_ids.size())
        throw std::invalid_argument("asset id count does not match series count");
    if (T < 3) throw std::invalid_argument("need at least 3 time points");

    ThresholdResult out;
    std::vector<Eigen::VectorXd> unit_rows;
    for (Eigen::Index i = 0; i < m; ++i) {
        Eigen::VectorXd row = panel.returns.row(i);
        double mean = row.mean();
        Eigen::VectorXd centered = row.array() - mean;
        double spread = centered.cwiseAbs().maxCoeff();
        if (spread <= 1e-12 * std::max(1.0, std::abs(mean))) {
            out.dropped_assets.push_back(panel.asset_ids[i]);
            continue;
        }
        out.kept_assets.push_back(panel.asset_ids[i]);
        unit_rows.push_back(centered / centered.norm());
    }
    const int n = static_cast<int>(unit_rows.size());
    if (n < 2) throw DegenerateInputError("fewer than two non-constant series");

    Eigen::MatrixXd corr(n, n);
    for (int i = 0; i < n; ++i) {
        corr(i, i) = 0.0;  // loops excluded by construction
        for (int j = i + 1; j < n; ++j) {
            double c = std::clamp(unit_rows[i].dot(unit_rows[j]), -1.0, 1.0);
            corr(i, j) = corr(j, i) = c;
        }
    }

    out.net.n = n;
    for (double tau : thresholds) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (std::abs(corr(i, j)) > tau) edges.emplace_back(i, j);
        out.net.layers.push_back(SparseLayer::from_edges(n, edges));
    }
    return out;
}

void write_edge_list(const std::string& path, const MultiLayerNetwork& net,
                     const std::vector<long>* node_ids) {
    net.validate();
    if (node_ids && static_cast<int>(node_ids->size()) != net.n)
        throw std::invalid_argument("node id table length mismatch");
    std::ofstream outf(path);
    if (!outf) throw std::runtime_error(path + ": cannot open for writing");
    auto original = [&](int v) -> long {
        return node_ids ? (*node_ids)[v] : static_cast<long>(v) + 1;
    };
    for (int l = 0; l < net.num_layers(); ++l)
        for (auto [u, v] : net.layers[l].edges())
            outf << (l + 1) << ' ' << original(u) << ' ' << original(v) << " 1\n";
    if (!outf) throw std::runtime_error(path + ": write failed");
}

} // namespace mlcd
