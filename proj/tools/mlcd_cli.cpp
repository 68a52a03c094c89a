// Command-line front end: generate synthetic multi-layer networks, run the
// detectors on edge lists, sweep K by modularity, reproduce the numbered
// simulation studies, and preprocess real data sets.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "mlcd/detectors.hpp"
#include "mlcd/errors.hpp"
#include "mlcd/experiments.hpp"
#include "mlcd/ingest.hpp"
#include "mlcd/model.hpp"
#include "mlcd/modularity.hpp"
#include "mlcd/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct LoadedInput {
    mlcd::MultiLayerNetwork net;
    std::vector<long> node_ids;  // original id per internal node
};

LoadedInput load_input(const std::string& path, const std::string& columns, bool lcc) {
    mlcd::LoadOptions opts;
    if (columns == "layer-last") opts.columns = mlcd::LoadOptions::Columns::u_v_layer;
    mlcd::LoadedNetwork loaded = mlcd::load_edge_list(path, opts);

    LoadedInput in;
    if (lcc) {
        mlcd::LccResult restricted = mlcd::largest_connected_component(loaded.net);
        in.net = std::move(restricted.net);
        in.node_ids.reserve(restricted.kept.size());
        for (int idx : restricted.kept) in.node_ids.push_back(loaded.node_ids[idx]);
    } else {
        in.net = std::move(loaded.net);
        in.node_ids = std::move(loaded.node_ids);
    }
    return in;
}

void write_labels_csv(const std::string& path, const std::vector<long>& node_ids,
                      const std::vector<int>& labels) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << "node_id,label\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
        out << node_ids[i] << ',' << labels[i] << '\n';
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << j.dump(2) << '\n';
}

std::vector<long> identity_ids(int n) {
    std::vector<long> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i + 1;
    return ids;
}

json values_to_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

std::string default_prefix(const std::string& input) {
    fs::path p(input);
    p.replace_extension("");
    return p.string();
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

struct GenerateArgs {
    int n = 0, k = 0, l = 0;
    double rho = 0.0;
    bool assortative = false;
    bool no_self_loops = false;
    std::uint64_t seed = 1;
    std::string out = "network";
};

int run_generate(const GenerateArgs& a) {
    mlcd::MldcsbmParams params =
        mlcd::simulation_params(a.n, a.k, a.l, a.rho, a.assortative, a.seed);
    mlcd::MultiLayerNetwork net =
        mlcd::sample_network(params, mlcd::derive_seed(a.seed, 0xda7a), !a.no_self_loops);

    mlcd::write_edge_list(a.out + ".edges", net);
    write_labels_csv(a.out + ".labels.csv", identity_ids(a.n), params.labels.z);

    json diag;
    diag["n"] = a.n;
    diag["K"] = a.k;
    diag["L"] = a.l;
    diag["rho"] = a.rho;
    diag["assortative"] = a.assortative;
    diag["self_loops"] = !a.no_self_loops;
    diag["seed"] = a.seed;
    diag["theta_min"] = params.theta.minCoeff();
    diag["theta_max"] = params.theta.maxCoeff();
    json bs = json::array();
    for (const auto& b : params.B) {
        json rows = json::array();
        for (int r = 0; r < b.rows(); ++r) {
            json row = json::array();
            for (int c = 0; c < b.cols(); ++c) row.push_back(b(r, c));
            rows.push_back(row);
        }
        bs.push_back(rows);
    }
    diag["B"] = bs;
    std::int64_t edges = 0;
    for (const auto& layer : net.layers) edges += layer.edge_count();
    diag["total_edges"] = edges;
    write_json(a.out + ".params.json", diag);

    std::cout << "wrote " << a.out << ".edges (" << a.n << " nodes, " << a.l
              << " layers, " << edges << " edges)\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// detect / estimate-k
// ---------------------------------------------------------------------------

struct DetectArgs {
    std::string input;
    std::string algo = "ndsosa";
    int k = 0;
    bool estimate = false;
    int kmin = 1, kmax = 10;
    std::uint64_t seed = 1;
    std::string columns = "layer-first";
    bool lcc = false;
    int n_sample = 0, l_sample = 0;  // 0 = schedule default
    std::string out;
};

mlcd::SubsamplePlan plan_for(const DetectArgs& a, const mlcd::MultiLayerNetwork& net,
                             int k_floor) {
    mlcd::SampleSizes sizes = mlcd::default_sample_sizes(net.n, net.num_layers());
    int n_sample = a.n_sample > 0 ? a.n_sample : sizes.n_sample;
    int l_sample = a.l_sample > 0 ? a.l_sample : sizes.L_sample;
    n_sample = std::clamp(std::max(n_sample, k_floor), 1, net.n);
    l_sample = std::clamp(l_sample, 1, net.num_layers());
    return mlcd::make_subsample(net.n, net.num_layers(), n_sample, l_sample,
                                mlcd::derive_seed(a.seed, 0x9a1));
}

int run_detect(const DetectArgs& a) {
    if (!a.estimate && a.k < 1)
        throw CLI::ValidationError("detect", "pass --k or --estimate-k");

    mlcd::Algorithm algo = mlcd::algorithm_from_name(a.algo);
    LoadedInput in = load_input(a.input, a.columns, a.lcc);
    std::string prefix = a.out.empty() ? default_prefix(a.input) : a.out;

    json diag;
    diag["input"] = a.input;
    diag["n"] = in.net.n;
    diag["layers"] = in.net.num_layers();
    diag["algorithm"] = mlcd::algorithm_name(algo);
    diag["seed"] = a.seed;

    if (a.estimate) {
        mlcd::KSweepResult sweep =
            mlcd::estimate_k(in.net, algo, a.kmin, a.kmax, {}, a.seed);

        std::ofstream table(prefix + ".ksweep.csv");
        if (!table) throw std::runtime_error(prefix + ".ksweep.csv: cannot open for writing");
        table << "k,q_mnavrg,selected\n";
        const mlcd::KSweepEntry* best = &sweep.per_k.front();
        for (const auto& entry : sweep.per_k) {
            table << entry.k << ',' << entry.q << ','
                  << (entry.k == sweep.best_k ? 1 : 0) << '\n';
            if (entry.k == sweep.best_k) best = &entry;
        }

        write_labels_csv(prefix + ".labels.csv", in.node_ids, best->result.labels);
        diag["best_k"] = sweep.best_k;
        diag["best_q"] = sweep.best_q;
        diag["leading_values"] = values_to_json(best->result.leading_values);
        diag["elapsed_s"] = best->result.elapsed_s;
        write_json(prefix + ".diagnostics.json", diag);

        std::cout << "estimated K = " << sweep.best_k << " (Q = " << sweep.best_q
                  << "), labels in " << prefix << ".labels.csv\n";
        return kExitOk;
    }

    mlcd::DetectionResult result;
    if (algo == mlcd::Algorithm::snsoa || algo == mlcd::Algorithm::sndsosa) {
        mlcd::SubsamplePlan plan = plan_for(a, in.net, a.k);
        diag["n_sample"] = static_cast<int>(plan.node_set.size());
        diag["l_sample"] = static_cast<int>(plan.layer_set.size());
        result = mlcd::detect_subsampled(in.net, a.k, algo, plan, {}, a.seed);
    } else {
        result = mlcd::detect(in.net, a.k, algo, {}, a.seed);
    }

    write_labels_csv(prefix + ".labels.csv", in.node_ids, result.labels);
    diag["k"] = a.k;
    diag["leading_values"] = values_to_json(result.leading_values);
    diag["elapsed_s"] = result.elapsed_s;
    diag["q_mnavrg"] = mlcd::q_mnavrg(in.net, result.labels);
    json flagged = json::array();
    for (int idx : result.degenerate_rows) flagged.push_back(in.node_ids[idx]);
    diag["degenerate_nodes"] = flagged;
    write_json(prefix + ".diagnostics.json", diag);

    std::cout << "labeled " << in.net.n << " nodes into " << a.k << " communities, labels in "
              << prefix << ".labels.csv\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// experiment
// ---------------------------------------------------------------------------

struct ExperimentArgs {
    int id = 1;
    std::string preset = "desk";
    std::string out = "results";
    int trials = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = -1;
    std::vector<int> n_values, k_values, l_values;
    std::vector<double> rho_values;
    std::vector<std::string> algos;
    bool estimate_on = false;
    bool estimate_off = false;
};

int run_experiment_cmd(const ExperimentArgs& a) {
    mlcd::ExperimentSpec spec = mlcd::make_experiment_spec(a.id, a.preset);
    if (a.trials > 0) spec.trials = a.trials;
    if (a.seed_set) spec.seed = a.seed;
    if (a.threads >= 0) spec.threads = a.threads;
    if (!a.n_values.empty()) spec.n_values = a.n_values;
    if (!a.k_values.empty()) spec.K_values = a.k_values;
    if (!a.l_values.empty()) spec.L_values = a.l_values;
    if (!a.rho_values.empty()) spec.rho_values = a.rho_values;
    if (!a.algos.empty()) {
        spec.algorithms.clear();
        for (const auto& name : a.algos)
            spec.algorithms.push_back(mlcd::algorithm_from_name(name));
    }
    if (a.estimate_on) spec.with_estimate_k = true;
    if (a.estimate_off) spec.with_estimate_k = false;

    mlcd::ExperimentOutcome outcome = mlcd::run_experiment(spec, a.out);
    std::cout << "study " << a.id << " (" << a.preset << "): " << outcome.rows << " rows, "
              << outcome.failures << " failures\n"
              << "  " << outcome.rows_path << '\n'
              << "  " << outcome.summary_path << '\n'
              << "  " << outcome.plot_path << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// ingest
// ---------------------------------------------------------------------------

struct IngestArgs {
    std::string input;
    std::string panel;
    std::vector<double> thresholds;
    std::string columns = "layer-first";
    bool lcc = false;
    std::string out;
};

int run_ingest(const IngestArgs& a) {
    if (a.input.empty() == a.panel.empty())
        throw CLI::ValidationError("ingest", "pass exactly one of --input or --panel");

    mlcd::MultiLayerNetwork net;
    std::vector<std::string> original_ids;

    if (!a.input.empty()) {
        LoadedInput in = load_input(a.input, a.columns, a.lcc);
        net = std::move(in.net);
        for (long id : in.node_ids) original_ids.push_back(std::to_string(id));
    } else {
        if (a.thresholds.empty())
            throw CLI::ValidationError("ingest", "--panel needs --thresholds");
        mlcd::ReturnsPanel panel = mlcd::load_returns_panel(a.panel);
        mlcd::ThresholdResult built = mlcd::build_threshold_multilayer(panel, a.thresholds);
        if (a.lcc) {
            mlcd::LccResult restricted = mlcd::largest_connected_component(built.net);
            net = std::move(restricted.net);
            for (int idx : restricted.kept) original_ids.push_back(built.kept_assets[idx]);
        } else {
            net = std::move(built.net);
            original_ids = built.kept_assets;
        }
        for (const auto& dropped : built.dropped_assets)
            std::cerr << "dropped constant series: " << dropped << '\n';
    }

    std::string prefix = a.out.empty()
                             ? default_prefix(a.input.empty() ? a.panel : a.input) + ".canonical"
                             : a.out;

    mlcd::write_edge_list(prefix + ".edges", net);
    std::ofstream map(prefix + ".nodemap.csv");
    if (!map) throw std::runtime_error(prefix + ".nodemap.csv: cannot open for writing");
    map << "internal_id,original_id\n";
    for (std::size_t i = 0; i < original_ids.size(); ++i)
        map << (i + 1) << ',' << original_ids[i] << '\n';

    std::int64_t edges = 0;
    for (const auto& layer : net.layers) edges += layer.edge_count();
    double nu = net.n >= 2 ? mlcd::nu_sparsity(net) : 0.0;

    json stats;
    stats["n"] = net.n;
    stats["layers"] = net.num_layers();
    stats["total_edges"] = edges;
    stats["nu"] = nu;
    stats["lcc"] = a.lcc;
    write_json(prefix + ".stats.json", stats);

    std::cout << "n=" << net.n << " layers=" << net.num_layers() << " edges=" << edges
              << " nu=" << nu << '\n'
              << "canonical edge list in " << prefix << ".edges\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral community detection for multi-layer networks"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a key = value file");
    app.set_version_flag("--version", "mlcd 1.0.0");

    GenerateArgs gen;
    CLI::App* gen_cmd = app.add_subcommand("generate", "sample a synthetic network");
    gen_cmd->add_option("--n", gen.n, "number of nodes")->required();
    gen_cmd->add_option("--k", gen.k, "number of communities")->required();
    gen_cmd->add_option("--l", gen.l, "number of layers")->required();
    gen_cmd->add_option("--rho", gen.rho, "sparsity parameter in (0, 1]")->required();
    gen_cmd->add_flag("--assortative", gen.assortative, "unit diagonal mixing matrices");
    gen_cmd->add_flag("--no-self-loops", gen.no_self_loops, "suppress diagonal edges");
    gen_cmd->add_option("--seed", gen.seed, "random seed");
    gen_cmd->add_option("--out", gen.out, "output file prefix");

    DetectArgs det;
    CLI::App* det_cmd = app.add_subcommand("detect", "cluster the nodes of an edge list");
    det_cmd->add_option("--input", det.input, "edge list file")->required();
    det_cmd->add_option("--algo", det.algo,
                        "nsoa | ndsosa | nsosa | sum | sos_debias | snsoa | sndsosa");
    det_cmd->add_option("--k", det.k, "number of communities");
    det_cmd->add_flag("--estimate-k", det.estimate, "choose K by the modularity sweep");
    det_cmd->add_option("--kmin", det.kmin, "sweep lower bound");
    det_cmd->add_option("--kmax", det.kmax, "sweep upper bound");
    det_cmd->add_option("--seed", det.seed, "random seed");
    det_cmd->add_option("--columns", det.columns, "layer-first | layer-last")
        ->check(CLI::IsMember({"layer-first", "layer-last"}));
    det_cmd->add_flag("--lcc", det.lcc, "restrict to the largest connected component");
    det_cmd->add_option("--n-sample", det.n_sample, "sampled node count (subsampled detectors)");
    det_cmd->add_option("--l-sample", det.l_sample, "sampled layer count (subsampled detectors)");
    det_cmd->add_option("--out", det.out, "output file prefix (default: input stem)");

    DetectArgs est;
    est.estimate = true;
    CLI::App* est_cmd = app.add_subcommand("estimate-k", "pick K by the modularity sweep");
    est_cmd->add_option("--input", est.input, "edge list file")->required();
    est_cmd->add_option("--algo", est.algo,
                        "nsoa | ndsosa | nsosa | sum | sos_debias | snsoa | sndsosa");
    est_cmd->add_option("--kmin", est.kmin, "sweep lower bound");
    est_cmd->add_option("--kmax", est.kmax, "sweep upper bound");
    est_cmd->add_option("--seed", est.seed, "random seed");
    est_cmd->add_option("--columns", est.columns, "layer-first | layer-last")
        ->check(CLI::IsMember({"layer-first", "layer-last"}));
    est_cmd->add_flag("--lcc", est.lcc, "restrict to the largest connected component");
    est_cmd->add_option("--out", est.out, "output file prefix (default: input stem)");

    ExperimentArgs exp;
    CLI::App* exp_cmd = app.add_subcommand("experiment", "run a numbered simulation study");
    exp_cmd->add_option("--id", exp.id, "study number 1..6")->required();
    exp_cmd->add_option("--preset", exp.preset, "desk | paper")
        ->check(CLI::IsMember({"desk", "paper"}));
    exp_cmd->add_option("--out", exp.out, "output directory");
    exp_cmd->add_option("--trials", exp.trials, "trials per grid point");
    exp_cmd->add_option("--seed", exp.seed, "master seed")
        ->each([&exp](const std::string&) { exp.seed_set = true; });
    exp_cmd->add_option("--threads", exp.threads, "worker threads (0 = all cores)");
    exp_cmd->add_option("--n", exp.n_values, "override node counts");
    exp_cmd->add_option("--k-values", exp.k_values, "override community counts");
    exp_cmd->add_option("--l", exp.l_values, "override layer counts");
    exp_cmd->add_option("--rho", exp.rho_values, "override sparsity values");
    exp_cmd->add_option("--algos", exp.algos, "override the algorithm list");
    CLI::Option* est_on =
        exp_cmd->add_flag("--estimate-k", exp.estimate_on, "force the per-trial K sweep on");
    exp_cmd->add_flag("--no-estimate-k", exp.estimate_off, "force the per-trial K sweep off")
        ->excludes(est_on);

    IngestArgs ing;
    CLI::App* ing_cmd = app.add_subcommand("ingest", "canonicalize a data set");
    ing_cmd->add_option("--input", ing.input, "edge list file");
    ing_cmd->add_option("--panel", ing.panel, "returns panel CSV (asset_id,t1,...)");
    ing_cmd->add_option("--thresholds", ing.thresholds, "correlation thresholds in [0, 1)");
    ing_cmd->add_option("--columns", ing.columns, "layer-first | layer-last")
        ->check(CLI::IsMember({"layer-first", "layer-last"}));
    ing_cmd->add_flag("--lcc", ing.lcc, "restrict to the largest connected component");
    ing_cmd->add_option("--out", ing.out, "output file prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen_cmd->parsed()) return run_generate(gen);
        if (det_cmd->parsed()) return run_detect(det);
        if (est_cmd->parsed()) return run_detect(est);
        if (exp_cmd->parsed()) return run_experiment_cmd(exp);
        if (ing_cmd->parsed()) return run_ingest(ing);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const mlcd::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const mlcd::DegenerateInputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}
