#include "mlcd/detectors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "mlcd/errors.hpp"
#include "mlcd/rng.hpp"
#include "pipeline.hpp"

namespace mlcd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

} // namespace

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::nsoa: return "NSoA";
        case Algorithm::ndsosa: return "NDSoSA";
        case Algorithm::nsosa: return "NSoSA";
        case Algorithm::sum: return "Sum";
        case Algorithm::sos_debias: return "SoSDebias";
        case Algorithm::snsoa: return "SNSoA";
        case Algorithm::sndsosa: return "SNDSoSA";
        case Algorithm::ideal_nsoa: return "IdealNSoA";
        case Algorithm::ideal_ndsosa: return "IdealNDSoSA";
    }
    return "unknown";
}

Algorithm algorithm_from_name(const std::string& name) {
    std::string low;
    low.reserve(name.size());
    for (char c : name) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    static const std::unordered_map<std::string, Algorithm> table = {
        {"nsoa", Algorithm::nsoa},
        {"ndsosa", Algorithm::ndsosa},
        {"nsosa", Algorithm::nsosa},
        {"sum", Algorithm::sum},
        {"sosdebias", Algorithm::sos_debias},
        {"sos_debias", Algorithm::sos_debias},
        {"snsoa", Algorithm::snsoa},
        {"sndsosa", Algorithm::sndsosa},
        {"idealnsoa", Algorithm::ideal_nsoa},
        {"ideal_nsoa", Algorithm::ideal_nsoa},
        {"idealndsosa", Algorithm::ideal_ndsosa},
        {"ideal_ndsosa", Algorithm::ideal_ndsosa},
    };
    auto it = table.find(low);
    if (it == table.end()) throw std::invalid_argument("unknown algorithm: " + name);
    return it->second;
}

namespace detail {

bool is_full_sample(Algorithm a) {
    return a == Algorithm::nsoa || a == Algorithm::ndsosa || a == Algorithm::nsosa ||
           a == Algorithm::sum || a == Algorithm::sos_debias;
}

bool is_subsampled(Algorithm a) {
    return a == Algorithm::snsoa || a == Algorithm::sndsosa;
}

bool is_ideal(Algorithm a) {
    return a == Algorithm::ideal_nsoa || a == Algorithm::ideal_ndsosa;
}

bool normalizes_rows(Algorithm a) {
    return a != Algorithm::sum && a != Algorithm::sos_debias;
}

AggregateMatrix build_full_aggregate(const MultiLayerNetwork& net, Algorithm a) {
    switch (a) {
        case Algorithm::nsoa:
        case Algorithm::sum:
            return aggregate_sum(net);
        case Algorithm::ndsosa:
        case Algorithm::sos_debias:
            return debiased_sum_squares(net);
        case Algorithm::nsosa:
            return sum_of_squares(net);
        default:
            throw std::invalid_argument("not a full-sample algorithm");
    }
}

AggregateMatrix build_subsampled_aggregate(const MultiLayerNetwork& net, Algorithm a,
                                           const SubsamplePlan& plan) {
    switch (a) {
        case Algorithm::snsoa:
            return subsampled_sum(net, plan);
        case Algorithm::sndsosa:
            return subsampled_debiased_sum_squares(net, plan);
        default:
            throw std::invalid_argument("not a subsampled algorithm");
    }
}

AggregateMatrix build_ideal_aggregate(const MldcsbmParams& params, Algorithm a) {
    const int n = params.n();
    Eigen::MatrixXd agg = Eigen::MatrixXd::Zero(n, n);
    for (int l = 0; l < params.L(); ++l) {
        Eigen::MatrixXd omega = expected_adjacency(params, l);
        if (a == Algorithm::ideal_nsoa) agg += omega;
        else if (a == Algorithm::ideal_ndsosa) agg.noalias() += omega * omega;
        else throw std::invalid_argument("not an ideal algorithm");
    }
    AggregateKind kind = (a == Algorithm::ideal_nsoa) ? AggregateKind::sum_adjacency
                                                      : AggregateKind::debiased_sum_squares;
    return AggregateMatrix::from_dense(kind, std::move(agg));
}

std::vector<int> canonicalize_labels(std::vector<int> labels) {
    std::unordered_map<int, int> remap;
    for (int& v : labels) {
        auto [it, fresh] = remap.try_emplace(v, static_cast<int>(remap.size()) + 1);
        (void)fresh;
        v = it->second;
    }
    return labels;
}

DetectionResult run_stage(const AggregateMatrix& agg, int k, Algorithm algo,
                          const DetectOptions& opts, std::uint64_t seed) {
    auto t0 = Clock::now();
    DetectionResult out;
    out.algorithm = algo;
    out.k = k;

    double scale = agg.frobenius_norm();
    Embedding emb;
    if (is_subsampled(algo)) {
        emb = top_k_left_singular(agg, k, opts.spectral);
        if (emb.values[k - 1] <= 1e-8 * std::max(1.0, scale))
            throw DegenerateInputError(std::string("aggregate ") + aggregate_kind_name(agg.kind()) +
                                       " has rank below the requested K");
    } else {
        if (scale == 0.0)
            throw DegenerateInputError(std::string("aggregate ") + aggregate_kind_name(agg.kind()) +
                                       " is identically zero");
        emb = top_k_eigen(agg, k, opts.spectral);
        if (is_ideal(algo) && std::abs(emb.values[k - 1]) <= 1e-8 * scale)
            throw DegenerateInputError(std::string("aggregate ") + aggregate_kind_name(agg.kind()) +
                                       " has rank below the requested K");
    }

    Eigen::MatrixXd points;
    if (normalizes_rows(algo)) {
        auto [normalized, flagged] = row_normalize(emb.vectors);
        points = std::move(normalized);
        out.degenerate_rows = std::move(flagged);
    } else {
        points = emb.vectors;
    }

    KmeansResult km = kmeans(points, k, opts.kmeans,
                             derive_seed(seed, 0xde7ec7, static_cast<std::uint64_t>(k)));
    out.labels = canonicalize_labels(std::move(km.labels));
    out.leading_values = std::move(emb.values);
    out.elapsed_s = seconds_since(t0);
    return out;
}

} // namespace detail

DetectionResult detect(const MultiLayerNetwork& net, int k, Algorithm algo,
                       const DetectOptions& opts, std::uint64_t seed) {
    net.validate();
    if (k < 1 || k > net.n) throw std::invalid_argument("K must lie in [1, n]");
    if (!detail::is_full_sample(algo))
        throw std::invalid_argument(std::string(algorithm_name(algo)) +
                                    " is not a full-sample algorithm; use the matching entry point");
    auto t0 = Clock::now();
    AggregateMatrix agg = detail::build_full_aggregate(net, algo);
    DetectionResult out = detail::run_stage(agg, k, algo, opts, seed);
    out.elapsed_s = seconds_since(t0);
    return out;
}

DetectionResult detect_subsampled(const MultiLayerNetwork& net, int k, Algorithm algo,
                                  const SubsamplePlan& plan, const DetectOptions& opts,
                                  std::uint64_t seed) {
    net.validate();
    if (k < 1 || k > net.n) throw std::invalid_argument("K must lie in [1, n]");
    if (!detail::is_subsampled(algo))
        throw std::invalid_argument(std::string(algorithm_name(algo)) +
                                    " is not a subsampled algorithm");
    if (static_cast<int>(plan.node_set.size()) < k)
        throw std::invalid_argument("plan must sample at least K nodes");
    auto t0 = Clock::now();
    AggregateMatrix agg = detail::build_subsampled_aggregate(net, algo, plan);
    DetectionResult out = detail::run_stage(agg, k, algo, opts, seed);
    out.elapsed_s = seconds_since(t0);
    return out;
}

DetectionResult ideal_detect(const MldcsbmParams& params, int k, Algorithm algo,
                             const DetectOptions& opts, std::uint64_t seed) {
    if (k < 1 || k > params.n()) throw std::invalid_argument("K must lie in [1, n]");
    if (!detail::is_ideal(algo))
        throw std::invalid_argument(std::string(algorithm_name(algo)) +
                                    " is not an ideal algorithm");
    auto t0 = Clock::now();
    AggregateMatrix agg = detail::build_ideal_aggregate(params, algo);
    DetectionResult out = detail::run_stage(agg, k, algo, opts, seed);
    out.elapsed_s = seconds_since(t0);
    return out;
}

SampleSizes default_sample_sizes(int n, int L) {
    if (n < 1 || L < 1) throw std::invalid_argument("n and L must be positive");
    SampleSizes s;
    if (L < 10) {
        s.L_sample = L;
    } else {
        double lg = std::log(static_cast<double>(L));
        s.L_sample = static_cast<int>(std::lround(lg * lg));
        s.L_sample = std::clamp(s.L_sample, 1, L);
    }
    if (n < 500) {
        s.n_sample = n;
        s.varpi = 0;
    } else {
        if (n < 2000) s.varpi = 5;
        else if (n <= 20000) s.varpi = 15;
        else s.varpi = 15 * static_cast<int>((n + 19999) / 20000);
        double lg = std::log(static_cast<double>(n));
        s.n_sample = static_cast<int>(std::lround(s.varpi * lg * lg));
        s.n_sample = std::clamp(s.n_sample, 1, n);
    }
    return s;
}

} // namespace mlcd
