#include "mlcd/modularity.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "mlcd/errors.hpp"
#include "mlcd/rng.hpp"
#include "pipeline.hpp"

namespace mlcd {

double q_mnavrg(const MultiLayerNetwork& net, const std::vector<int>& labels) {
    net.validate();
    if (static_cast<int>(labels.size()) != net.n)
        throw std::invalid_argument("label vector length mismatch");
    int kmax = 0;
    for (int v : labels) {
        if (v < 1) throw std::invalid_argument("labels must be positive");
        kmax = std::max(kmax, v);
    }

    // Integer accumulation per layer keeps the single-community case exactly
    // zero: within-community adjacency mass 2m cancels (2m)^2 / (2m).
    double total = 0.0;
    std::vector<std::int64_t> volume(kmax, 0);
    for (const auto& layer : net.layers) {
        std::int64_t two_m = 0;
        std::fill(volume.begin(), volume.end(), 0);
        for (int i = 0; i < net.n; ++i) {
            std::int64_t d = layer.degree(i);
            two_m += d;
            volume[labels[i] - 1] += d;
        }
        if (two_m == 0) continue;  // empty layer contributes 0

        std::int64_t within = 0;
        for (int i = 0; i < net.n; ++i)
            for (int j : layer.neighbors(i))
                if (labels[i] == labels[j]) ++within;

        std::int64_t vol_sq = 0;
        for (std::int64_t v : volume) vol_sq += v * v;

        double m2 = static_cast<double>(two_m);
        total += (static_cast<double>(within) - static_cast<double>(vol_sq) / m2) / m2;
    }
    return total / static_cast<double>(net.num_layers());
}

KSweepResult estimate_k(const MultiLayerNetwork& net, Algorithm algo, int kmin, int kmax,
                        const DetectOptions& opts, std::uint64_t seed) {
    net.validate();
    if (detail::is_ideal(algo))
        throw std::invalid_argument("the K sweep needs an observed network, not an ideal algorithm");
    kmin = std::clamp(kmin, 1, net.n);
    kmax = std::clamp(kmax, 1, net.n);
    if (kmin > kmax) throw std::invalid_argument("kmin must not exceed kmax");

    AggregateMatrix agg;
    if (detail::is_subsampled(algo)) {
        SampleSizes sizes = default_sample_sizes(net.n, net.num_layers());
        int n_sample = std::clamp(std::max(sizes.n_sample, kmax), 1, net.n);
        SubsamplePlan plan = make_subsample(net.n, net.num_layers(), n_sample, sizes.L_sample,
                                            derive_seed(seed, 0x9a1));
        agg = detail::build_subsampled_aggregate(net, algo, plan);
    } else {
        agg = detail::build_full_aggregate(net, algo);
    }

    KSweepResult sweep;
    for (int k = kmin; k <= kmax; ++k) {
        KSweepEntry entry;
        entry.k = k;
        try {
            entry.result = detail::run_stage(agg, k, algo, opts, derive_seed(seed, 0x4b, k));
        } catch (const DegenerateInputError&) {
            // No usable signal at this K: fall back to one community so the
            // sweep stays total; its modularity is exactly zero.
            entry.result.algorithm = algo;
            entry.result.k = k;
            entry.result.labels.assign(net.n, 1);
            entry.result.leading_values = Eigen::VectorXd::Zero(k);
        }
        entry.q = q_mnavrg(net, entry.result.labels);
        sweep.per_k.push_back(std::move(entry));
    }

    sweep.best_k = sweep.per_k.front().k;
    sweep.best_q = sweep.per_k.front().q;
    for (const auto& entry : sweep.per_k) {
        if (entry.q > sweep.best_q) {
            sweep.best_q = entry.q;
            sweep.best_k = entry.k;
        }
    }
    return sweep;
}

} // namespace mlcd
