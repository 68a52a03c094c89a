#pragma once

#include <cstdint>
#include <vector>

#include "mlcd/detectors.hpp"
#include "mlcd/network.hpp"

namespace mlcd {

/// Multi-normalized average modularity: the per-layer Newman-Girvan
/// modularity of the shared partition, averaged over all L layers. A layer
/// with no edges contributes 0 but still counts in the average. Putting every
/// node in one community yields exactly 0.
double q_mnavrg(const MultiLayerNetwork& net, const std::vector<int>& labels);

struct KSweepEntry {
    int k = 0;
    double q = 0.0;
    DetectionResult result;
};

struct KSweepResult {
    int best_k = 0;
    double best_q = 0.0;
    std::vector<KSweepEntry> per_k;  // ascending in k
};

/// Run the detector for each K in [kmin, kmax] (clamped to [1, n]), score
/// each partition with q_mnavrg, and pick the maximizer; ties go to the
/// smallest K. The aggregate is built once and reused across the sweep;
/// subsampled algorithms draw one default-size plan and reuse it. A K whose
/// detection degenerates (for example an all-zero aggregate) contributes a
/// single-community fallback entry instead of aborting the sweep.
KSweepResult estimate_k(const MultiLayerNetwork& net, Algorithm algo, int kmin, int kmax,
                        const DetectOptions& opts, std::uint64_t seed);

} // namespace mlcd
