#pragma once

// Internals shared by the detector front-ends and the K sweep. Not installed.

#include <cstdint>
#include <vector>

#include "mlcd/aggregates.hpp"
#include "mlcd/detectors.hpp"
#include "mlcd/model.hpp"

namespace mlcd::detail {

bool is_full_sample(Algorithm a);
bool is_subsampled(Algorithm a);
bool is_ideal(Algorithm a);
bool normalizes_rows(Algorithm a);

AggregateMatrix build_full_aggregate(const MultiLayerNetwork& net, Algorithm a);
AggregateMatrix build_subsampled_aggregate(const MultiLayerNetwork& net, Algorithm a,
                                           const SubsamplePlan& plan);
AggregateMatrix build_ideal_aggregate(const MldcsbmParams& params, Algorithm a);

/// Relabel so label numbers appear in first-occurrence order (the first node
/// always carries label 1).
std::vector<int> canonicalize_labels(std::vector<int> labels);

/// Embedding + k-means on a prebuilt aggregate. Applies the zero-aggregate
/// and rank checks appropriate to the algorithm family. elapsed_s covers
/// this stage only; front-ends add their aggregate-construction time.
DetectionResult run_stage(const AggregateMatrix& agg, int k, Algorithm algo,
                          const DetectOptions& opts, std::uint64_t seed);

} // namespace mlcd::detail
