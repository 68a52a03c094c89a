#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mlcd/aggregates.hpp"
#include "mlcd/model.hpp"
#include "mlcd/network.hpp"
#include "mlcd/spectral.hpp"

namespace mlcd {

enum class Algorithm {
    nsoa,          // normalized eigenvectors of sum_l A_l
    ndsosa,        // normalized eigenvectors of sum_l (A_l^2 - D_l)
    nsosa,         // normalized eigenvectors of sum_l A_l^2 (bias kept)
    sum,           // raw eigenvectors of sum_l A_l
    sos_debias,    // raw eigenvectors of sum_l (A_l^2 - D_l)
    snsoa,         // subsampled variant of nsoa (left-singular vectors)
    sndsosa,       // subsampled variant of ndsosa
    ideal_nsoa,    // nsoa on the population aggregate sum_l Omega_l
    ideal_ndsosa,  // ndsosa on the population aggregate sum_l Omega_l^2
};

const char* algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

struct DetectOptions {
    KmeansOptions kmeans;
    SpectralOptions spectral;
};

struct DetectionResult {
    Algorithm algorithm;
    int k = 0;
    /// Labels 1..K for all n nodes, canonicalized so that label numbers
    /// appear in first-occurrence order (node 0 always gets label 1).
    std::vector<int> labels;
    /// Leading eigen- or singular values that produced the embedding.
    Eigen::VectorXd leading_values;
    /// 0-based rows whose embedding norm fell below 1e-12; such nodes end up
    /// in the cluster whose centroid lies nearest the origin.
    std::vector<int> degenerate_rows;
    double elapsed_s = 0.0;
};

/// Full-sample detection (nsoa, ndsosa, nsosa, sum, sos_debias). Throws
/// std::invalid_argument for K out of [1, n] or a subsampled/ideal algorithm,
/// DegenerateInputError when the aggregate is identically zero.
DetectionResult detect(const MultiLayerNetwork& net, int k, Algorithm algo,
                       const DetectOptions& opts, std::uint64_t seed);

/// Subsampled detection (snsoa, sndsosa). Labels still cover all n nodes.
/// Throws DegenerateInputError when the subsampled aggregate has numerical
/// rank below K.
DetectionResult detect_subsampled(const MultiLayerNetwork& net, int k, Algorithm algo,
                                  const SubsamplePlan& plan, const DetectOptions& opts,
                                  std::uint64_t seed);

/// Oracle detection on population aggregates (ideal_nsoa, ideal_ndsosa).
/// Throws DegenerateInputError when |lambda_K| <= 1e-8 * Frobenius norm.
DetectionResult ideal_detect(const MldcsbmParams& params, int k, Algorithm algo,
                             const DetectOptions& opts, std::uint64_t seed);

struct SampleSizes {
    int n_sample = 0;
    int L_sample = 0;
    int varpi = 0;  // scale factor applied to log^2(n); 0 when n < 500
};

/// Subsample sizes used in the scaling experiments: all layers below L = 10
/// and round(log^2 L) above; all nodes below n = 500 and round(varpi log^2 n)
/// above, with varpi = 5 up to n < 2000, 15 up to 20000, then
/// 15 * ceil(n / 20000). Natural logarithms. Callers clamp the results to
/// [K, n] and [1, L].
SampleSizes default_sample_sizes(int n, int L);

} // namespace mlcd
