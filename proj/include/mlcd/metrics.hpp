#pragma once

#include <vector>

namespace mlcd {

/// Worst-community misclassification rate, minimized over all K! alignments
/// of estimated labels to true labels: for each true community k the count of
/// its members placed elsewhere plus outsiders placed into it, divided by the
/// community size, then the maximum over k, then the minimum over alignments.
/// Range [0, 2]. Exhaustive search, so K <= 8 is enforced. Truth must use
/// every label 1..K; the estimate may use at most K distinct labels in 1..K.
double clustering_error(const std::vector<int>& truth, const std::vector<int>& estimate, int K);

/// min over label alignments of (# mismatched nodes) / n. Range [0, 1].
double hamming_error(const std::vector<int>& truth, const std::vector<int>& estimate, int K);

/// Mutual information over the joint label distribution divided by the
/// arithmetic mean of the two entropies. Two single-cluster partitions agree
/// perfectly and score 1.
double nmi(const std::vector<int>& a, const std::vector<int>& b);

/// Adjusted Rand index via pair counting; 1 when the denominator degenerates
/// (both partitions trivial in the same way).
double ari(const std::vector<int>& a, const std::vector<int>& b);

/// Fraction of trials whose estimated community count equals true_k exactly.
double accuracy_rate(const std::vector<int>& estimated_ks, int true_k);

struct MetricsReport {
    double clustering_error = 0.0;
    double hamming = 0.0;
    double nmi = 0.0;
    double ari = 0.0;
};

MetricsReport score_all(const std::vector<int>& truth, const std::vector<int>& estimate, int K);

} // namespace mlcd
