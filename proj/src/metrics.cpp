#include "mlcd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace mlcd {

namespace {

// K x K contingency counts; truth indexes rows, estimate indexes columns.
std::vector<std::vector<long>> contingency(const std::vector<int>& truth,
                                           const std::vector<int>& estimate, int K) {
    if (truth.size() != estimate.size())
        throw std::invalid_argument("label vectors differ in length");
    if (truth.empty()) throw std::invalid_argument("label vectors are empty");
    if (K < 1 || K > 8)
        throw std::invalid_argument("permutation metrics support 1 <= K <= 8");
    std::vector<std::vector<long>> m(K, std::vector<long>(K, 0));
    for (std::size_t i = 0; i < truth.size(); ++i) {
        int t = truth[i], e = estimate[i];
        if (t < 1 || t > K) throw std::invalid_argument("true label outside 1..K");
        if (e < 1 || e > K) throw std::invalid_argument("estimated label outside 1..K");
        ++m[t - 1][e - 1];
    }
    for (int k = 0; k < K; ++k) {
        long row = std::accumulate(m[k].begin(), m[k].end(), 0L);
        if (row == 0) throw std::invalid_argument("true community " + std::to_string(k + 1) + " is empty");
    }
    return m;
}

// Compact relabeling for the permutation-free metrics (any integer labels).
std::vector<int> compact(const std::vector<int>& labels, int& classes) {
    std::unordered_map<int, int> remap;
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, fresh] = remap.try_emplace(labels[i], static_cast<int>(remap.size()));
        (void)fresh;
        out[i] = it->second;
    }
    classes = static_cast<int>(remap.size());
    return out;
}

} // namespace

double clustering_error(const std::vector<int>& truth, const std::vector<int>& estimate, int K) {
    auto m = contingency(truth, estimate, K);
    std::vector<long> true_size(K, 0), est_size(K, 0);
    for (int t = 0; t < K; ++t)
        for (int e = 0; e < K; ++e) {
            true_size[t] += m[t][e];
            est_size[e] += m[t][e];
        }

    std::vector<int> perm(K);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (int t = 0; t < K; ++t) {
            int e = perm[t];
            // members of community t mapped elsewhere, plus outsiders mapped in
            double miss = static_cast<double>(true_size[t] + est_size[e] - 2 * m[t][e]);
            worst = std::max(worst, miss / static_cast<double>(true_size[t]));
        }
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

double hamming_error(const std::vector<int>& truth, const std::vector<int>& estimate, int K) {
    auto m = contingency(truth, estimate, K);
    std::vector<int> perm(K);
    std::iota(perm.begin(), perm.end(), 0);
    long best_matched = -1;
    do {
        long matched = 0;
        for (int t = 0; t < K; ++t) matched += m[t][perm[t]];
        best_matched = std::max(best_matched, matched);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(static_cast<long>(truth.size()) - best_matched) /
           static_cast<double>(truth.size());
}

double nmi(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("label vectors differ in length");
    if (a.empty()) throw std::invalid_argument("label vectors are empty");
    int ka = 0, kb = 0;
    auto ca = compact(a, ka);
    auto cb = compact(b, kb);
    const double n = static_cast<double>(a.size());

    std::vector<std::vector<long>> joint(ka, std::vector<long>(kb, 0));
    std::vector<long> ra(ka, 0), rb(kb, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++joint[ca[i]][cb[i]];
        ++ra[ca[i]];
        ++rb[cb[i]];
    }

    auto entropy = [n](const std::vector<long>& counts) {
        double h = 0.0;
        for (long c : counts)
            if (c > 0) {
                double p = c / n;
                h -= p * std::log(p);
            }
        return h;
    };
    double ha = entropy(ra), hb = entropy(rb);
    if (ha + hb == 0.0) return 1.0;  // both partitions trivial: identical

    double mi = 0.0;
    for (int i = 0; i < ka; ++i)
        for (int j = 0; j < kb; ++j)
            if (joint[i][j] > 0) {
                double pij = joint[i][j] / n;
                mi += pij * std::log(pij * n * n / (static_cast<double>(ra[i]) * rb[j]));
            }
    double value = mi / (0.5 * (ha + hb));
    return std::clamp(value, 0.0, 1.0);
}

double ari(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("label vectors differ in length");
    if (a.empty()) throw std::invalid_argument("label vectors are empty");
    int ka = 0, kb = 0;
    auto ca = compact(a, ka);
    auto cb = compact(b, kb);

    std::vector<std::vector<long>> joint(ka, std::vector<long>(kb, 0));
    std::vector<long> ra(ka, 0), rb(kb, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++joint[ca[i]][cb[i]];
        ++ra[ca[i]];
        ++rb[cb[i]];
    }
    auto choose2 = [](long x) { return 0.5 * static_cast<double>(x) * static_cast<double>(x - 1); };
    double sum_joint = 0.0, sum_a = 0.0, sum_b = 0.0;
    for (int i = 0; i < ka; ++i)
        for (int j = 0; j < kb; ++j) sum_joint += choose2(joint[i][j]);
    for (long x : ra) sum_a += choose2(x);
    for (long x : rb) sum_b += choose2(x);

    double pairs = choose2(static_cast<long>(a.size()));
    double expected = (pairs > 0.0) ? sum_a * sum_b / pairs : 0.0;
    double max_index = 0.5 * (sum_a + sum_b);
    double denom = max_index - expected;
    if (denom == 0.0) return 1.0;  // both partitions degenerate the same way
    return (sum_joint - expected) / denom;
}

double accuracy_rate(const std::vector<int>& estimated_ks, int true_k) {
    if (estimated_ks.empty()) throw std::invalid_argument("no trials");
    long hits = std::count(estimated_ks.begin(), estimated_ks.end(), true_k);
    return static_cast<double>(hits) / static_cast<double>(estimated_ks.size());
}

MetricsReport score_all(const std::vector<int>& truth, const std::vector<int>& estimate, int K) {
    MetricsReport r;
    r.clustering_error = clustering_error(truth, estimate, K);
    r.hamming = hamming_error(truth, estimate, K);
    r.nmi = nmi(truth, estimate);
    r.ari = ari(truth, estimate);
    return r;
}

} // namespace mlcd
