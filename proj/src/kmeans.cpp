#include "mlcd/spectral.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "mlcd/rng.hpp"

namespace mlcd {

namespace {

// D^2-weighted seeding. The inverse-CDF walk keeps the draw deterministic
// across standard libraries.
Eigen::MatrixXd kmeanspp_init(const Eigen::MatrixXd& pts, int k, std::mt19937_64& rng) {
    const int n = static_cast<int>(pts.rows());
    Eigen::MatrixXd centers(k, pts.cols());
    std::uniform_int_distribution<int> uniform_pick(0, n - 1);
    centers.row(0) = pts.row(uniform_pick(rng));
    Eigen::VectorXd d2 = (pts.rowwise() - centers.row(0)).rowwise().squaredNorm();
    for (int c = 1; c < k; ++c) {
        double total = d2.sum();
        int pick;
        if (total <= 0.0) {
            pick = uniform_pick(rng);  // all points already covered exactly
        } else {
            std::uniform_real_distribution<double> u(0.0, total);
            double target = u(rng), acc = 0.0;
            pick = n - 1;
            for (int i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= target) { pick = i; break; }
            }
        }
        centers.row(c) = pts.row(pick);
        d2 = d2.cwiseMin((pts.rowwise() - centers.row(c)).rowwise().squaredNorm());
    }
    return centers;
}

struct LloydRun {
    std::vector<int> assign;  // 0-based cluster per point
    Eigen::MatrixXd centers;
    double cost = 0.0;
    std::vector<double> trace;
};

LloydRun lloyd(const Eigen::MatrixXd& pts, int k, int iterations, Eigen::MatrixXd centers) {
    const int n = static_cast<int>(pts.rows());
    LloydRun run;
    run.assign.assign(n, -1);
    std::vector<int> size(k, 0);
    std::vector<double> point_d2(n, 0.0);

    auto assign_pass = [&]() {
        bool changed = false;
        std::fill(size.begin(), size.end(), 0);
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_d = (pts.row(i) - centers.row(0)).squaredNorm();
            for (int c = 1; c < k; ++c) {
                double d = (pts.row(i) - centers.row(c)).squaredNorm();
                if (d < best_d) { best_d = d; best = c; }
            }
            if (best != run.assign[i]) { run.assign[i] = best; changed = true; }
            point_d2[i] = best_d;
            ++size[best];
        }
        return changed;
    };

    // An empty cluster takes over the point farthest from its current
    // center (lowest index on ties); this never increases the objective.
    auto fix_empty = [&]() {
        bool fixed_any = false;
        for (int c = 0; c < k; ++c) {
            if (size[c] > 0) continue;
            int far = -1;
            double far_d = -1.0;
            for (int i = 0; i < n; ++i) {
                if (size[run.assign[i]] <= 1) continue;
                if (point_d2[i] > far_d) { far_d = point_d2[i]; far = i; }
            }
            if (far < 0 || far_d <= 0.0) break;  // nothing left to split
            --size[run.assign[far]];
            run.assign[far] = c;
            size[c] = 1;
            centers.row(c) = pts.row(far);
            point_d2[far] = 0.0;
            fixed_any = true;
        }
        return fixed_any;
    };

    for (int iter = 0; iter < iterations; ++iter) {
        bool changed = assign_pass();
        bool fixed = fix_empty();
        for (int c = 0; c < k; ++c)
            if (size[c] > 0) centers.row(c).setZero();
        for (int i = 0; i < n; ++i) centers.row(run.assign[i]) += pts.row(i);
        for (int c = 0; c < k; ++c)
            if (size[c] > 0) centers.row(c) /= static_cast<double>(size[c]);

        double cost = 0.0;
        for (int i = 0; i < n; ++i)
            cost += (pts.row(i) - centers.row(run.assign[i])).squaredNorm();
        run.trace.push_back(cost);
        run.cost = cost;
        if (!changed && !fixed) break;
    }
    run.centers = std::move(centers);
    return run;
}

} // namespace

KmeansResult kmeans(const Eigen::MatrixXd& points, int k, const KmeansOptions& opts,
                    std::uint64_t seed) {
    const int n = static_cast<int>(points.rows());
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (n < k) throw std::invalid_argument("need at least k points");
    if (opts.iterations < 1 || opts.restarts < 1)
        throw std::invalid_argument("iterations and restarts must be positive");

    KmeansResult best;
    best.cost = std::numeric_limits<double>::infinity();
    for (int r = 0; r < opts.restarts; ++r) {
        auto rng = make_rng(derive_seed(seed, 0x137, static_cast<std::uint64_t>(r)));
        LloydRun run = lloyd(points, k, opts.iterations, kmeanspp_init(points, k, rng));
        if (run.cost < best.cost) {
            best.cost = run.cost;
            best.best_restart = r;
            best.centroids = std::move(run.centers);
            best.cost_trace = std::move(run.trace);
            best.labels.resize(n);
            for (int i = 0; i < n; ++i) best.labels[i] = run.assign[i] + 1;
        }
    }
    return best;
}

} // namespace mlcd
