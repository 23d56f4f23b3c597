#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "tdanet/hungarian.hpp"
#include "tdanet/persistence.hpp"

namespace tdanet {

// Degree of the distance (p, or infinity for bottleneck) and the finite value
// substituted for infinite deaths before matching.
struct MetricConfig {
    double p = 2.0;
    double inf_cap = 2.0;
};

namespace detail {

struct PlanarPoint {
    double birth = 0.0;
    double death = 0.0;

    friend bool operator<(const PlanarPoint& a, const PlanarPoint& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    }
    friend bool operator==(const PlanarPoint& a, const PlanarPoint& b) {
        return a.birth == b.birth && a.death == b.death;
    }
};

inline double linf(const PlanarPoint& a, const PlanarPoint& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

// L-infinity distance from a point to its diagonal projection ((b+d)/2, (b+d)/2).
inline double diagonal_cost(const PlanarPoint& q) { return (q.death - q.birth) / 2.0; }

// Restricts a diagram to one dimension, replaces infinite deaths by inf_cap,
// and returns the points sorted. Rejects caps that would land a capped death
// below any birth or finite death.
inline std::vector<PlanarPoint> capped_points(const PersistenceDiagram& d, int dim,
                                              double inf_cap) {
    if (!std::isfinite(inf_cap))
        throw std::invalid_argument("inf_cap must be finite");
    std::vector<PlanarPoint> out;
    for (const PersistencePoint& p : d.points) {
        if (p.dim != dim) continue;
        if (!p.essential() && p.death > inf_cap)
            throw std::invalid_argument("inf_cap " + std::to_string(inf_cap) +
                                        " is smaller than a finite death " +
                                        std::to_string(p.death));
        if (p.birth > inf_cap)
            throw std::invalid_argument("inf_cap " + std::to_string(inf_cap) +
                                        " is smaller than a birth " + std::to_string(p.birth));
        out.push_back(PlanarPoint{p.birth, p.essential() ? inf_cap : p.death});
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Augmented ground-cost matrix: rows are D1's points then m diagonal slots,
// columns are D2's points then n diagonal slots. Entries are L-infinity
// costs, optionally raised to the p-th power.
inline std::vector<std::vector<double>> augmented_costs(const std::vector<PlanarPoint>& a,
                                                        const std::vector<PlanarPoint>& b,
                                                        double power) {
    const std::size_t n = a.size(), m = b.size(), total = n + m;
    std::vector<std::vector<double>> cost(total, std::vector<double>(total, 0.0));
    // power 0 marks "raw L-infinity" (used by the bottleneck search)
    auto raised = [power](double c) {
        return (power == 0.0 || power == 1.0) ? c : std::pow(c, power);
    };
    for (std::size_t i = 0; i < total; ++i) {
        for (std::size_t j = 0; j < total; ++j) {
            double c = 0.0;
            if (i < n && j < m) c = linf(a[i], b[j]);
            else if (i < n) c = diagonal_cost(a[i]);
            else if (j < m) c = diagonal_cost(b[j]);
            cost[i][j] = raised(c);
        }
    }
    return cost;
}

inline void validate_config(const MetricConfig& cfg) {
    if (std::isnan(cfg.p) || cfg.p <= 0.0)
        throw std::invalid_argument("degree p must be > 0");
}

// Bipartite matching feasibility (Kuhn's augmenting paths) restricted to
// edges with cost <= limit.
inline bool matchable_within(const std::vector<std::vector<double>>& cost, double limit) {
    const int n = static_cast<int>(cost.size());
    std::vector<int> match_of_col(static_cast<std::size_t>(n), -1);
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    std::function<bool(int)> augment = [&](int row) -> bool {
        for (int col = 0; col < n; ++col) {
            if (visited[static_cast<std::size_t>(col)]) continue;
            if (cost[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] > limit) continue;
            visited[static_cast<std::size_t>(col)] = 1;
            if (match_of_col[static_cast<std::size_t>(col)] < 0 ||
                augment(match_of_col[static_cast<std::size_t>(col)])) {
                match_of_col[static_cast<std::size_t>(col)] = row;
                return true;
            }
        }
        return false;
    };
    for (int row = 0; row < n; ++row) {
        std::fill(visited.begin(), visited.end(), 0);
        if (!augment(row)) return false;
    }
    return true;
}

}  // namespace detail

inline double bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2, int dim,
                         const MetricConfig& cfg);

// Degree-p Wasserstein distance between the dim-restricted diagrams with
// diagonal augmentation: costs are raised to the p-th power inside the
// assignment and the p-th root is taken once at the end. Arguments are
// ordered canonically first so the result is exactly symmetric.
inline double wasserstein(const PersistenceDiagram& d1, const PersistenceDiagram& d2, int dim,
                          const MetricConfig& cfg) {
    detail::validate_config(cfg);
    if (std::isinf(cfg.p)) return bottleneck(d1, d2, dim, cfg);
    std::vector<detail::PlanarPoint> a = detail::capped_points(d1, dim, cfg.inf_cap);
    std::vector<detail::PlanarPoint> b = detail::capped_points(d2, dim, cfg.inf_cap);
    if (b < a) std::swap(a, b);
    if (a.empty() && b.empty()) return 0.0;
    const auto cost = detail::augmented_costs(a, b, cfg.p);
    const double total = solve_assignment(cost);
    return std::pow(total, 1.0 / cfg.p);
}

// Bottleneck distance: the smallest achievable maximum single-pair cost,
// found by binary search over the candidate costs with a matching
// feasibility test at each candidate.
inline double bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2, int dim,
                         const MetricConfig& cfg) {
    std::vector<detail::PlanarPoint> a = detail::capped_points(d1, dim, cfg.inf_cap);
    std::vector<detail::PlanarPoint> b = detail::capped_points(d2, dim, cfg.inf_cap);
    if (b < a) std::swap(a, b);
    if (a.empty() && b.empty()) return 0.0;
    const auto cost = detail::augmented_costs(a, b, 0.0);

    std::vector<double> candidates{0.0};
    for (const auto& row : cost)
        for (double c : row) candidates.push_back(c);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::size_t lo = 0, hi = candidates.size() - 1;  // hi is always feasible
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (detail::matchable_within(cost, candidates[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return candidates[lo];
}

// Exhaustive oracle: exact minimum over every augmented bijection. Only for
// small diagrams (combined off-diagonal point count <= 8).
inline double wasserstein_bruteforce(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                                     int dim, const MetricConfig& cfg) {
    detail::validate_config(cfg);
    if (std::isinf(cfg.p))
        throw std::invalid_argument("bruteforce oracle requires a finite degree");
    std::vector<detail::PlanarPoint> a = detail::capped_points(d1, dim, cfg.inf_cap);
    std::vector<detail::PlanarPoint> b = detail::capped_points(d2, dim, cfg.inf_cap);
    if (a.size() + b.size() > 8)
        throw std::invalid_argument("bruteforce oracle limited to 8 combined points, got " +
                                    std::to_string(a.size() + b.size()));
    if (a.empty() && b.empty()) return 0.0;
    const auto cost = detail::augmented_costs(a, b, cfg.p);
    const std::size_t total = a.size() + b.size();
    std::vector<std::size_t> perm(total);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double sum = 0.0;
        for (std::size_t i = 0; i < total; ++i) sum += cost[i][perm[i]];
        best = std::min(best, sum);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::pow(best, 1.0 / cfg.p);
}

}  // namespace tdanet
