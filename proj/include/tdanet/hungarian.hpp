#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace tdanet {

// Kuhn-Munkres assignment on a dense square cost matrix, potentials + shortest
// augmenting paths, O(n^3). Returns the minimum total cost; if row_to_col is
// given it receives the matched column of every row.
inline double solve_assignment(const std::vector<std::vector<double>>& cost,
                               std::vector<int>* row_to_col = nullptr) {
    const int n = static_cast<int>(cost.size());
    if (row_to_col) row_to_col->assign(static_cast<std::size_t>(n), -1);
    if (n == 0) return 0.0;
    for (const auto& row : cost)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("assignment cost matrix must be square");

    const double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<int> p(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> way(static_cast<std::size_t>(n) + 1, 0);

    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n) + 1, kInf);
        std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            const int i0 = p[static_cast<std::size_t>(j0)];
            int j1 = 0;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                const double cur = cost[static_cast<std::size_t>(i0) - 1][static_cast<std::size_t>(j) - 1] -
                                   u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0);
    }

    double total = 0.0;
    for (int j = 1; j <= n; ++j) {
        const int i = p[static_cast<std::size_t>(j)];
        if (i == 0) continue;
        if (row_to_col) (*row_to_col)[static_cast<std::size_t>(i) - 1] = j - 1;
        total += cost[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j) - 1];
    }
    return total;
}

}  // namespace tdanet
