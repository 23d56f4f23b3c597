#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tdanet/weighted_graph.hpp"

namespace tdanet {

struct Simplex {
    std::vector<int> vertices;  // strictly increasing
    double filtration_value = 0.0;

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

inline std::string simplex_name(const Simplex& s) {
    std::string out = "{";
    for (std::size_t k = 0; k < s.vertices.size(); ++k) {
        if (k) out += ",";
        out += std::to_string(s.vertices[k]);
    }
    return out + "}";
}

// Filtration order: value, then dimension, then lexicographic vertex tuple.
// Ties between equal-value simplices are broken low dimension first so that
// faces always precede cofaces.
inline bool simplex_order_less(const Simplex& a, const Simplex& b) {
    if (a.filtration_value != b.filtration_value) return a.filtration_value < b.filtration_value;
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
}

struct FilteredComplex {
    int node_count = 0;
    int max_dim = 0;
    std::vector<Simplex> simplices;  // sorted by simplex_order_less

    std::size_t size() const { return simplices.size(); }
};

// Flag (clique) complex of g up to max_dim. Every vertex enters at 0, every
// edge at its weight, and every higher clique at the maximum weight over its
// edges. Cliques are enumerated by extending each k-clique with common
// neighbors of larger index, so each clique is produced exactly once.
inline FilteredComplex build_flag_complex(const WeightedGraph& g, int max_dim) {
    if (max_dim < 1)
        throw std::invalid_argument("max_dim must be >= 1, got " + std::to_string(max_dim));

    const int n = g.node_count;
    std::vector<char> has_edge(static_cast<std::size_t>(n) * n, 0);
    std::vector<double> weight(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<std::vector<int>> neighbors(n);
    for (const Edge& e : g.edges) {
        has_edge[static_cast<std::size_t>(e.i) * n + e.j] = 1;
        has_edge[static_cast<std::size_t>(e.j) * n + e.i] = 1;
        weight[static_cast<std::size_t>(e.i) * n + e.j] = e.weight;
        weight[static_cast<std::size_t>(e.j) * n + e.i] = e.weight;
        neighbors[e.i].push_back(e.j);
        neighbors[e.j].push_back(e.i);
    }
    for (auto& nb : neighbors) std::sort(nb.begin(), nb.end());

    std::vector<Simplex> simplices;
    for (int v = 0; v < n; ++v) simplices.push_back(Simplex{{v}, 0.0});

    // Depth-first expansion: clique + candidate set of higher-indexed common
    // neighbors.
    std::vector<int> clique;
    auto expand = [&](auto&& self, double value, const std::vector<int>& candidates) -> void {
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            const int u = candidates[c];
            double v = value;
            for (int x : clique) v = std::max(v, weight[static_cast<std::size_t>(x) * n + u]);
            clique.push_back(u);
            simplices.push_back(Simplex{clique, v});
            if (static_cast<int>(clique.size()) - 1 < max_dim) {
                std::vector<int> next;
                for (std::size_t c2 = c + 1; c2 < candidates.size(); ++c2)
                    if (has_edge[static_cast<std::size_t>(u) * n + candidates[c2]])
                        next.push_back(candidates[c2]);
                if (!next.empty()) self(self, v, next);
            }
            clique.pop_back();
        }
    };
    for (int v = 0; v < n; ++v) {
        std::vector<int> candidates;
        for (int u : neighbors[v])
            if (u > v) candidates.push_back(u);
        clique.assign(1, v);
        expand(expand, 0.0, candidates);
    }

    std::sort(simplices.begin(), simplices.end(), simplex_order_less);
    return FilteredComplex{n, max_dim, std::move(simplices)};
}

inline std::vector<std::size_t> simplex_count_by_dim(const FilteredComplex& k) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(k.max_dim) + 1, 0);
    for (const Simplex& s : k.simplices) counts[static_cast<std::size_t>(s.dim())] += 1;
    return counts;
}

}  // namespace tdanet
