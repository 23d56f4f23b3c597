#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace tdanet {

struct Edge {
    int i = 0;
    int j = 0;
    double weight = 0.0;
};

// Simple undirected graph with nonnegative finite edge weights. Edges are
// normalized to i < j and kept sorted by (i, j). Instances are treated as
// immutable once built; every operation below returns a new graph.
struct WeightedGraph {
    int node_count = 0;
    std::vector<std::string> node_labels;
    std::vector<Edge> edges;

    double max_weight() const {
        double m = 0.0;
        for (const Edge& e : edges) m = std::max(m, e.weight);
        return m;
    }
};

// Direction of the threshold filtration. A super-level filtration over weight
// w is realized as a sub-level filtration over the dual weight theta_max - w.
class FiltrationDirection {
public:
    static FiltrationDirection sub_level() { return FiltrationDirection(false, 0.0); }

    static FiltrationDirection super_level(double theta_max) {
        if (!(theta_max > 0.0) || !std::isfinite(theta_max))
            throw std::invalid_argument("super-level theta_max must be a positive finite value");
        return FiltrationDirection(true, theta_max);
    }

    bool is_super_level() const { return super_; }
    double theta_max() const { return theta_max_; }

private:
    FiltrationDirection(bool super, double theta_max) : super_(super), theta_max_(theta_max) {}
    bool super_;
    double theta_max_;
};

struct PointCloud {
    std::vector<std::vector<double>> points;
};

inline std::vector<std::string> default_labels(int node_count, const char* prefix = "v") {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(node_count));
    for (int v = 0; v < node_count; ++v) labels.push_back(prefix + std::to_string(v));
    return labels;
}

inline WeightedGraph make_graph(int node_count, std::vector<std::string> labels,
                                std::vector<Edge> edges) {
    if (node_count < 1) throw std::invalid_argument("graph must have at least one node");
    if (static_cast<int>(labels.size()) != node_count)
        throw std::invalid_argument("label count " + std::to_string(labels.size()) +
                                    " does not match node count " + std::to_string(node_count));
    for (Edge& e : edges) {
        if (e.i == e.j)
            throw std::invalid_argument("self-loop at node " + std::to_string(e.i));
        if (e.i < 0 || e.j < 0 || e.i >= node_count || e.j >= node_count)
            throw std::invalid_argument("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                                        ") has a node index outside [0," +
                                        std::to_string(node_count) + ")");
        if (!std::isfinite(e.weight) || e.weight < 0.0)
            throw std::invalid_argument("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                                        ") has a weight that is not finite and nonnegative");
        if (e.i > e.j) std::swap(e.i, e.j);
    }
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
    for (std::size_t k = 1; k < edges.size(); ++k) {
        if (edges[k - 1].i == edges[k].i && edges[k - 1].j == edges[k].j)
            throw std::invalid_argument("duplicate edge (" + std::to_string(edges[k].i) + "," +
                                        std::to_string(edges[k].j) + ")");
    }
    return WeightedGraph{node_count, std::move(labels), std::move(edges)};
}

inline WeightedGraph make_graph(int node_count, std::vector<Edge> edges) {
    return make_graph(node_count, default_labels(node_count), std::move(edges));
}

// Builds the complete graph whose edge weights come from a symmetric distance
// matrix. The matrix must be symmetric within 1e-9 (absolute) with a zero
// diagonal; after the check it is symmetrized by averaging so downstream
// arithmetic sees exactly m[i][j] == m[j][i].
inline WeightedGraph from_distance_matrix(const std::vector<std::vector<double>>& m,
                                          std::vector<std::string> labels) {
    constexpr double kSymTol = 1e-9;
    const int n = static_cast<int>(labels.size());
    if (n < 1) throw std::invalid_argument("distance matrix needs at least one label");
    if (static_cast<int>(m.size()) != n)
        throw std::invalid_argument("matrix has " + std::to_string(m.size()) + " rows but " +
                                    std::to_string(n) + " labels");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(m[i].size()) != n)
            throw std::invalid_argument("matrix row " + std::to_string(i) + " has " +
                                        std::to_string(m[i].size()) + " entries, expected " +
                                        std::to_string(n));
        for (int j = 0; j < n; ++j) {
            if (!std::isfinite(m[i][j]))
                throw std::invalid_argument("matrix entry (" + std::to_string(i) + "," +
                                            std::to_string(j) + ") is not finite");
            if (m[i][j] < 0.0)
                throw std::invalid_argument("matrix entry (" + std::to_string(i) + "," +
                                            std::to_string(j) + ") is negative");
        }
        if (std::abs(m[i][i]) > kSymTol)
            throw std::invalid_argument("matrix diagonal entry (" + std::to_string(i) + "," +
                                        std::to_string(i) + ") is not zero");
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(m[i][j] - m[j][i]) > kSymTol)
                throw std::invalid_argument("matrix is asymmetric at (" + std::to_string(i) + "," +
                                            std::to_string(j) + "): " + std::to_string(m[i][j]) +
                                            " vs " + std::to_string(m[j][i]));
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            edges.push_back(Edge{i, j, 0.5 * (m[i][j] + m[j][i])});
    return make_graph(n, std::move(labels), std::move(edges));
}

inline void validate_point_cloud(const PointCloud& pc) {
    if (pc.points.empty()) throw std::invalid_argument("point cloud is empty");
    const std::size_t dim = pc.points.front().size();
    for (std::size_t k = 0; k < pc.points.size(); ++k) {
        if (pc.points[k].size() != dim)
            throw std::invalid_argument("point " + std::to_string(k) + " has dimension " +
                                        std::to_string(pc.points[k].size()) + ", expected " +
                                        std::to_string(dim));
        for (double c : pc.points[k])
            if (!std::isfinite(c))
                throw std::invalid_argument("point " + std::to_string(k) +
                                            " has a non-finite coordinate");
    }
}

// Complete graph on the points, edge weight = Euclidean distance. Duplicate
// points yield weight-0 edges and are allowed.
inline WeightedGraph from_point_cloud(const PointCloud& pc) {
    validate_point_cloud(pc);
    const int n = static_cast<int>(pc.points.size());
    if (n < 2) throw std::invalid_argument("point cloud needs at least 2 points");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < pc.points[i].size(); ++c) {
                const double d = pc.points[i][c] - pc.points[j][c];
                s += d * d;
            }
            edges.push_back(Edge{i, j, std::sqrt(s)});
        }
    }
    return make_graph(n, default_labels(n, "p"), std::move(edges));
}

// Sub-level leaves the graph untouched; super-level replaces every weight w
// by theta_max - w (theta_max must dominate every weight).
inline WeightedGraph apply_direction(const WeightedGraph& g, const FiltrationDirection& dir) {
    if (!dir.is_super_level()) return g;
    WeightedGraph out = g;
    for (Edge& e : out.edges) {
        if (e.weight > dir.theta_max())
            throw std::invalid_argument("super-level theta_max " + std::to_string(dir.theta_max()) +
                                        " is smaller than edge (" + std::to_string(e.i) + "," +
                                        std::to_string(e.j) + ") weight " +
                                        std::to_string(e.weight));
        e.weight = dir.theta_max() - e.weight;
    }
    return out;
}

// Keeps exactly the edges with weight <= theta (closed sub-level sets).
inline WeightedGraph threshold_subgraph(const WeightedGraph& g, double theta) {
    if (!(theta >= 0.0)) throw std::invalid_argument("threshold must be >= 0");
    WeightedGraph out;
    out.node_count = g.node_count;
    out.node_labels = g.node_labels;
    for (const Edge& e : g.edges)
        if (e.weight <= theta) out.edges.push_back(e);
    return out;
}

}  // namespace tdanet
