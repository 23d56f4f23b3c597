#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "tdanet/flag_complex.hpp"

namespace tdanet {

constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

struct PersistencePoint {
    int dim = 0;
    double birth = 0.0;
    double death = kInfiniteDeath;

    bool essential() const { return std::isinf(death); }
    double persistence() const { return death - birth; }

    friend bool operator==(const PersistencePoint& a, const PersistencePoint& b) {
        return a.dim == b.dim && a.birth == b.birth && a.death == b.death;
    }
    friend bool operator<(const PersistencePoint& a, const PersistencePoint& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    }
};

// Multiset of (birth, death) points, kept as a sorted list; equal points
// repeat to encode multiplicity. The diagonal is implicit and never stored.
struct PersistenceDiagram {
    int max_homology_dim = 0;  // dims 0..max_homology_dim are tracked
    std::vector<PersistencePoint> points;

    std::vector<PersistencePoint> in_dim(int dim) const {
        std::vector<PersistencePoint> out;
        for (const PersistencePoint& p : points)
            if (p.dim == dim) out.push_back(p);
        return out;
    }
};

struct BettiProfile {
    double theta = 0.0;
    std::vector<int> betti;
};

namespace detail {

// Z2 column as packed 64-bit words; the pivot is the highest set bit.
class BitColumn {
public:
    BitColumn() = default;
    explicit BitColumn(std::size_t bits) : words_((bits + 63) / 64, 0) {}

    void flip(std::size_t i) { words_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }

    void xor_with(const BitColumn& other) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    }

    bool any() const {
        for (std::uint64_t w : words_)
            if (w) return true;
        return false;
    }

    // Highest set bit; caller guarantees the column is nonzero.
    std::size_t low() const {
        for (std::size_t w = words_.size(); w-- > 0;)
            if (words_[w]) return (w << 6) + (63 - static_cast<std::size_t>(std::countl_zero(words_[w])));
        return static_cast<std::size_t>(-1);
    }

private:
    std::vector<std::uint64_t> words_;
};

struct VertexTupleHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

using SimplexIndex = std::unordered_map<std::vector<int>, std::size_t, VertexTupleHash>;

inline SimplexIndex index_simplices(const FilteredComplex& k) {
    SimplexIndex index;
    index.reserve(k.size() * 2);
    for (std::size_t g = 0; g < k.size(); ++g) index.emplace(k.simplices[g].vertices, g);
    return index;
}

// Global positions of the codim-1 faces of simplex g. Throws if a face is
// absent or carries a larger filtration value.
inline std::vector<std::size_t> boundary_of(const FilteredComplex& k, const SimplexIndex& index,
                                            std::size_t g) {
    const Simplex& s = k.simplices[g];
    std::vector<std::size_t> faces;
    faces.reserve(s.vertices.size());
    std::vector<int> face(s.vertices.size() - 1);
    for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
        std::size_t w = 0;
        for (std::size_t v = 0; v < s.vertices.size(); ++v)
            if (v != drop) face[w++] = s.vertices[v];
        auto it = index.find(face);
        if (it == index.end())
            throw std::invalid_argument("filtered complex is missing face " +
                                        simplex_name(Simplex{face, 0.0}) + " of simplex " +
                                        simplex_name(s));
        if (k.simplices[it->second].filtration_value > s.filtration_value)
            throw std::invalid_argument("face " + simplex_name(k.simplices[it->second]) +
                                        " of simplex " + simplex_name(s) +
                                        " has a larger filtration value");
        faces.push_back(it->second);
    }
    return faces;
}

// Rank over Z2 by column elimination on the highest set bit.
inline int z2_rank(std::vector<BitColumn>& cols, std::size_t rows) {
    std::vector<int> pivot_owner(rows, -1);
    int rank = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        while (cols[c].any()) {
            const std::size_t lo = cols[c].low();
            if (pivot_owner[lo] < 0) {
                pivot_owner[lo] = static_cast<int>(c);
                ++rank;
                break;
            }
            cols[c].xor_with(cols[static_cast<std::size_t>(pivot_owner[lo])]);
        }
    }
    return rank;
}

}  // namespace detail

// Structural validation of the FilteredComplex invariants: well-formed vertex
// tuples, total order, closure under faces, face-value monotonicity.
inline void validate_complex(const FilteredComplex& k) {
    if (k.max_dim < 1) throw std::invalid_argument("complex max_dim must be >= 1");
    for (std::size_t g = 0; g < k.size(); ++g) {
        const Simplex& s = k.simplices[g];
        if (s.vertices.empty())
            throw std::invalid_argument("simplex at position " + std::to_string(g) + " is empty");
        if (s.dim() > k.max_dim)
            throw std::invalid_argument("simplex " + simplex_name(s) + " exceeds max_dim " +
                                        std::to_string(k.max_dim));
        for (std::size_t v = 0; v < s.vertices.size(); ++v) {
            if (s.vertices[v] < 0 || s.vertices[v] >= k.node_count)
                throw std::invalid_argument("simplex " + simplex_name(s) +
                                            " has a vertex outside [0," +
                                            std::to_string(k.node_count) + ")");
            if (v > 0 && s.vertices[v - 1] >= s.vertices[v])
                throw std::invalid_argument("simplex " + simplex_name(s) +
                                            " vertices are not strictly increasing");
        }
        if (!std::isfinite(s.filtration_value) || s.filtration_value < 0.0)
            throw std::invalid_argument("simplex " + simplex_name(s) +
                                        " has a filtration value that is not finite and >= 0");
        if (g > 0 && !simplex_order_less(k.simplices[g - 1], s))
            throw std::invalid_argument("simplices out of filtration order at position " +
                                        std::to_string(g) + " (simplex " + simplex_name(s) + ")");
    }
    const detail::SimplexIndex index = detail::index_simplices(k);
    for (std::size_t g = 0; g < k.size(); ++g)
        if (k.simplices[g].dim() >= 1) detail::boundary_of(k, index, g);
}

// Persistence pairing over Z2 by column reduction with the twist/clearing
// optimization: dimensions are reduced top-down, and the creator discovered
// by each pairing is cleared from the next (lower) dimension's pass. Pairs
// with zero persistence are dropped; unpaired creators of dimension
// < max_dim die at infinity.
inline PersistenceDiagram compute_persistence(const FilteredComplex& k) {
    validate_complex(k);

    const std::size_t total = k.size();
    const detail::SimplexIndex index = detail::index_simplices(k);

    std::vector<std::vector<std::size_t>> by_dim(static_cast<std::size_t>(k.max_dim) + 1);
    std::vector<std::size_t> local_id(total, 0);
    for (std::size_t g = 0; g < total; ++g) {
        auto& bucket = by_dim[static_cast<std::size_t>(k.simplices[g].dim())];
        local_id[g] = bucket.size();
        bucket.push_back(g);
    }

    std::vector<std::ptrdiff_t> partner(total, -1);  // creator -> its destroyer
    std::vector<char> is_negative(total, 0);         // destroyer columns
    std::vector<char> cleared(total, 0);             // known creators, skipped

    for (int d = k.max_dim; d >= 1; --d) {
        const auto& rows = by_dim[static_cast<std::size_t>(d) - 1];
        const auto& cols = by_dim[static_cast<std::size_t>(d)];
        std::vector<std::ptrdiff_t> pivot_owner(rows.size(), -1);
        std::vector<detail::BitColumn> reduced(cols.size());

        for (std::size_t c = 0; c < cols.size(); ++c) {
            const std::size_t g = cols[c];
            if (cleared[g]) continue;
            detail::BitColumn col(rows.size());
            for (std::size_t face : detail::boundary_of(k, index, g))
                col.flip(local_id[face]);
            std::size_t lo = 0;
            while (col.any()) {
                lo = col.low();
                if (pivot_owner[lo] < 0) break;
                col.xor_with(reduced[static_cast<std::size_t>(pivot_owner[lo])]);
            }
            if (!col.any()) continue;  // creator in dimension d
            pivot_owner[lo] = static_cast<std::ptrdiff_t>(c);
            reduced[c] = std::move(col);
            const std::size_t creator = rows[lo];
            partner[creator] = static_cast<std::ptrdiff_t>(g);
            is_negative[g] = 1;
            cleared[creator] = 1;
        }
    }

    PersistenceDiagram diagram;
    diagram.max_homology_dim = k.max_dim - 1;
    for (std::size_t g = 0; g < total; ++g) {
        if (is_negative[g]) continue;
        const Simplex& s = k.simplices[g];
        if (partner[g] >= 0) {
            const double death = k.simplices[static_cast<std::size_t>(partner[g])].filtration_value;
            if (death > s.filtration_value)
                diagram.points.push_back(PersistencePoint{s.dim(), s.filtration_value, death});
        } else if (s.dim() <= k.max_dim - 1) {
            diagram.points.push_back(PersistencePoint{s.dim(), s.filtration_value, kInfiniteDeath});
        }
    }
    std::sort(diagram.points.begin(), diagram.points.end());
    return diagram;
}

// Betti numbers read off a diagram: classes alive at theta are those with
// birth <= theta < death. Covers dimensions 0..max_homology_dim.
inline BettiProfile betti_at(const PersistenceDiagram& d, double theta) {
    if (!(theta >= 0.0)) throw std::invalid_argument("theta must be >= 0");
    BettiProfile profile;
    profile.theta = theta;
    profile.betti.assign(static_cast<std::size_t>(d.max_homology_dim) + 1, 0);
    for (const PersistencePoint& p : d.points)
        if (p.birth <= theta && theta < p.death) profile.betti[static_cast<std::size_t>(p.dim)] += 1;
    return profile;
}

// Independent oracle: Betti numbers of the sub-complex {filt <= theta} by
// Gaussian elimination over Z2, beta_i = dim C_i - rank d_i - rank d_{i+1}.
// Covers dimensions 0..max_dim (the top dimension has no higher boundary in
// the complex and is reported as truncated homology).
inline BettiProfile betti_bruteforce(const FilteredComplex& k, double theta) {
    if (!(theta >= 0.0)) throw std::invalid_argument("theta must be >= 0");
    validate_complex(k);

    std::vector<std::vector<std::size_t>> by_dim(static_cast<std::size_t>(k.max_dim) + 1);
    std::vector<std::size_t> local_id(k.size(), 0);
    for (std::size_t g = 0; g < k.size(); ++g) {
        if (k.simplices[g].filtration_value > theta) continue;
        auto& bucket = by_dim[static_cast<std::size_t>(k.simplices[g].dim())];
        local_id[g] = bucket.size();
        bucket.push_back(g);
    }
    const detail::SimplexIndex index = detail::index_simplices(k);

    std::vector<int> boundary_rank(static_cast<std::size_t>(k.max_dim) + 2, 0);
    for (int d = 1; d <= k.max_dim; ++d) {
        const auto& rows = by_dim[static_cast<std::size_t>(d) - 1];
        const auto& cols = by_dim[static_cast<std::size_t>(d)];
        std::vector<detail::BitColumn> matrix;
        matrix.reserve(cols.size());
        for (std::size_t g : cols) {
            detail::BitColumn col(rows.size());
            for (std::size_t face : detail::boundary_of(k, index, g)) col.flip(local_id[face]);
            matrix.push_back(std::move(col));
        }
        boundary_rank[static_cast<std::size_t>(d)] = detail::z2_rank(matrix, rows.size());
    }

    BettiProfile profile;
    profile.theta = theta;
    profile.betti.assign(static_cast<std::size_t>(k.max_dim) + 1, 0);
    for (int d = 0; d <= k.max_dim; ++d) {
        const int chains = static_cast<int>(by_dim[static_cast<std::size_t>(d)].size());
        profile.betti[static_cast<std::size_t>(d)] =
            chains - boundary_rank[static_cast<std::size_t>(d)] -
            boundary_rank[static_cast<std::size_t>(d) + 1];
    }
    return profile;
}

}  // namespace tdanet
