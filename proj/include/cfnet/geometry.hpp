#pragma once

// Quasi-uniform centers, their greedy chain ordering, the Voronoi
// nearest-center rule and the chain ("freight station") distance.
//
// Cell ids are 0-based throughout: cell j is the Voronoi cell of the j-th
// center in chain order.

#include "cfnet/point_set.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cfnet::geometry {

/// Axis-aligned box [lower_k, upper_k] per coordinate.
struct Box {
    Point lower;
    Point upper;

    static Box cube(std::size_t d, double lo, double hi) {
        return {Point(d, lo), Point(d, hi)};
    }

    std::size_t dimension() const noexcept { return lower.size(); }

    /// Throws unless both corners have the same dimension and every side has
    /// positive length.
    void validate() const;
};

/// Largest dimension covered by the built-in direction numbers.
inline constexpr std::size_t max_sobol_dimension = 21;

/// Gray-code Sobol generator with Joe-Kuo direction numbers.
///
/// The all-zero point at index 0 is skipped, so the first point returned is
/// (1/2, ..., 1/2).
class SobolSequence {
public:
    explicit SobolSequence(std::size_t dimension);

    std::size_t dimension() const noexcept { return dim_; }

    /// Next point in [0,1)^d.
    Point next();

private:
    static constexpr int bits = 32;

    std::size_t dim_;
    std::vector<std::uint32_t> directions_; // dim_ * bits, row per dimension
    std::vector<std::uint32_t> state_;
    std::uint64_t index_ = 0;
};

/// First n Sobol points mapped affinely into `domain`.
PointSet sobol_centers(std::size_t n, std::size_t d, const Box& domain);

/// Cell midpoints a + (2k-1)(b-a)/(2n), k = 1..n.
PointSet equispaced_centers(std::size_t n, double a, double b);

/// Ordered centers plus the chain prefix sums used by the partition distance.
///
/// prefix()[j] is the summed length of consecutive hops from center 0 to
/// center j, so prefix()[0] == 0.
class CenterChain {
public:
    /// Keeps the given order. Throws on empty input or duplicate centers.
    static CenterChain from_ordered(PointSet centers);

    const PointSet& centers() const noexcept { return centers_; }
    PointView center(std::size_t j) const noexcept { return centers_[j]; }
    std::size_t size() const noexcept { return centers_.size(); }
    std::size_t dimension() const noexcept { return centers_.dimension(); }

    const std::vector<double>& prefix() const noexcept { return prefix_; }

    /// Half the minimum pairwise distance (exact).
    double separation_radius() const noexcept { return separation_radius_; }

    /// max_j d(center_j, center_{j+1}); 0 for a single center.
    double max_consecutive_gap() const noexcept { return max_gap_; }

private:
    explicit CenterChain(PointSet centers);

    PointSet centers_;
    std::vector<double> prefix_;
    double separation_radius_ = 0.0;
    double max_gap_ = 0.0;
};

/// Greedy nearest-neighbour ordering starting from points[0]; ties go to the
/// lowest original index. The hop length is reported, not bounded.
CenterChain rearrange_greedy(const PointSet& points);

/// max over probes of the distance to the nearest center. A lower bound on
/// the continuous mesh norm.
double mesh_norm(const CenterChain& chain, const PointSet& probes);

/// 10000*d uniform probes in `domain` followed by the centers themselves.
PointSet default_probes(const CenterChain& chain, const Box& domain, std::uint64_t seed = 0);

struct QuasiUniformity {
    double mesh_norm = 0.0;
    double separation_radius = 0.0;
    double max_consecutive_gap = 0.0;

    /// mesh_norm / separation_radius.
    double ratio() const noexcept { return mesh_norm / separation_radius; }
};

QuasiUniformity diagnose(const CenterChain& chain, const Box& domain, std::uint64_t seed = 0);

/// Centers used by the estimator: equispaced midpoints when d == 1, otherwise
/// Sobol points in `domain` rearranged greedily.
CenterChain quasi_uniform_chain(std::size_t n, const Box& domain);

/// Voronoi cell assignment and chain distances over a fixed CenterChain.
/// Immutable; all queries are const and thread-safe.
class VoronoiIndex {
public:
    explicit VoronoiIndex(CenterChain chain) : chain_(std::move(chain)) {}

    const CenterChain& chain() const noexcept { return chain_; }
    std::size_t size() const noexcept { return chain_.size(); }
    std::size_t dimension() const noexcept { return chain_.dimension(); }

    /// Smallest j minimizing d(x, center_j). Total over R^d.
    std::size_t assign_cell(PointView x) const;

    /// d-bar(center_0, x): prefix[k] + d(center_k, x) with k = assign_cell(x).
    double chain_coordinate(PointView x) const;

    /// Same as chain_coordinate when the cell of x is already known.
    double chain_coordinate(PointView x, std::size_t cell) const;

    /// Partition-based distance. Euclidean inside one cell, otherwise routed
    /// through the chain between the two cells' centers.
    double partition_distance(PointView x, PointView y) const;

private:
    CenterChain chain_;
};

/// assign_cell for every row of `points`.
std::vector<std::size_t> assign_cells(const VoronoiIndex& index, const PointSet& points);

} // namespace cfnet::geometry
