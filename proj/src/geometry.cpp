#include "cfnet/geometry.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

namespace cfnet::geometry {

void Box::validate() const {
    if (lower.empty() || lower.size() != upper.size())
        throw std::invalid_argument("Box: corner dimensions differ or are zero");
    for (std::size_t k = 0; k < lower.size(); ++k)
        if (!(lower[k] < upper[k]) || !std::isfinite(lower[k]) || !std::isfinite(upper[k]))
            throw std::invalid_argument("Box: degenerate side");
}

PointSet sobol_centers(std::size_t n, std::size_t d, const Box& domain) {
    if (n == 0) throw std::invalid_argument("sobol_centers: n must be positive");
    domain.validate();
    if (domain.dimension() != d) throw std::invalid_argument("sobol_centers: box dimension mismatch");

    SobolSequence seq(d);
    PointSet out(d);
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Point u = seq.next();
        for (std::size_t k = 0; k < d; ++k)
            u[k] = domain.lower[k] + u[k] * (domain.upper[k] - domain.lower[k]);
        out.push_back(u);
    }
    return out;
}

PointSet equispaced_centers(std::size_t n, double a, double b) {
    if (n == 0) throw std::invalid_argument("equispaced_centers: n must be positive");
    if (!(a < b)) throw std::invalid_argument("equispaced_centers: need a < b");
    PointSet out(1);
    out.reserve(n);
    const double len = b - a;
    for (std::size_t k = 1; k <= n; ++k) {
        const double x = a + static_cast<double>(2 * k - 1) * len / static_cast<double>(2 * n);
        out.push_back(std::span<const double>(&x, 1));
    }
    return out;
}

CenterChain::CenterChain(PointSet centers) : centers_(std::move(centers)) {
    const std::size_t n = centers_.size();
    prefix_.assign(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) {
        const double hop = distance(centers_[j - 1], centers_[j]);
        prefix_[j] = prefix_[j - 1] + hop;
        max_gap_ = std::max(max_gap_, hop);
    }

    double min_sq = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            min_sq = std::min(min_sq, squared_distance(centers_[i], centers_[j]));
    // A single center has no pair; its separation is unbounded.
    separation_radius_ = n > 1 ? 0.5 * std::sqrt(min_sq) : std::numeric_limits<double>::infinity();
}

CenterChain CenterChain::from_ordered(PointSet centers) {
    if (centers.empty()) throw std::invalid_argument("CenterChain: no centers");
    for (std::size_t i = 0; i < centers.size(); ++i)
        if (!all_finite(centers[i])) throw std::invalid_argument("CenterChain: non-finite center");
    CenterChain chain(std::move(centers));
    if (!(chain.separation_radius_ > 0.0)) throw std::invalid_argument("CenterChain: duplicate centers");
    return chain;
}

CenterChain rearrange_greedy(const PointSet& points) {
    const std::size_t n = points.size();
    if (n == 0) throw std::invalid_argument("rearrange_greedy: no points");

    std::vector<bool> visited(n, false);
    std::vector<std::size_t> order;
    order.reserve(n);
    std::size_t current = 0;
    visited[0] = true;
    order.push_back(0);
    for (std::size_t step = 1; step < n; ++step) {
        std::size_t best = n;
        double best_sq = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (visited[j]) continue;
            const double sq = squared_distance(points[current], points[j]);
            if (sq < best_sq) {
                best_sq = sq;
                best = j;
            }
        }
        visited[best] = true;
        order.push_back(best);
        current = best;
    }
    return CenterChain::from_ordered(points.select(order));
}

double mesh_norm(const CenterChain& chain, const PointSet& probes) {
    if (probes.empty()) throw std::invalid_argument("mesh_norm: no probes");
    double worst = 0.0;
    for (std::size_t p = 0; p < probes.size(); ++p) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < chain.size(); ++j)
            nearest = std::min(nearest, squared_distance(probes[p], chain.center(j)));
        worst = std::max(worst, nearest);
    }
    return std::sqrt(worst);
}

PointSet default_probes(const CenterChain& chain, const Box& domain, std::uint64_t seed) {
    domain.validate();
    const std::size_t d = domain.dimension();
    if (d != chain.dimension()) throw std::invalid_argument("default_probes: dimension mismatch");
    std::mt19937_64 rng(seed);
    const std::size_t count = 10000 * d;
    PointSet probes(d);
    probes.reserve(count + chain.size());
    Point p(d);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t k = 0; k < d; ++k)
            p[k] = std::uniform_real_distribution<double>(domain.lower[k], domain.upper[k])(rng);
        probes.push_back(p);
    }
    for (std::size_t j = 0; j < chain.size(); ++j) probes.push_back(chain.center(j));
    return probes;
}

QuasiUniformity diagnose(const CenterChain& chain, const Box& domain, std::uint64_t seed) {
    return {mesh_norm(chain, default_probes(chain, domain, seed)), chain.separation_radius(),
            chain.max_consecutive_gap()};
}

CenterChain quasi_uniform_chain(std::size_t n, const Box& domain) {
    domain.validate();
    if (domain.dimension() == 1)
        return CenterChain::from_ordered(equispaced_centers(n, domain.lower[0], domain.upper[0]));
    return rearrange_greedy(sobol_centers(n, domain.dimension(), domain));
}

std::size_t VoronoiIndex::assign_cell(PointView x) const {
    const std::size_t n = chain_.size();
    std::size_t best = 0;
    double best_sq = squared_distance(x, chain_.center(0));
    for (std::size_t j = 1; j < n; ++j) {
        const double sq = squared_distance(x, chain_.center(j));
        if (sq < best_sq) {
            best_sq = sq;
            best = j;
        }
    }
    return best;
}

double VoronoiIndex::chain_coordinate(PointView x, std::size_t cell) const {
    return chain_.prefix()[cell] + distance(chain_.center(cell), x);
}

double VoronoiIndex::chain_coordinate(PointView x) const { return chain_coordinate(x, assign_cell(x)); }

double VoronoiIndex::partition_distance(PointView x, PointView y) const {
    const std::size_t kx = assign_cell(x);
    const std::size_t ky = assign_cell(y);
    if (kx == ky) return distance(x, y);
    // Sum in lower-cell-first order so the result is bitwise symmetric.
    const auto& prefix = chain_.prefix();
    if (kx < ky) return (prefix[ky] - prefix[kx]) + distance(chain_.center(kx), x) + distance(chain_.center(ky), y);
    return (prefix[kx] - prefix[ky]) + distance(chain_.center(ky), y) + distance(chain_.center(kx), x);
}

std::vector<std::size_t> assign_cells(const VoronoiIndex& index, const PointSet& points) {
    std::vector<std::size_t> cells(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) cells[i] = index.assign_cell(points[i]);
    return cells;
}

} // namespace cfnet::geometry
