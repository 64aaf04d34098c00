#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace cfnet {

/// A single point in R^d. Used for owned one-off points; bulk storage goes
/// through PointSet.
using Point = std::vector<double>;

/// Non-owning view of a point's coordinates.
using PointView = std::span<const double>;

/// Row-major storage of m points of a common dimension d.
class PointSet {
public:
    PointSet() = default;

    explicit PointSet(std::size_t dimension) : dim_(dimension) {
        if (dimension == 0) throw std::invalid_argument("PointSet: dimension must be positive");
    }

    PointSet(std::size_t dimension, std::vector<double> coords)
        : dim_(dimension), coords_(std::move(coords)) {
        if (dimension == 0) throw std::invalid_argument("PointSet: dimension must be positive");
        if (coords_.size() % dimension != 0)
            throw std::invalid_argument("PointSet: coordinate count is not a multiple of dimension");
    }

    static PointSet from_rows(const std::vector<Point>& rows) {
        if (rows.empty()) throw std::invalid_argument("PointSet: no rows");
        PointSet out(rows.front().size());
        out.reserve(rows.size());
        for (const auto& r : rows) out.push_back(r);
        return out;
    }

    std::size_t dimension() const noexcept { return dim_; }
    std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    bool empty() const noexcept { return coords_.empty(); }

    PointView operator[](std::size_t i) const noexcept {
        return {coords_.data() + i * dim_, dim_};
    }
    std::span<double> row(std::size_t i) noexcept { return {coords_.data() + i * dim_, dim_}; }

    void reserve(std::size_t points) { coords_.reserve(points * dim_); }

    void push_back(PointView p) {
        if (p.size() != dim_) throw std::invalid_argument("PointSet: dimension mismatch");
        coords_.insert(coords_.end(), p.begin(), p.end());
    }

    const std::vector<double>& data() const noexcept { return coords_; }

    /// Subset in the order given by `indices`.
    PointSet select(std::span<const std::size_t> indices) const {
        PointSet out(dim_);
        out.reserve(indices.size());
        for (auto i : indices) out.push_back((*this)[i]);
        return out;
    }

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
};

inline double squared_distance(PointView a, PointView b) noexcept {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        s += diff * diff;
    }
    return s;
}

inline double distance(PointView a, PointView b) noexcept { return std::sqrt(squared_distance(a, b)); }

inline bool all_finite(PointView p) noexcept {
    for (double v : p)
        if (!std::isfinite(v)) return false;
    return true;
}

} // namespace cfnet
