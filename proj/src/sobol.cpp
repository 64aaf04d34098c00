// Sobol generator. Direction numbers for dimensions 2..21 are the first rows
// of the Joe-Kuo "new-joe-kuo-6.21201" table; dimension 1 is van der Corput.

#include "cfnet/geometry.hpp"

#include <array>
#include <bit>
#include <stdexcept>

namespace cfnet::geometry {
namespace {

struct DirectionRow {
    int degree;                     // s
    std::uint32_t coeffs;           // a (interior polynomial coefficients)
    std::array<std::uint32_t, 7> m; // initial direction numbers
};

constexpr std::array<DirectionRow, max_sobol_dimension - 1> joe_kuo = {{
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
    {5, 11, {1, 1, 5, 1, 1}},
    {5, 13, {1, 1, 1, 3, 11}},
    {5, 14, {1, 3, 5, 5, 31}},
    {6, 1, {1, 3, 3, 9, 7, 49}},
    {6, 13, {1, 1, 1, 15, 21, 21}},
    {6, 16, {1, 3, 1, 13, 27, 49}},
    {6, 19, {1, 1, 1, 15, 7, 5}},
    {6, 22, {1, 3, 1, 15, 13, 25}},
    {6, 25, {1, 1, 5, 5, 19, 61}},
    {7, 1, {1, 3, 7, 11, 23, 15, 103}},
    {7, 4, {1, 3, 7, 13, 13, 15, 69}},
}};

} // namespace

SobolSequence::SobolSequence(std::size_t dimension) : dim_(dimension) {
    if (dimension == 0) throw std::invalid_argument("SobolSequence: dimension must be positive");
    if (dimension > max_sobol_dimension)
        throw std::invalid_argument("SobolSequence: dimension exceeds built-in direction numbers (max 21)");

    directions_.assign(dim_ * bits, 0);
    state_.assign(dim_, 0);

    for (int k = 0; k < bits; ++k) directions_[k] = std::uint32_t{1} << (bits - 1 - k);

    for (std::size_t dim = 1; dim < dim_; ++dim) {
        const auto& row = joe_kuo[dim - 1];
        const int s = row.degree;
        std::uint32_t* v = directions_.data() + dim * bits;
        for (int k = 0; k < s && k < bits; ++k) v[k] = row.m[k] << (bits - 1 - k);
        for (int k = s; k < bits; ++k) {
            v[k] = v[k - s] ^ (v[k - s] >> s);
            for (int l = 1; l < s; ++l)
                if ((row.coeffs >> (s - 1 - l)) & 1u) v[k] ^= v[k - l];
        }
    }
}

Point SobolSequence::next() {
    // Gray-code update: flip the direction number of the lowest zero bit of
    // the previous index. Starting from index 0 (all zeros) and updating once
    // before returning skips the origin.
    if (index_ >= (std::uint64_t{1} << bits) - 1) throw std::out_of_range("SobolSequence: exhausted");
    const int c = std::countr_one(index_);
    for (std::size_t dim = 0; dim < dim_; ++dim) state_[dim] ^= directions_[dim * bits + c];
    ++index_;

    Point p(dim_);
    constexpr double scale = 1.0 / 4294967296.0;
    for (std::size_t dim = 0; dim < dim_; ++dim) p[dim] = static_cast<double>(state_[dim]) * scale;
    return p;
}

} // namespace cfnet::geometry
