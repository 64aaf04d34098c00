#pragma once

#include "cfnet/point_set.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace cfnet {

/// Paired inputs x_i and outputs y_i.
struct SampleSet {
    PointSet inputs;
    std::vector<double> outputs;

    SampleSet() = default;
    SampleSet(PointSet x, std::vector<double> y) : inputs(std::move(x)), outputs(std::move(y)) {
        if (inputs.size() != outputs.size()) throw std::invalid_argument("SampleSet: input/output count mismatch");
    }

    std::size_t size() const noexcept { return outputs.size(); }
    std::size_t dimension() const noexcept { return inputs.dimension(); }
    bool empty() const noexcept { return outputs.empty(); }

    /// max_i |y_i|.
    double bound() const noexcept {
        double m = 0.0;
        for (double y : outputs) m = std::max(m, std::abs(y));
        return m;
    }

    SampleSet select(std::span<const std::size_t> indices) const {
        std::vector<double> y;
        y.reserve(indices.size());
        for (auto i : indices) y.push_back(outputs[i]);
        return {inputs.select(indices), std::move(y)};
    }
};

} // namespace cfnet
