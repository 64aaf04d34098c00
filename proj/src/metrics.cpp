#include "cfnet/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace cfnet::harness {

double rmse(std::span<const double> predictions, std::span<const double> truths) {
    if (predictions.size() != truths.size()) throw std::invalid_argument("rmse: length mismatch");
    if (predictions.empty()) throw std::invalid_argument("rmse: empty input");
    double s = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const double e = predictions[i] - truths[i];
        s += e * e;
    }
    return std::sqrt(s / static_cast<double>(predictions.size()));
}

double mean(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("mean: empty input");
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

double stddev(std::span<const double> values) {
    if (values.size() < 2) return 0.0;
    const double mu = mean(values);
    double s = 0.0;
    for (double v : values) s += (v - mu) * (v - mu);
    return std::sqrt(s / static_cast<double>(values.size() - 1));
}

} // namespace cfnet::harness
