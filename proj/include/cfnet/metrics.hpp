#pragma once

#include <span>

namespace cfnet::harness {

/// sqrt(mean((p - t)^2)). Throws on empty input or a length mismatch.
double rmse(std::span<const double> predictions, std::span<const double> truths);

double mean(std::span<const double> values);

/// Sample standard deviation with the (n - 1) denominator; 0 for n < 2.
double stddev(std::span<const double> values);

} // namespace cfnet::harness
