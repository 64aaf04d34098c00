#pragma once

// Synthetic regression targets and the noisy sampling model
// Y = f(X) + eps, eps ~ N(0, noise_variance), with noise-free test sets.

#include "cfnet/geometry.hpp"
#include "cfnet/samples.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cfnet::benchdata {

enum class TargetId { f1, f2, f3, f4, f5 };

class TargetFn {
public:
    explicit TargetFn(TargetId id) : id_(id) {}

    static TargetFn parse(std::string_view name);

    TargetId id() const noexcept { return id_; }
    std::string name() const;

    /// Hoelder smoothness index s of the target.
    double smoothness() const noexcept;

    /// Dimensions the target is defined for in the benchmarks.
    std::vector<std::size_t> valid_dims() const;
    bool supports(std::size_t d) const;

    double operator()(PointView x) const;

private:
    TargetId id_;
};

/// Input domain: [-1,1] for d == 1, [0,1]^d otherwise.
geometry::Box input_domain(std::size_t d);

struct DatasetSpec {
    TargetId fn = TargetId::f1;
    std::size_t d = 1;
    std::size_t m_train = 1024;
    std::size_t m_test = 1000;
    double noise_variance = 0.1;
    std::uint64_t seed = 0;
};

struct Dataset {
    SampleSet train;
    SampleSet test;
};

/// X uniform on input_domain(d); train outputs carry Gaussian noise, test
/// outputs are exact. Deterministic in spec.seed.
Dataset generate(const DatasetSpec& spec);

} // namespace cfnet::benchdata
