#pragma once

// Uniform fit/predict surface over the three model families.

#include "cfnet/baselines.hpp"
#include "cfnet/geometry.hpp"
#include "cfnet/network.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace cfnet {

using AnyModel = std::variant<network::CfnModel, baselines::ElmModel, baselines::KrrModel>;

double predict(const AnyModel& model, PointView x);
std::vector<double> predict(const AnyModel& model, const PointSet& xs);
std::size_t model_dimension(const AnyModel& model);

namespace harness {

enum class Method { cfn, elm, krr };

Method parse_method(std::string_view name);
std::string to_string(Method method);

/// Settings shared by every fit that are not cross-validated.
struct LearnerOptions {
    activation::Sigmoid sigmoid = activation::Sigmoid::logistic();
    network::WidthSetting width;
    network::EmptyCellPolicy empty_cells = network::EmptyCellPolicy::zero;
    /// Domain the CFN centers are placed in; benchdata::input_domain(d) when unset.
    std::optional<geometry::Box> domain;
    /// Seed for the ELM hidden layer.
    std::uint64_t seed = 0;
};

/// One grid point. `n` is the center count (cfn) or hidden units (elm).
struct Hyperparameters {
    Method method = Method::cfn;
    std::size_t n = 0;
    int r = 1;
    double gamma = 0.0;
    double lambda = 0.0;

    std::string describe() const;
    friend bool operator==(const Hyperparameters&, const Hyperparameters&) = default;
};

geometry::Box center_domain(const LearnerOptions& options, std::size_t d);

/// Voronoi indices keyed by center count, built on first use. Not
/// thread-safe; use one cache per worker.
class IndexCache {
public:
    IndexCache(geometry::Box domain) : domain_(std::move(domain)) {}
    std::shared_ptr<const geometry::VoronoiIndex> get(std::size_t n);

private:
    geometry::Box domain_;
    std::map<std::size_t, std::shared_ptr<const geometry::VoronoiIndex>> cache_;
};

AnyModel fit(const SampleSet& samples, const Hyperparameters& params, const LearnerOptions& options);
AnyModel fit(const SampleSet& samples, const Hyperparameters& params, const LearnerOptions& options,
             IndexCache& cache);

} // namespace harness
} // namespace cfnet
