#include "cfnet/learner.hpp"

#include "cfnet/benchdata.hpp"

#include <sstream>
#include <stdexcept>

namespace cfnet {

double predict(const AnyModel& model, PointView x) {
    return std::visit([&](const auto& m) { return m.predict(x); }, model);
}

std::vector<double> predict(const AnyModel& model, const PointSet& xs) {
    return std::visit([&](const auto& m) { return m.predict(xs); }, model);
}

std::size_t model_dimension(const AnyModel& model) {
    return std::visit(
        [](const auto& m) -> std::size_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, network::CfnModel>)
                return m.index().dimension();
            else
                return m.dimension();
        },
        model);
}

namespace harness {

Method parse_method(std::string_view name) {
    if (name == "cfn") return Method::cfn;
    if (name == "elm") return Method::elm;
    if (name == "krr") return Method::krr;
    throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

std::string to_string(Method method) {
    switch (method) {
    case Method::cfn: return "cfn";
    case Method::elm: return "elm";
    case Method::krr: return "krr";
    }
    return {};
}

std::string Hyperparameters::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (method) {
    case Method::cfn: os << "n=" << n << " r=" << r; break;
    case Method::elm: os << "hidden=" << n; break;
    case Method::krr: os << "gamma=" << gamma << " lambda=" << lambda; break;
    }
    return os.str();
}

geometry::Box center_domain(const LearnerOptions& options, std::size_t d) {
    if (options.domain) {
        if (options.domain->dimension() != d) throw std::invalid_argument("center domain dimension mismatch");
        return *options.domain;
    }
    return benchdata::input_domain(d);
}

std::shared_ptr<const geometry::VoronoiIndex> IndexCache::get(std::size_t n) {
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    auto index = std::make_shared<const geometry::VoronoiIndex>(geometry::quasi_uniform_chain(n, domain_));
    cache_.emplace(n, index);
    return index;
}

AnyModel fit(const SampleSet& samples, const Hyperparameters& params, const LearnerOptions& options) {
    // Only the cfn branch consults the cache, so the baselines ignore the domain.
    IndexCache cache(params.method == Method::cfn ? center_domain(options, samples.dimension()) : geometry::Box{});
    return fit(samples, params, options, cache);
}

AnyModel fit(const SampleSet& samples, const Hyperparameters& params, const LearnerOptions& options,
             IndexCache& cache) {
    switch (params.method) {
    case Method::cfn: {
        if (params.n == 0) throw std::invalid_argument("cfn: n must be >= 1");
        auto index = cache.get(params.n);
        const double w = options.width.resolve(options.sigmoid, params.n, samples.dimension());
        return network::train(std::move(index), options.sigmoid, w, params.r, samples, options.empty_cells);
    }
    case Method::elm: return baselines::elm_train(samples, params.n, options.sigmoid, options.seed);
    case Method::krr: return baselines::krr_train(samples, params.gamma, params.lambda);
    }
    throw std::logic_error("fit: unhandled method");
}

} // namespace harness
} // namespace cfnet
