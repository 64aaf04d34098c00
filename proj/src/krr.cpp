#include "cfnet/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace cfnet::baselines {

double gaussian_kernel(PointView a, PointView b, double gamma) noexcept {
    return std::exp(-squared_distance(a, b) / (gamma * gamma));
}

Eigen::MatrixXd kernel_matrix(const PointSet& xs, double gamma) {
    const auto m = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd k(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        k(i, i) = 1.0;
        for (Eigen::Index j = 0; j < i; ++j) {
            const double v = gaussian_kernel(xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(j)], gamma);
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

KrrModel::KrrModel(PointSet support, Eigen::VectorXd dual_coeffs, double gamma, double lambda)
    : support_(std::move(support)), dual_(std::move(dual_coeffs)), gamma_(gamma), lambda_(lambda) {
    if (static_cast<Eigen::Index>(support_.size()) != dual_.size())
        throw std::invalid_argument("KrrModel: support/coefficient count mismatch");
    if (!(gamma_ > 0.0)) throw std::invalid_argument("KrrModel: gamma must be positive");
}

double KrrModel::predict(PointView x) const {
    if (x.size() != dimension()) throw std::invalid_argument("KrrModel::predict: dimension mismatch");
    double value = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i)
        value += dual_[static_cast<Eigen::Index>(i)] * gaussian_kernel(x, support_[i], gamma_);
    return value;
}

std::vector<double> KrrModel::predict(const PointSet& xs) const {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = predict(xs[i]);
    return out;
}

KrrModel krr_train(const SampleSet& samples, double gamma, double lambda) {
    if (!(gamma > 0.0)) throw std::invalid_argument("krr_train: gamma must be positive");
    return krr_train(samples, kernel_matrix(samples.inputs, gamma), gamma, lambda);
}

KrrModel krr_train(const SampleSet& samples, const Eigen::MatrixXd& kernel, double gamma, double lambda) {
    if (samples.empty()) throw std::invalid_argument("krr_train: no samples");
    if (!(gamma > 0.0)) throw std::invalid_argument("krr_train: gamma must be positive");
    if (!(lambda >= 0.0)) throw std::invalid_argument("krr_train: lambda must be nonnegative");
    const auto m = static_cast<Eigen::Index>(samples.size());
    if (kernel.rows() != m || kernel.cols() != m) throw std::invalid_argument("krr_train: kernel size mismatch");

    const Eigen::Map<const Eigen::VectorXd> y(samples.outputs.data(), m);
    Eigen::MatrixXd system = kernel;
    system.diagonal().array() += static_cast<double>(m) * lambda;

    Eigen::LLT<Eigen::MatrixXd> llt(system);
    if (llt.info() != Eigen::Success) {
        system.diagonal().array() += krr_jitter;
        llt.compute(system);
        if (llt.info() != Eigen::Success) throw std::runtime_error("krr_train: kernel system is not positive definite");
    }
    Eigen::VectorXd alpha = llt.solve(y);
    return KrrModel(samples.inputs, std::move(alpha), gamma, lambda);
}

double krr_relative_residual(const KrrModel& model, const SampleSet& samples) {
    const auto m = static_cast<Eigen::Index>(samples.size());
    Eigen::MatrixXd system = kernel_matrix(samples.inputs, model.gamma());
    system.diagonal().array() += static_cast<double>(m) * model.lambda();
    const Eigen::Map<const Eigen::VectorXd> y(samples.outputs.data(), m);
    const double ynorm = y.norm();
    const double r = (system * model.dual_coeffs() - y).norm();
    return ynorm > 0.0 ? r / ynorm : r;
}

} // namespace cfnet::baselines
