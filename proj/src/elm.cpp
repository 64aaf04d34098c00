#include "cfnet/baselines.hpp"

#include <random>
#include <stdexcept>

namespace cfnet::baselines {

ElmModel::ElmModel(Eigen::MatrixXd hidden_weights, Eigen::VectorXd hidden_biases, Eigen::VectorXd outer_weights,
                   Sigmoid sigma)
    : hidden_weights_(std::move(hidden_weights)), hidden_biases_(std::move(hidden_biases)),
      outer_weights_(std::move(outer_weights)), sigma_(sigma) {
    if (hidden_weights_.rows() != hidden_biases_.size() || hidden_biases_.size() != outer_weights_.size())
        throw std::invalid_argument("ElmModel: inconsistent layer sizes");
    if (hidden_biases_.size() == 0) throw std::invalid_argument("ElmModel: no hidden units");
}

double ElmModel::predict(PointView x) const {
    if (x.size() != dimension()) throw std::invalid_argument("ElmModel::predict: dimension mismatch");
    double value = 0.0;
    for (Eigen::Index k = 0; k < hidden_weights_.rows(); ++k) {
        double z = hidden_biases_[k];
        for (Eigen::Index l = 0; l < hidden_weights_.cols(); ++l) z += hidden_weights_(k, l) * x[l];
        value += outer_weights_[k] * sigma_(z);
    }
    return value;
}

std::vector<double> ElmModel::predict(const PointSet& xs) const {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = predict(xs[i]);
    return out;
}

HiddenLayer draw_hidden_layer(std::size_t n_hidden, std::size_t d, std::uint64_t seed) {
    if (n_hidden == 0) throw std::invalid_argument("elm: n_hidden must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    HiddenLayer layer{Eigen::MatrixXd(n_hidden, d), Eigen::VectorXd(n_hidden)};
    for (std::size_t k = 0; k < n_hidden; ++k) {
        for (std::size_t l = 0; l < d; ++l) layer.weights(k, l) = uniform(rng);
        layer.biases[k] = uniform(rng);
    }
    return layer;
}

Eigen::MatrixXd hidden_matrix(const HiddenLayer& layer, std::size_t units, const PointSet& xs, const Sigmoid& sigma) {
    const auto m = static_cast<Eigen::Index>(xs.size());
    const auto n = static_cast<Eigen::Index>(units);
    Eigen::MatrixXd h(m, n);
    for (Eigen::Index i = 0; i < m; ++i) {
        const PointView x = xs[static_cast<std::size_t>(i)];
        for (Eigen::Index k = 0; k < n; ++k) {
            double z = layer.biases[k];
            for (Eigen::Index l = 0; l < layer.weights.cols(); ++l) z += layer.weights(k, l) * x[l];
            h(i, k) = sigma(z);
        }
    }
    return h;
}

Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& h, const Eigen::VectorXd& y) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    Eigen::VectorXd c = Eigen::VectorXd::Zero(h.cols());
    if (s.size() == 0 || s[0] == 0.0) return c;
    const double cutoff = elm_rank_tolerance * s[0];
    const Eigen::VectorXd uty = svd.matrixU().transpose() * y;
    for (Eigen::Index k = 0; k < s.size(); ++k)
        if (s[k] > cutoff) c.noalias() += svd.matrixV().col(k) * (uty[k] / s[k]);
    return c;
}

ElmModel elm_train(const SampleSet& samples, std::size_t n_hidden, const Sigmoid& sigma, std::uint64_t seed) {
    if (samples.empty()) throw std::invalid_argument("elm_train: no samples");
    auto layer = draw_hidden_layer(n_hidden, samples.dimension(), seed);
    const Eigen::MatrixXd h = hidden_matrix(layer, n_hidden, samples.inputs, sigma);
    const Eigen::Map<const Eigen::VectorXd> y(samples.outputs.data(), static_cast<Eigen::Index>(samples.size()));
    Eigen::VectorXd c = min_norm_solve(h, y);
    return ElmModel(std::move(layer.weights), std::move(layer.biases), std::move(c), sigma);
}

} // namespace cfnet::baselines
