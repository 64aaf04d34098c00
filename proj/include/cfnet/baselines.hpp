#pragma once

// Comparison learners: an extreme learning machine (random sigmoidal hidden
// layer, least-squares output layer) and Gaussian-kernel ridge regression.

#include "cfnet/activation.hpp"
#include "cfnet/samples.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace cfnet::baselines {

using activation::Sigmoid;

/// Relative cutoff for singular values in the minimum-norm solve.
inline constexpr double elm_rank_tolerance = 1e-10;

class ElmModel {
public:
    ElmModel(Eigen::MatrixXd hidden_weights, Eigen::VectorXd hidden_biases, Eigen::VectorXd outer_weights,
             Sigmoid sigma);

    const Eigen::MatrixXd& hidden_weights() const noexcept { return hidden_weights_; } // n_hidden x d
    const Eigen::VectorXd& hidden_biases() const noexcept { return hidden_biases_; }
    const Eigen::VectorXd& outer_weights() const noexcept { return outer_weights_; }
    const Sigmoid& sigmoid() const noexcept { return sigma_; }
    std::size_t hidden_units() const noexcept { return static_cast<std::size_t>(hidden_biases_.size()); }
    std::size_t dimension() const noexcept { return static_cast<std::size_t>(hidden_weights_.cols()); }

    double predict(PointView x) const;
    std::vector<double> predict(const PointSet& xs) const;

private:
    Eigen::MatrixXd hidden_weights_;
    Eigen::VectorXd hidden_biases_;
    Eigen::VectorXd outer_weights_;
    Sigmoid sigma_;
};

/// Hidden parameters drawn i.i.d. uniform on [-1,1], unit by unit (weights
/// then bias), so the first k units do not depend on n_hidden.
struct HiddenLayer {
    Eigen::MatrixXd weights; // n_hidden x d
    Eigen::VectorXd biases;
};
HiddenLayer draw_hidden_layer(std::size_t n_hidden, std::size_t d, std::uint64_t seed);

/// H_ik = sigma(a_k . x_i + b_k).
Eigen::MatrixXd hidden_matrix(const HiddenLayer& layer, std::size_t units, const PointSet& xs, const Sigmoid& sigma);

/// Minimum-norm least-squares solution of H c = y via SVD, discarding
/// singular values below elm_rank_tolerance * sigma_max.
Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& h, const Eigen::VectorXd& y);

ElmModel elm_train(const SampleSet& samples, std::size_t n_hidden, const Sigmoid& sigma, std::uint64_t seed);

/// Kernel ridge regression with k(x,x') = exp(-|x-x'|^2 / gamma^2), solving
/// (K + m lambda I) alpha = y.
class KrrModel {
public:
    KrrModel(PointSet support, Eigen::VectorXd dual_coeffs, double gamma, double lambda);

    const PointSet& support_inputs() const noexcept { return support_; }
    const Eigen::VectorXd& dual_coeffs() const noexcept { return dual_; }
    double gamma() const noexcept { return gamma_; }
    double lambda() const noexcept { return lambda_; }
    std::size_t dimension() const noexcept { return support_.dimension(); }

    double predict(PointView x) const;
    std::vector<double> predict(const PointSet& xs) const;

private:
    PointSet support_;
    Eigen::VectorXd dual_;
    double gamma_;
    double lambda_;
};

double gaussian_kernel(PointView a, PointView b, double gamma) noexcept;

Eigen::MatrixXd kernel_matrix(const PointSet& xs, double gamma);

/// Jitter added to the diagonal when the first Cholesky attempt fails.
inline constexpr double krr_jitter = 1e-10;

/// Throws std::invalid_argument for gamma <= 0 or lambda < 0, and
/// std::runtime_error if the system is not positive definite even after one
/// jittered retry. lambda == 0 is accepted (pure interpolation).
KrrModel krr_train(const SampleSet& samples, double gamma, double lambda);

/// Same as krr_train with a precomputed kernel matrix of samples.inputs.
KrrModel krr_train(const SampleSet& samples, const Eigen::MatrixXd& kernel, double gamma, double lambda);

/// |(K + m lambda I) alpha - y| / |y| for a model trained on `samples`.
double krr_relative_residual(const KrrModel& model, const SampleSet& samples);

} // namespace cfnet::baselines
