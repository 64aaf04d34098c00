#pragma once

// Constructive feed-forward network: cell averages over a Voronoi partition,
// blended along the center chain by shifted sigmoids, refined by repeatedly
// refitting the same construction to the training residuals.
//
// With chain coordinate t(x) = d-bar(center_0, x) and t_j = prefix[j] the
// order-r model evaluates as
//
//   N(x) = G_0 + sum_{j=0}^{n-2} (G_{j+1} - G_j) sigma(w (t(x) - t_j))
//
// which equals sum_j G_j c_j(x) with basis weights c_j summing to one.

#include "cfnet/activation.hpp"
#include "cfnet/geometry.hpp"
#include "cfnet/samples.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace cfnet::network {

using geometry::VoronoiIndex;
using activation::Sigmoid;

/// How an empty cell contributes its mean. `zero` is the 0/0 = 0 convention;
/// `carry_forward` reuses the previous nonempty cell's mean (0 if none yet).
enum class EmptyCellPolicy { zero, carry_forward };

/// Which algebraic form predict() evaluates. Both give the same value up to
/// rounding.
enum class EvalForm { telescoped, basis };

struct CellStats {
    std::vector<std::size_t> counts;
    std::vector<double> means;
};

/// Per-cell mean of `values`, grouped by precomputed cell ids.
CellStats cell_stats(std::span<const std::size_t> cells, std::size_t n_cells, std::span<const double> values,
                     EmptyCellPolicy policy = EmptyCellPolicy::zero);

/// Per-cell mean of `values` with values[i] belonging to samples.inputs[i].
CellStats cell_stats(const VoronoiIndex& index, const SampleSet& samples, std::span<const double> values,
                     EmptyCellPolicy policy = EmptyCellPolicy::zero);

/// c_j(x) for j = 0..n-1.
std::vector<double> basis_weights(const VoronoiIndex& index, const Sigmoid& sigma, double w, PointView x);

class CfnModel {
public:
    CfnModel(std::shared_ptr<const VoronoiIndex> index, Sigmoid sigma, double w, std::vector<double> coeffs,
             int order, EmptyCellPolicy policy = EmptyCellPolicy::zero, EvalForm form = EvalForm::telescoped);

    const VoronoiIndex& index() const noexcept { return *index_; }
    const std::shared_ptr<const VoronoiIndex>& shared_index() const noexcept { return index_; }
    const Sigmoid& sigmoid() const noexcept { return sigma_; }
    double width() const noexcept { return w_; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    int order() const noexcept { return order_; }
    EmptyCellPolicy empty_cell_policy() const noexcept { return policy_; }
    EvalForm form() const noexcept { return form_; }

    CfnModel with_form(EvalForm form) const;

    double predict(PointView x) const;
    std::vector<double> predict(const PointSet& xs) const;

    /// Telescoped evaluation at a chain coordinate t.
    double evaluate_at_coordinate(double t) const;

private:
    std::shared_ptr<const VoronoiIndex> index_;
    Sigmoid sigma_;
    double w_;
    std::vector<double> coeffs_;
    int order_;
    EmptyCellPolicy policy_;
    EvalForm form_;
};

/// Order-1 network with coefficients = cell means of y. Throws on empty
/// samples, non-positive w or a dimension mismatch.
CfnModel build_first_order(std::shared_ptr<const VoronoiIndex> index, const Sigmoid& sigma, double w,
                           const SampleSet& samples, EmptyCellPolicy policy = EmptyCellPolicy::zero);

/// y_i - model(x_i).
std::vector<double> residuals(const CfnModel& model, const SampleSet& samples);

/// One residual refit: coefficients += cell means of the residuals.
CfnModel iterate_residual(const CfnModel& model, const SampleSet& samples);

/// build_first_order followed by r - 1 residual refits.
CfnModel train(std::shared_ptr<const VoronoiIndex> index, const Sigmoid& sigma, double w, int r,
               const SampleSet& samples, EmptyCellPolicy policy = EmptyCellPolicy::zero);

/// Every order 1..r_max of one training run; element k is the order k+1
/// model. Shares the cell assignment and chain coordinates across orders.
std::vector<CfnModel> train_all_orders(std::shared_ptr<const VoronoiIndex> index, const Sigmoid& sigma, double w,
                                       int r_max, const SampleSet& samples,
                                       EmptyCellPolicy policy = EmptyCellPolicy::zero);

/// "auto" or a positive number.
struct WidthSetting {
    bool automatic = true;
    double value = 0.0;

    static WidthSetting parse(const std::string& text);
    std::string to_string() const;

    /// recommended_w(sigma, n, d) when automatic.
    double resolve(const Sigmoid& sigma, std::size_t n, std::size_t d) const;
};

} // namespace cfnet::network
