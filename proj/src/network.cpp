#include "cfnet/network.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace cfnet::network {
namespace {

void check_samples(const VoronoiIndex& index, const SampleSet& samples) {
    if (samples.empty()) throw std::invalid_argument("cfn: no training samples");
    if (samples.dimension() != index.dimension()) throw std::invalid_argument("cfn: sample dimension mismatch");
}

std::vector<double> chain_coordinates(const VoronoiIndex& index, const PointSet& xs,
                                      std::span<const std::size_t> cells) {
    std::vector<double> t(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) t[i] = index.chain_coordinate(xs[i], cells[i]);
    return t;
}

} // namespace

CellStats cell_stats(std::span<const std::size_t> cells, std::size_t n_cells, std::span<const double> values,
                     EmptyCellPolicy policy) {
    if (cells.size() != values.size()) throw std::invalid_argument("cell_stats: cells/values length mismatch");
    CellStats stats{std::vector<std::size_t>(n_cells, 0), std::vector<double>(n_cells, 0.0)};
    for (std::size_t i = 0; i < cells.size(); ++i) {
        ++stats.counts[cells[i]];
        stats.means[cells[i]] += values[i];
    }
    double carried = 0.0;
    for (std::size_t j = 0; j < n_cells; ++j) {
        if (stats.counts[j] > 0) {
            stats.means[j] /= static_cast<double>(stats.counts[j]);
            carried = stats.means[j];
        } else if (policy == EmptyCellPolicy::carry_forward) {
            stats.means[j] = carried;
        }
    }
    return stats;
}

CellStats cell_stats(const VoronoiIndex& index, const SampleSet& samples, std::span<const double> values,
                     EmptyCellPolicy policy) {
    if (values.size() != samples.size()) throw std::invalid_argument("cell_stats: values length != sample count");
    const auto cells = geometry::assign_cells(index, samples.inputs);
    return cell_stats(cells, index.size(), values, policy);
}

std::vector<double> basis_weights(const VoronoiIndex& index, const Sigmoid& sigma, double w, PointView x) {
    const std::size_t n = index.size();
    if (n == 1) return {1.0};
    const auto& prefix = index.chain().prefix();
    const double t = index.chain_coordinate(x);
    std::vector<double> c(n);
    // step[j] = sigma(w (t - t_j)) for j = 0..n-2
    double prev = sigma(w * (t - prefix[0]));
    c[0] = 1.0 - prev;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double cur = sigma(w * (t - prefix[j]));
        c[j] = prev - cur;
        prev = cur;
    }
    c[n - 1] = prev;
    return c;
}

CfnModel::CfnModel(std::shared_ptr<const VoronoiIndex> index, Sigmoid sigma, double w, std::vector<double> coeffs,
                   int order, EmptyCellPolicy policy, EvalForm form)
    : index_(std::move(index)), sigma_(sigma), w_(w), coeffs_(std::move(coeffs)), order_(order), policy_(policy),
      form_(form) {
    if (!index_) throw std::invalid_argument("CfnModel: null index");
    if (coeffs_.size() != index_->size()) throw std::invalid_argument("CfnModel: coefficient count != center count");
    if (!(w_ > 0.0) || !std::isfinite(w_)) throw std::invalid_argument("CfnModel: w must be positive and finite");
    if (order_ < 1) throw std::invalid_argument("CfnModel: order must be >= 1");
}

CfnModel CfnModel::with_form(EvalForm form) const {
    CfnModel copy = *this;
    copy.form_ = form;
    return copy;
}

double CfnModel::evaluate_at_coordinate(double t) const {
    const auto& prefix = index_->chain().prefix();
    double value = coeffs_[0];
    for (std::size_t j = 0; j + 1 < coeffs_.size(); ++j)
        value += (coeffs_[j + 1] - coeffs_[j]) * sigma_(w_ * (t - prefix[j]));
    return value;
}

double CfnModel::predict(PointView x) const {
    if (x.size() != index_->dimension()) throw std::invalid_argument("CfnModel::predict: dimension mismatch");
    if (form_ == EvalForm::telescoped) return evaluate_at_coordinate(index_->chain_coordinate(x));
    const auto c = basis_weights(*index_, sigma_, w_, x);
    double value = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) value += coeffs_[j] * c[j];
    return value;
}

std::vector<double> CfnModel::predict(const PointSet& xs) const {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = predict(xs[i]);
    return out;
}

CfnModel build_first_order(std::shared_ptr<const VoronoiIndex> index, const Sigmoid& sigma, double w,
                           const SampleSet& samples, EmptyCellPolicy policy) {
    if (!index) throw std::invalid_argument("build_first_order: null index");
    check_samples(*index, samples);
    auto stats = cell_stats(*index, samples, samples.outputs, policy);
    return CfnModel(std::move(index), sigma, w, std::move(stats.means), 1, policy);
}

std::vector<double> residuals(const CfnModel& model, const SampleSet& samples) {
    std::vector<double> e(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) e[i] = samples.outputs[i] - model.predict(samples.inputs[i]);
    return e;
}

CfnModel iterate_residual(const CfnModel& model, const SampleSet& samples) {
    check_samples(model.index(), samples);
    const auto e = residuals(model, samples);
    const auto stats = cell_stats(model.index(), samples, e, model.empty_cell_policy());
    std::vector<double> coeffs = model.coeffs();
    for (std::size_t j = 0; j < coeffs.size(); ++j) coeffs[j] += stats.means[j];
    return CfnModel(model.shared_index(), model.sigmoid(), model.width(), std::move(coeffs), model.order() + 1,
                    model.empty_cell_policy(), model.form());
}

CfnModel train(std::shared_ptr<const VoronoiIndex> index, const Sigmoid& sigma, double w, int r,
               const SampleSet& samples, EmptyCellPolicy policy) {
    if (r < 1) throw std::invalid_argument("train: r must be >= 1");
    return train_all_orders(std::move(index), sigma, w, r, samples, policy).back();
}

std::vector<CfnModel> train_all_orders(std::shared_ptr<const VoronoiIndex> index, const Sigmoid& sigma, double w,
                                       int r_max, const SampleSet& samples, EmptyCellPolicy policy) {
    if (!index) throw std::invalid_argument("train: null index");
    if (r_max < 1) throw std::invalid_argument("train: r must be >= 1");
    check_samples(*index, samples);

    const std::size_t n = index->size();
    const auto cells = geometry::assign_cells(*index, samples.inputs);
    const auto coords = chain_coordinates(*index, samples.inputs, cells);

    std::vector<CfnModel> models;
    models.reserve(static_cast<std::size_t>(r_max));
    std::vector<double> coeffs(n, 0.0);
    std::vector<double> e = samples.outputs;
    for (int k = 1; k <= r_max; ++k) {
        const auto stats = cell_stats(cells, n, e, policy);
        for (std::size_t j = 0; j < n; ++j) coeffs[j] += stats.means[j];
        models.emplace_back(index, sigma, w, coeffs, k, policy);
        if (k == r_max) break;
        const auto& model = models.back();
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = samples.outputs[i] - model.evaluate_at_coordinate(coords[i]);
    }
    return models;
}

WidthSetting WidthSetting::parse(const std::string& text) {
    if (text == "auto") return {};
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument("width must be 'auto' or a positive number, got '" + text + "'");
    return {false, v};
}

std::string WidthSetting::to_string() const {
    if (automatic) return "auto";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

double WidthSetting::resolve(const Sigmoid& sigma, std::size_t n, std::size_t d) const {
    return automatic ? activation::recommended_w(sigma, n, d) : value;
}

} // namespace cfnet::network
