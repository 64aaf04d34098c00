#include "cfnet/cross_validation.hpp"

#include "cfnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace cfnet::harness {
namespace {

struct Fold {
    SampleSet train;
    SampleSet valid;
};

std::vector<Fold> make_folds(const SampleSet& samples, std::size_t folds, std::uint64_t seed) {
    const auto assignment = fold_assignment(samples.size(), folds, seed);
    std::vector<Fold> out;
    out.reserve(folds);
    for (std::size_t f = 0; f < folds; ++f) {
        std::vector<std::size_t> tr, va;
        for (std::size_t i = 0; i < assignment.size(); ++i) (assignment[i] == f ? va : tr).push_back(i);
        out.push_back({samples.select(tr), samples.select(va)});
    }
    return out;
}

double validation_rmse(const std::vector<double>& predictions, const SampleSet& valid) {
    return rmse(predictions, valid.outputs);
}

// scores[c] accumulates per-fold validation RMSE for candidate c.
void score_cfn(const std::vector<Fold>& folds, const CvPlan& plan, const LearnerOptions& options,
               const std::vector<Hyperparameters>& candidates, std::vector<double>& scores) {
    const std::size_t d = folds.front().train.dimension();
    IndexCache cache(center_domain(options, d));
    const int r_max = *std::max_element(plan.r_grid.begin(), plan.r_grid.end());
    std::vector<std::size_t> ns;
    for (const auto& c : candidates)
        if (ns.empty() || ns.back() != c.n) ns.push_back(c.n);
    for (const auto& fold : folds) {
        for (std::size_t n : ns) {
            auto index = cache.get(n);
            const double w = options.width.resolve(options.sigmoid, n, d);
            const auto models = network::train_all_orders(index, options.sigmoid, w, r_max, fold.train,
                                                           options.empty_cells);
            for (std::size_t c = 0; c < candidates.size(); ++c) {
                if (candidates[c].n != n) continue;
                const auto& model = models[static_cast<std::size_t>(candidates[c].r - 1)];
                scores[c] += validation_rmse(model.predict(fold.valid.inputs), fold.valid);
            }
        }
    }
}

void score_elm(const std::vector<Fold>& folds, const CvPlan& plan, const LearnerOptions& options,
               const std::vector<Hyperparameters>& candidates, std::vector<double>& scores) {
    const std::size_t d = folds.front().train.dimension();
    const std::size_t max_hidden = *std::max_element(plan.hidden_grid.begin(), plan.hidden_grid.end());
    const auto layer = baselines::draw_hidden_layer(max_hidden, d, options.seed);
    for (const auto& fold : folds) {
        const Eigen::MatrixXd h_train = baselines::hidden_matrix(layer, max_hidden, fold.train.inputs, options.sigmoid);
        const Eigen::MatrixXd h_valid = baselines::hidden_matrix(layer, max_hidden, fold.valid.inputs, options.sigmoid);
        const Eigen::Map<const Eigen::VectorXd> y(fold.train.outputs.data(),
                                                  static_cast<Eigen::Index>(fold.train.size()));
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            const auto k = static_cast<Eigen::Index>(candidates[c].n);
            const Eigen::VectorXd weights = baselines::min_norm_solve(h_train.leftCols(k), y);
            const Eigen::VectorXd pred = h_valid.leftCols(k) * weights;
            scores[c] += validation_rmse(std::vector<double>(pred.data(), pred.data() + pred.size()), fold.valid);
        }
    }
}

void score_krr(const std::vector<Fold>& folds, const CvPlan& plan, const std::vector<Hyperparameters>& candidates,
               std::vector<double>& scores) {
    for (const auto& fold : folds) {
        const auto m_tr = static_cast<Eigen::Index>(fold.train.size());
        const auto m_va = static_cast<Eigen::Index>(fold.valid.size());
        for (double gamma : plan.gamma_grid) {
            const Eigen::MatrixXd k_train = baselines::kernel_matrix(fold.train.inputs, gamma);
            Eigen::MatrixXd k_valid(m_va, m_tr);
            for (Eigen::Index i = 0; i < m_va; ++i)
                for (Eigen::Index j = 0; j < m_tr; ++j)
                    k_valid(i, j) = baselines::gaussian_kernel(fold.valid.inputs[static_cast<std::size_t>(i)],
                                                               fold.train.inputs[static_cast<std::size_t>(j)], gamma);
            for (std::size_t c = 0; c < candidates.size(); ++c) {
                if (candidates[c].gamma != gamma) continue;
                try {
                    const auto model = baselines::krr_train(fold.train, k_train, gamma, candidates[c].lambda);
                    const Eigen::VectorXd pred = k_valid * model.dual_coeffs();
                    scores[c] += validation_rmse(std::vector<double>(pred.data(), pred.data() + pred.size()),
                                                 fold.valid);
                } catch (const std::runtime_error&) {
                    scores[c] = std::numeric_limits<double>::infinity();
                }
            }
        }
    }
}

std::vector<std::size_t> default_n_grid(std::size_t m) {
    const std::size_t cap = std::min<std::size_t>(std::max<std::size_t>(m / 4, 4), 512);
    std::vector<std::size_t> grid;
    for (std::size_t p = 4; p <= cap; p *= 2) {
        grid.push_back(p);
        if (p + p / 2 <= cap) grid.push_back(p + p / 2);
    }
    return grid;
}

} // namespace

CvPlan CvPlan::defaults(std::size_t d, std::size_t m) {
    CvPlan plan;
    plan.n_grid = default_n_grid(m);
    for (int k = 2; k <= 10; ++k) plan.hidden_grid.push_back(std::size_t{1} << k);
    const double root_d = std::sqrt(static_cast<double>(d));
    for (int k = -3; k <= 3; ++k) plan.gamma_grid.push_back(std::ldexp(1.0, k) * root_d);
    for (int k = -8; k <= 0; ++k) plan.lambda_grid.push_back(std::pow(10.0, k));
    return plan;
}

std::vector<Hyperparameters> CvPlan::candidates(Method method) const {
    std::vector<Hyperparameters> out;
    switch (method) {
    case Method::cfn: {
        auto ns = n_grid;
        auto rs = r_grid;
        std::sort(ns.begin(), ns.end());
        std::sort(rs.begin(), rs.end());
        ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
        rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
        for (auto n : ns)
            for (int r : rs) out.push_back({Method::cfn, n, r, 0.0, 0.0});
        break;
    }
    case Method::elm: {
        auto hs = hidden_grid;
        std::sort(hs.begin(), hs.end());
        hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
        for (auto h : hs) out.push_back({Method::elm, h, 1, 0.0, 0.0});
        break;
    }
    case Method::krr:
        for (double g : gamma_grid)
            for (double l : lambda_grid) out.push_back({Method::krr, 0, 1, g, l});
        break;
    }
    return out;
}

void CvPlan::validate(Method method) const {
    if (folds < 2) throw std::invalid_argument("cv: folds must be >= 2");
    switch (method) {
    case Method::cfn:
        if (n_grid.empty() || r_grid.empty()) throw std::invalid_argument("cv: empty cfn grid");
        for (auto n : n_grid)
            if (n == 0) throw std::invalid_argument("cv: n must be >= 1");
        for (int r : r_grid)
            if (r < 1) throw std::invalid_argument("cv: r must be >= 1");
        break;
    case Method::elm:
        if (hidden_grid.empty()) throw std::invalid_argument("cv: empty elm grid");
        for (auto h : hidden_grid)
            if (h == 0) throw std::invalid_argument("cv: hidden units must be >= 1");
        break;
    case Method::krr:
        if (gamma_grid.empty() || lambda_grid.empty()) throw std::invalid_argument("cv: empty krr grid");
        for (double g : gamma_grid)
            if (!(g > 0.0)) throw std::invalid_argument("cv: gamma must be positive");
        for (double l : lambda_grid)
            if (!(l >= 0.0)) throw std::invalid_argument("cv: lambda must be nonnegative");
        break;
    }
}

std::vector<std::size_t> fold_assignment(std::size_t m, std::size_t folds, std::uint64_t seed) {
    if (folds < 2) throw std::invalid_argument("fold_assignment: folds must be >= 2");
    if (m < folds) throw std::invalid_argument("fold_assignment: fewer samples than folds");
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::size_t> fold(m);
    for (std::size_t pos = 0; pos < m; ++pos) fold[order[pos]] = pos * folds / m;
    return fold;
}

CvResult cross_validate(const SampleSet& samples, const CvPlan& plan, Method method, const LearnerOptions& options) {
    plan.validate(method);
    if (samples.size() < plan.folds) throw std::invalid_argument("cross_validate: fewer samples than folds");

    CvResult result;
    result.candidates = plan.candidates(method);
    result.scores.assign(result.candidates.size(), 0.0);
    const auto folds = make_folds(samples, plan.folds, plan.seed);

    switch (method) {
    case Method::cfn: score_cfn(folds, plan, options, result.candidates, result.scores); break;
    case Method::elm: score_elm(folds, plan, options, result.candidates, result.scores); break;
    case Method::krr: score_krr(folds, plan, result.candidates, result.scores); break;
    }
    for (auto& s : result.scores) s /= static_cast<double>(plan.folds);

    const double best = *std::min_element(result.scores.begin(), result.scores.end());
    const double tie = cv_tie_tolerance * std::max(best, samples.bound());
    for (std::size_t c = 0; c < result.scores.size(); ++c) {
        if (result.scores[c] <= best + tie) {
            result.best = result.candidates[c];
            result.best_score = result.scores[c];
            break;
        }
    }
    return result;
}

} // namespace cfnet::harness
