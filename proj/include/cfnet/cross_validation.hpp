#pragma once

#include "cfnet/learner.hpp"

#include <cstdint>
#include <vector>

namespace cfnet::harness {

struct CvPlan {
    std::size_t folds = 5;
    std::vector<std::size_t> n_grid;            // cfn centers
    std::vector<int> r_grid{1, 2, 3, 4, 5};     // cfn orders
    std::vector<std::size_t> hidden_grid;       // elm hidden units
    std::vector<double> gamma_grid;             // krr kernel widths
    std::vector<double> lambda_grid;            // krr ridge
    std::uint64_t seed = 0;                     // fold shuffle

    /// Default grids for inputs of dimension d and m training samples:
    /// n in {4, 6, 8, 12, 16, ...} up to min(m/4, 512); hidden units 2^2..2^10;
    /// gamma in 2^{-3..3} sqrt(d); lambda in 10^{-8..0}.
    static CvPlan defaults(std::size_t d, std::size_t m);

    /// Grid for `method` in tie-break order (cheapest first: n, then r).
    std::vector<Hyperparameters> candidates(Method method) const;

    void validate(Method method) const;
};

/// Fold id of every sample index: one seeded shuffle, then contiguous blocks
/// whose sizes differ by at most one.
std::vector<std::size_t> fold_assignment(std::size_t m, std::size_t folds, std::uint64_t seed);

struct CvResult {
    Hyperparameters best;
    double best_score = 0.0;
    std::vector<Hyperparameters> candidates;
    std::vector<double> scores; // mean validation RMSE per candidate
};

/// Candidates within cv_tie_tolerance * max(best score, max|y|) of the best
/// score count as tied; the earliest such candidate wins.
inline constexpr double cv_tie_tolerance = 1e-12;

/// Grid search minimizing mean validation RMSE. Requires m >= folds.
CvResult cross_validate(const SampleSet& samples, const CvPlan& plan, Method method, const LearnerOptions& options);

} // namespace cfnet::harness
