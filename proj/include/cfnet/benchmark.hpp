#pragma once

// Trial orchestration: fresh dataset per trial, per-method cross-validation,
// refit on the full training set, evaluation on the noise-free test set.

#include "cfnet/benchdata.hpp"
#include "cfnet/cross_validation.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace cfnet::harness {

struct TrialOutcome {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    Hyperparameters chosen;
    double train_rmse = 0.0;
    double test_rmse = 0.0;
    double cv_seconds = 0.0;
    double fit_seconds = 0.0;
    double test_seconds = 0.0;
    std::string error; // empty on success

    bool ok() const noexcept { return error.empty(); }
};

struct MethodSummary {
    Method method = Method::cfn;
    std::size_t failures = 0;
    double train_rmse_mean = 0.0;
    double train_rmse_std = 0.0;
    double test_rmse_mean = 0.0;
    double test_rmse_std = 0.0;
    double cv_time_s = 0.0;   // mean per trial, whole grid search
    double fit_time_s = 0.0;  // mean per trial, refit at the chosen parameters
    double test_time_s = 0.0; // mean per trial, test-set prediction
    std::vector<TrialOutcome> trials;
};

struct BenchReport {
    benchdata::DatasetSpec data;
    std::vector<MethodSummary> rows;

    const MethodSummary& row(Method method) const;
};

struct BenchConfig {
    benchdata::DatasetSpec data;
    CvPlan plan;
    std::vector<Method> methods{Method::cfn, Method::elm, Method::krr};
    std::size_t trials = 20;
    LearnerOptions learner;
    /// Worker threads over trials. Results do not depend on this.
    std::size_t workers = 1;
};

/// Trial t uses dataset seed data.seed + t, fold seed plan.seed + t and ELM
/// seed learner.seed + t. A method that throws in one trial is recorded in
/// that trial's outcome and excluded from the aggregates.
BenchReport run_benchmark(const BenchConfig& config);

/// One trial of one method with an explicit dataset.
TrialOutcome run_trial(const benchdata::Dataset& data, const CvPlan& plan, Method method,
                       const LearnerOptions& options);

/// method,train_rmse_mean,train_rmse_std,test_rmse_mean,test_rmse_std,cv_time_s,fit_time_s,test_time_s
void write_report_csv(const BenchReport& report, std::ostream& out);

/// Per-trial accuracy and chosen parameters, no timings. Byte-identical for
/// identical configurations.
void write_trials_csv(const BenchReport& report, std::ostream& out);

std::string report_json(const BenchReport& report);

} // namespace cfnet::harness
