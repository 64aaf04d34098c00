#include "cfnet/benchmark.hpp"

#include "cfnet/metrics.hpp"

#include "json.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace cfnet::harness {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

MethodSummary summarize(Method method, std::vector<TrialOutcome> trials) {
    MethodSummary row;
    row.method = method;
    std::vector<double> train, test, cv, fitt, testt;
    for (const auto& t : trials) {
        if (!t.ok()) {
            ++row.failures;
            continue;
        }
        train.push_back(t.train_rmse);
        test.push_back(t.test_rmse);
        cv.push_back(t.cv_seconds);
        fitt.push_back(t.fit_seconds);
        testt.push_back(t.test_seconds);
    }
    if (!train.empty()) {
        row.train_rmse_mean = mean(train);
        row.train_rmse_std = stddev(train);
        row.test_rmse_mean = mean(test);
        row.test_rmse_std = stddev(test);
        row.cv_time_s = mean(cv);
        row.fit_time_s = mean(fitt);
        row.test_time_s = mean(testt);
    }
    row.trials = std::move(trials);
    return row;
}

} // namespace

const MethodSummary& BenchReport::row(Method method) const {
    for (const auto& r : rows)
        if (r.method == method) return r;
    throw std::out_of_range("BenchReport: method not in report");
}

TrialOutcome run_trial(const benchdata::Dataset& data, const CvPlan& plan, Method method,
                       const LearnerOptions& options) {
    TrialOutcome out;
    try {
        auto start = Clock::now();
        const auto cv = cross_validate(data.train, plan, method, options);
        out.cv_seconds = seconds_since(start);
        out.chosen = cv.best;

        start = Clock::now();
        const auto model = fit(data.train, cv.best, options);
        out.fit_seconds = seconds_since(start);

        out.train_rmse = rmse(predict(model, data.train.inputs), data.train.outputs);
        start = Clock::now();
        const auto test_pred = predict(model, data.test.inputs);
        out.test_seconds = seconds_since(start);
        out.test_rmse = rmse(test_pred, data.test.outputs);
    } catch (const std::exception& e) {
        out.error = e.what();
        if (out.error.empty()) out.error = "unknown error";
    }
    return out;
}

BenchReport run_benchmark(const BenchConfig& config) {
    if (config.trials == 0) throw std::invalid_argument("run_benchmark: trials must be >= 1");
    if (config.methods.empty()) throw std::invalid_argument("run_benchmark: no methods");

    const std::size_t n_methods = config.methods.size();
    std::vector<std::vector<TrialOutcome>> outcomes(n_methods, std::vector<TrialOutcome>(config.trials));

    auto run_one = [&](std::size_t t) {
        auto spec = config.data;
        spec.seed = config.data.seed + t;
        const auto data = benchdata::generate(spec);
        auto plan = config.plan;
        plan.seed = config.plan.seed + t;
        auto options = config.learner;
        options.seed = config.learner.seed + t;
        for (std::size_t k = 0; k < n_methods; ++k) {
            auto outcome = run_trial(data, plan, config.methods[k], options);
            outcome.trial = t;
            outcome.seed = spec.seed;
            outcomes[k][t] = std::move(outcome);
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(config.workers, config.trials));
    if (workers == 1) {
        for (std::size_t t = 0; t < config.trials; ++t) run_one(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t t = next++; t < config.trials; t = next++) run_one(t);
            });
        for (auto& th : pool) th.join();
    }

    BenchReport report;
    report.data = config.data;
    for (std::size_t k = 0; k < n_methods; ++k)
        report.rows.push_back(summarize(config.methods[k], std::move(outcomes[k])));
    return report;
}

void write_report_csv(const BenchReport& report, std::ostream& out) {
    out << "method,train_rmse_mean,train_rmse_std,test_rmse_mean,test_rmse_std,cv_time_s,fit_time_s,test_time_s\n";
    for (const auto& r : report.rows)
        out << to_string(r.method) << ',' << fmt(r.train_rmse_mean) << ',' << fmt(r.train_rmse_std) << ','
            << fmt(r.test_rmse_mean) << ',' << fmt(r.test_rmse_std) << ',' << fmt(r.cv_time_s) << ','
            << fmt(r.fit_time_s) << ',' << fmt(r.test_time_s) << '\n';
}

void write_trials_csv(const BenchReport& report, std::ostream& out) {
    out << "method,trial,seed,params,train_rmse,test_rmse,error\n";
    for (const auto& r : report.rows)
        for (const auto& t : r.trials)
            out << to_string(r.method) << ',' << t.trial << ',' << t.seed << ",\"" << t.chosen.describe() << "\","
                << fmt(t.train_rmse) << ',' << fmt(t.test_rmse) << ",\"" << t.error << "\"\n";
}

std::string report_json(const BenchReport& report) {
    nlohmann::json j;
    j["data"] = {{"fn", benchdata::TargetFn(report.data.fn).name()},
                 {"d", report.data.d},
                 {"m_train", report.data.m_train},
                 {"m_test", report.data.m_test},
                 {"noise_variance", report.data.noise_variance},
                 {"seed", report.data.seed}};
    auto& rows = j["methods"] = nlohmann::json::array();
    for (const auto& r : report.rows) {
        nlohmann::json trials = nlohmann::json::array();
        for (const auto& t : r.trials)
            trials.push_back({{"trial", t.trial},
                              {"seed", t.seed},
                              {"params", t.chosen.describe()},
                              {"train_rmse", t.train_rmse},
                              {"test_rmse", t.test_rmse},
                              {"cv_time_s", t.cv_seconds},
                              {"fit_time_s", t.fit_seconds},
                              {"test_time_s", t.test_seconds},
                              {"error", t.error}});
        rows.push_back({{"method", to_string(r.method)},
                        {"failures", r.failures},
                        {"train_rmse_mean", r.train_rmse_mean},
                        {"train_rmse_std", r.train_rmse_std},
                        {"test_rmse_mean", r.test_rmse_mean},
                        {"test_rmse_std", r.test_rmse_std},
                        {"cv_time_s", r.cv_time_s},
                        {"fit_time_s", r.fit_time_s},
                        {"test_time_s", r.test_time_s},
                        {"trials", std::move(trials)}});
    }
    return j.dump(2);
}

} // namespace cfnet::harness
