// cfnet: data generation, training, prediction, cross-validation and
// benchmarking for constructive feed-forward networks and baselines.

#include "cfnet/benchmark.hpp"
#include "cfnet/metrics.hpp"
#include "cfnet/persistence.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace cfnet;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class T>
std::vector<T> parse_list(const std::string& text) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        if constexpr (std::is_floating_point_v<T>) {
            out.push_back(static_cast<T>(std::stod(item, &used)));
        } else {
            const long long v = std::stoll(item, &used);
            if (v < 0) throw std::invalid_argument("negative value in list '" + text + "'");
            out.push_back(static_cast<T>(v));
        }
        if (used != item.size()) throw std::invalid_argument("bad list item '" + item + "'");
    }
    if (out.empty()) throw std::invalid_argument("empty list '" + text + "'");
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

// Flags shared by train, cv and benchmark.
struct LearnerFlags {
    std::string activation = "logistic";
    std::string width = "auto";
    std::string empty_cells = "zero";
    std::string domain; // "LO,HI" cube; empty = benchmark input domain
    std::uint64_t seed = 0;

    void attach(CLI::App* app) {
        app->add_option("--activation", activation, "logistic | tanh | arctan | gompertz[:a,b]")
            ->capture_default_str();
        app->add_option("--w", width, "Sigmoid width: auto or a positive number")->capture_default_str();
        app->add_option("--empty-cells", empty_cells, "Empty cell handling: zero | carry_forward")
            ->check(CLI::IsMember({"zero", "carry_forward"}))
            ->capture_default_str();
        app->add_option("--domain", domain, "Center domain as LO,HI (cube); default [-1,1] for d=1, [0,1]^d else");
        app->add_option("--seed", seed, "Seed (folds, ELM hidden layer)")->capture_default_str();
    }

    harness::LearnerOptions options(std::size_t d) const {
        harness::LearnerOptions o;
        o.sigmoid = activation::Sigmoid::parse(activation);
        o.width = network::WidthSetting::parse(width);
        o.empty_cells = empty_cells == "zero" ? network::EmptyCellPolicy::zero : network::EmptyCellPolicy::carry_forward;
        if (!domain.empty()) {
            const auto lohi = parse_list<double>(domain);
            if (lohi.size() != 2) throw std::invalid_argument("--domain expects LO,HI");
            o.domain = geometry::Box::cube(d, lohi[0], lohi[1]);
            o.domain->validate();
        }
        o.seed = seed;
        return o;
    }
};

struct GridFlags {
    std::size_t folds = 5;
    std::string n_grid, r_grid, hidden_grid, gamma_grid, lambda_grid;

    void attach(CLI::App* app) {
        app->add_option("--folds", folds, "Cross-validation folds")->capture_default_str();
        app->add_option("--n-grid", n_grid, "CFN center counts, comma separated");
        app->add_option("--r-grid", r_grid, "CFN orders, comma separated (default 1..5)");
        app->add_option("--hidden-grid", hidden_grid, "ELM hidden units, comma separated");
        app->add_option("--gamma-grid", gamma_grid, "KRR kernel widths, comma separated");
        app->add_option("--lambda-grid", lambda_grid, "KRR ridge parameters, comma separated");
    }

    harness::CvPlan plan(std::size_t d, std::size_t m, std::uint64_t seed) const {
        auto p = harness::CvPlan::defaults(d, m);
        p.folds = folds;
        p.seed = seed;
        if (!n_grid.empty()) p.n_grid = parse_list<std::size_t>(n_grid);
        if (!r_grid.empty()) p.r_grid = parse_list<int>(r_grid);
        if (!hidden_grid.empty()) p.hidden_grid = parse_list<std::size_t>(hidden_grid);
        if (!gamma_grid.empty()) p.gamma_grid = parse_list<double>(gamma_grid);
        if (!lambda_grid.empty()) p.lambda_grid = parse_list<double>(lambda_grid);
        return p;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constructive feed-forward network regression toolkit"};
    app.set_config("--config", "", "TOML-style config file; command-line flags take precedence");
    app.require_subcommand(1);

    // gen-data
    auto* gen = app.add_subcommand("gen-data", "Sample a synthetic train/test pair");
    std::string g_fn = "f1", g_out_train, g_out_test;
    benchdata::DatasetSpec g_spec;
    gen->add_option("--fn", g_fn, "Target f1..f5")->capture_default_str();
    gen->add_option("--d", g_spec.d, "Input dimension")->capture_default_str();
    gen->add_option("--m-train", g_spec.m_train, "Training samples")->capture_default_str();
    gen->add_option("--m-test", g_spec.m_test, "Test samples")->capture_default_str();
    gen->add_option("--noise-var", g_spec.noise_variance, "Noise variance of training outputs")->capture_default_str();
    gen->add_option("--seed", g_spec.seed, "Seed")->capture_default_str();
    gen->add_option("--out-train", g_out_train, "Training CSV")->required();
    gen->add_option("--out-test", g_out_test, "Test CSV")->required();

    // train
    auto* train = app.add_subcommand("train", "Fit one model at fixed hyperparameters");
    std::string t_data, t_method = "cfn", t_model;
    std::size_t t_n = 16;
    int t_r = 1;
    double t_gamma = 0.5, t_lambda = 1e-4;
    LearnerFlags t_flags;
    train->add_option("--data", t_data, "Training CSV")->required();
    train->add_option("--method", t_method, "cfn | elm | krr")->capture_default_str();
    train->add_option("--n", t_n, "Centers (cfn) or hidden units (elm)")->capture_default_str();
    train->add_option("--r", t_r, "CFN order")->capture_default_str();
    train->add_option("--gamma", t_gamma, "KRR kernel width")->capture_default_str();
    train->add_option("--lambda", t_lambda, "KRR ridge parameter")->capture_default_str();
    train->add_option("--model", t_model, "Output model JSON")->required();
    t_flags.attach(train);

    // predict
    auto* pred = app.add_subcommand("predict", "Evaluate a saved model on a dataset");
    std::string p_model, p_data, p_out;
    pred->add_option("--model", p_model, "Model JSON")->required();
    pred->add_option("--data", p_data, "Input CSV (x1..xd,y; y is used for the reported RMSE)")->required();
    pred->add_option("--out", p_out, "Output CSV with predictions in the y column")->required();

    // cv
    auto* cv = app.add_subcommand("cv", "Grid search by k-fold cross-validation");
    std::string c_data, c_method = "cfn", c_scores;
    GridFlags c_grid;
    LearnerFlags c_flags;
    cv->add_option("--data", c_data, "Training CSV")->required();
    cv->add_option("--method", c_method, "cfn | elm | krr")->capture_default_str();
    cv->add_option("--scores", c_scores, "Optional CSV of every candidate's score");
    c_grid.attach(cv);
    c_flags.attach(cv);

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "Repeated trials with CV, refit and test evaluation");
    std::string b_fn = "f1", b_methods = "cfn,elm,krr", b_report, b_trials_out, b_json;
    benchdata::DatasetSpec b_spec;
    std::size_t b_trials = 20, b_workers = 1;
    GridFlags b_grid;
    LearnerFlags b_flags;
    bench->add_option("--fn", b_fn, "Target f1..f5")->capture_default_str();
    bench->add_option("--d", b_spec.d, "Input dimension")->capture_default_str();
    bench->add_option("--m", b_spec.m_train, "Training samples per trial")->capture_default_str();
    bench->add_option("--m-test", b_spec.m_test, "Test samples per trial")->capture_default_str();
    bench->add_option("--noise-var", b_spec.noise_variance, "Noise variance")->capture_default_str();
    bench->add_option("--trials", b_trials, "Independent trials")->capture_default_str();
    bench->add_option("--methods", b_methods, "Comma separated subset of cfn,elm,krr")->capture_default_str();
    bench->add_option("--report", b_report, "Summary CSV")->required();
    bench->add_option("--trials-out", b_trials_out, "Per-trial CSV without timings");
    bench->add_option("--json", b_json, "Full JSON report");
    bench->add_option("--workers", b_workers, "Threads over trials")->capture_default_str();
    b_grid.attach(bench);
    b_flags.attach(bench);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            g_spec.fn = benchdata::TargetFn::parse(g_fn).id();
            const auto data = benchdata::generate(g_spec);
            io::save_dataset(data.train, g_out_train);
            io::save_dataset(data.test, g_out_test);
        } else if (*train) {
            const auto samples = io::load_dataset(t_data);
            const auto options = t_flags.options(samples.dimension());
            harness::Hyperparameters params{harness::parse_method(t_method), t_n, t_r, t_gamma, t_lambda};
            const auto model = harness::fit(samples, params, options);
            io::ModelMetadata meta;
            meta.seed = t_flags.seed;
            meta.train_rmse = harness::rmse(predict(model, samples.inputs), samples.outputs);
            io::save_model(model, meta, t_model);
            std::cout << "train_rmse " << fmt(*meta.train_rmse) << '\n';
        } else if (*pred) {
            const auto model = io::load_model(p_model);
            const auto samples = io::load_dataset(p_data);
            if (samples.dimension() != model_dimension(model))
                throw std::invalid_argument("data dimension does not match the model");
            const auto yhat = predict(model, samples.inputs);
            io::save_dataset(SampleSet{samples.inputs, yhat}, p_out);
            std::cout << "rmse " << fmt(harness::rmse(yhat, samples.outputs)) << '\n';
        } else if (*cv) {
            const auto samples = io::load_dataset(c_data);
            const auto method = harness::parse_method(c_method);
            const auto plan = c_grid.plan(samples.dimension(), samples.size(), c_flags.seed);
            const auto result = harness::cross_validate(samples, plan, method, c_flags.options(samples.dimension()));
            if (!c_scores.empty()) {
                auto out = open_out(c_scores);
                out << "params,cv_rmse\n";
                for (std::size_t c = 0; c < result.candidates.size(); ++c)
                    out << '"' << result.candidates[c].describe() << "\"," << fmt(result.scores[c]) << '\n';
            }
            std::cout << result.best.describe() << " cv_rmse " << fmt(result.best_score) << '\n';
        } else if (*bench) {
            harness::BenchConfig config;
            b_spec.fn = benchdata::TargetFn::parse(b_fn).id();
            b_spec.seed = b_flags.seed;
            config.data = b_spec;
            config.plan = b_grid.plan(b_spec.d, b_spec.m_train, b_flags.seed);
            config.methods.clear();
            std::stringstream ss(b_methods);
            for (std::string name; std::getline(ss, name, ',');)
                if (!name.empty()) config.methods.push_back(harness::parse_method(name));
            config.trials = b_trials;
            config.learner = b_flags.options(b_spec.d);
            config.workers = b_workers;
            const auto report = harness::run_benchmark(config);
            {
                auto out = open_out(b_report);
                harness::write_report_csv(report, out);
            }
            if (!b_trials_out.empty()) {
                auto out = open_out(b_trials_out);
                harness::write_trials_csv(report, out);
            }
            if (!b_json.empty()) open_out(b_json) << harness::report_json(report) << '\n';
            harness::write_report_csv(report, std::cout);
            for (const auto& row : report.rows)
                if (row.failures) std::cerr << harness::to_string(row.method) << ": " << row.failures << " failed trials\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
