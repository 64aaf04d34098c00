#include "cfnet/network.hpp"

#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

using namespace cfnet;
using namespace cfnet::network;
using cfnet::activation::Sigmoid;

namespace {

std::shared_ptr<const VoronoiIndex> make_index(const PointSet& centers) {
    return std::make_shared<const VoronoiIndex>(geometry::CenterChain::from_ordered(centers));
}

std::shared_ptr<const VoronoiIndex> quasi_index(std::size_t n, std::size_t d) {
    const auto box = d == 1 ? geometry::Box::cube(1, -1.0, 1.0) : geometry::Box::cube(d, 0.0, 1.0);
    return std::make_shared<const VoronoiIndex>(geometry::quasi_uniform_chain(n, box));
}

PointSet line(std::initializer_list<double> xs) {
    PointSet ps(1);
    for (double x : xs) ps.push_back(Point{x});
    return ps;
}

SampleSet random_samples(std::size_t m, std::size_t d, std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::normal_distribution<double> noise(0.0, 1.0);
    PointSet xs(d);
    std::vector<double> ys;
    Point p(d);
    for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        for (auto& v : p) s += std::sin(3.0 * (v = u(rng)));
        xs.push_back(p);
        ys.push_back(s + 0.1 * noise(rng));
    }
    return {std::move(xs), std::move(ys)};
}

CfnModel random_model(std::shared_ptr<const VoronoiIndex> index, double w, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::vector<double> g(index->size());
    for (auto& v : g) v = u(rng);
    return CfnModel(std::move(index), Sigmoid::logistic(), w, std::move(g), 1);
}

} // namespace

TEST_CASE("cell statistics") {
    SUBCASE("singleton cells") {
        const auto index = make_index(line({-0.5, 0.5}));
        const SampleSet s(line({-0.6, 0.6}), {0.0, 2.0});
        const auto st = cell_stats(*index, s, s.outputs);
        CHECK(st.counts == std::vector<std::size_t>{1, 1});
        CHECK(st.means == std::vector<double>{0.0, 2.0});
    }
    SUBCASE("everything in the first cell") {
        const auto index = make_index(line({0.0, 1.0, 2.0}));
        const SampleSet s(line({-0.1, 0.2, 0.3}), {4.5, 4.5, 4.5});
        const auto st = cell_stats(*index, s, s.outputs);
        CHECK(st.counts == std::vector<std::size_t>{3, 0, 0});
        CHECK(st.means == std::vector<double>{4.5, 0.0, 0.0});
        const auto cf = cell_stats(*index, s, s.outputs, EmptyCellPolicy::carry_forward);
        CHECK(cf.means == std::vector<double>{4.5, 4.5, 4.5});
    }
    SUBCASE("group-by oracle") {
        std::mt19937_64 rng(3);
        const auto index = quasi_index(10, 2);
        const auto s = random_samples(200, 2, rng, 0.0, 1.0);
        const auto st = cell_stats(*index, s, s.outputs);
        std::vector<double> sum(10, 0.0);
        std::vector<std::size_t> cnt(10, 0);
        for (std::size_t i = 0; i < s.size(); ++i) {
            std::size_t best = 0;
            for (std::size_t j = 1; j < 10; ++j)
                if (squared_distance(s.inputs[i], index->chain().center(j)) <
                    squared_distance(s.inputs[i], index->chain().center(best)))
                    best = j;
            sum[best] += s.outputs[i];
            ++cnt[best];
        }
        CHECK(std::accumulate(st.counts.begin(), st.counts.end(), std::size_t{0}) == 200);
        for (std::size_t j = 0; j < 10; ++j) {
            CHECK(st.counts[j] == cnt[j]);
            CHECK(st.means[j] == doctest::Approx(cnt[j] ? sum[j] / cnt[j] : 0.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("basis weights") {
    const auto sigma = Sigmoid::logistic();
    CHECK(basis_weights(*make_index(line({0.3})), sigma, 5.0, Point{0.9}) == std::vector<double>{1.0});

    // Four equispaced centers, x on the third: the third and fourth weights
    // share the central sigmoid value, the rest sit in the saturated tails.
    const auto index = make_index(geometry::equispaced_centers(4, -1.0, 1.0));
    const auto c = basis_weights(*index, sigma, 1000.0, Point{0.25});
    REQUIRE(c.size() == 4);
    CHECK(c[0] == doctest::Approx(0.0));
    CHECK(c[1] == doctest::Approx(0.0));
    CHECK(c[2] == doctest::Approx(0.5));
    CHECK(c[3] == doctest::Approx(0.5));
    CHECK(c[0] < 1e-200);
    CHECK(c[1] < 1e-200);
}

TEST_CASE("basis weights sum to one") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (std::size_t d : {1, 2, 3}) {
        for (std::size_t n : {2, 7, 33}) {
            const auto index = quasi_index(n, d);
            for (double w : {0.1, 10.0, activation::recommended_w(Sigmoid::logistic(), n, d)})
                for (const auto& s : {Sigmoid::logistic(), Sigmoid::tanh(), Sigmoid::arctan(), Sigmoid::gompertz()})
                    for (int k = 0; k < 30; ++k) {
                        Point x(d);
                        for (auto& v : x) v = u(rng);
                        const auto c = basis_weights(*index, s, w, x);
                        CHECK(std::abs(std::accumulate(c.begin(), c.end(), 0.0) - 1.0) <= 1e-12);
                    }
        }
    }
}

TEST_CASE("two-center worked example") {
    const auto index = make_index(line({-0.5, 0.5}));
    const SampleSet s(line({-0.6, 0.6}), {0.0, 2.0});
    const double w = 3.0;
    const auto model = build_first_order(index, Sigmoid::logistic(), w, s);
    CHECK(model.coeffs() == std::vector<double>{0.0, 2.0});
    CHECK(model.predict(Point{0.6}) == doctest::Approx(2.0 * Sigmoid::logistic()(1.1 * w)).epsilon(1e-14));
    CHECK(model.predict(Point{-0.6}) == doctest::Approx(2.0 * Sigmoid::logistic()(0.1 * w)).epsilon(1e-14));
}

TEST_CASE("telescoped and basis forms agree") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.2, 1.2);
    for (std::size_t d : {1, 2, 4}) {
        const auto index = quasi_index(25, d);
        for (double w : {1.0, 50.0, activation::recommended_w(Sigmoid::logistic(), 25, d)}) {
            const auto tele = random_model(index, w, rng);
            const auto basis = tele.with_form(EvalForm::basis);
            for (int k = 0; k < 100; ++k) {
                Point x(d);
                for (auto& v : x) v = u(rng);
                const double a = tele.predict(x), b = basis.predict(x);
                CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
            }
        }
    }
}

TEST_CASE("constant data is reproduced exactly") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t d : {1, 2}) {
        const std::size_t n = 8;
        const auto index = quasi_index(n, d);
        auto s = random_samples(400, d, rng, d == 1 ? -1.0 : 0.0, 1.0);
        for (auto& y : s.outputs) y = 3.7;
        const auto st = cell_stats(*index, s, s.outputs);
        for (auto c : st.counts) REQUIRE(c > 0);
        for (double w : {0.5, 20.0, 1e4})
            for (int r : {1, 3}) {
                const auto model = train(index, Sigmoid::logistic(), w, r, s);
                for (int k = 0; k < 50; ++k) {
                    Point x(d);
                    for (auto& v : x) v = u(rng);
                    CHECK(std::abs(model.predict(x) - 3.7) <= 1e-12);
                    CHECK(std::abs(model.with_form(EvalForm::basis).predict(x) - 3.7) <= 1e-12);
                }
                for (double g : model.coeffs()) CHECK(std::abs(g - 3.7) <= 1e-9);
            }
    }
}

TEST_CASE("a single center predicts the sample mean") {
    const auto index = make_index(line({0.0}));
    const SampleSet s(line({-0.3, 0.1, 0.9}), {1.0, 2.0, 6.0});
    const auto model = build_first_order(index, Sigmoid::logistic(), 7.0, s);
    CHECK(model.predict(Point{0.4}) == doctest::Approx(3.0));
    CHECK(model.predict(Point{-9.0}) == doctest::Approx(3.0));
}

TEST_CASE("residual iteration") {
    std::mt19937_64 rng(21);
    const auto index = quasi_index(16, 1);
    const auto s = random_samples(300, 1, rng, -1.0, 1.0);
    const auto sigma = Sigmoid::logistic();
    const double w = activation::recommended_w(sigma, 16, 1);

    const auto n1 = build_first_order(index, sigma, w, s);
    const auto n2 = iterate_residual(n1, s);
    const auto n3 = iterate_residual(n2, s);
    CHECK(n2.order() == 2);
    CHECK(n3.order() == 3);

    SUBCASE("residual recursion identity") {
        const auto e1 = residuals(n1, s);
        const auto e2 = residuals(n2, s);
        const auto update = build_first_order(index, sigma, w, SampleSet(s.inputs, e1));
        for (std::size_t i = 0; i < s.size(); ++i)
            CHECK(std::abs(e2[i] - (e1[i] - update.predict(s.inputs[i]))) <= 1e-9);
    }
    SUBCASE("accumulated coefficients equal the sum of separate networks") {
        const auto u1 = build_first_order(index, sigma, w, SampleSet(s.inputs, residuals(n1, s)));
        const auto u2 = build_first_order(index, sigma, w, SampleSet(s.inputs, residuals(n2, s)));
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int k = 0; k < 100; ++k) {
            const Point x{u(rng)};
            CHECK(std::abs(n3.predict(x) - (n1.predict(x) + u1.predict(x) + u2.predict(x))) <= 1e-9);
        }
    }
    SUBCASE("train composes the steps") {
        CHECK(train(index, sigma, w, 1, s).coeffs() == n1.coeffs());
        CHECK(train(index, sigma, w, 3, s).coeffs() == n3.coeffs());
        const auto all = train_all_orders(index, sigma, w, 3, s);
        REQUIRE(all.size() == 3);
        for (std::size_t k = 0; k < 3; ++k) {
            const auto& ref = k == 0 ? n1 : k == 1 ? n2 : n3;
            for (std::size_t j = 0; j < ref.coeffs().size(); ++j)
                CHECK(all[k].coeffs()[j] == doctest::Approx(ref.coeffs()[j]).epsilon(1e-12));
        }
    }
    SUBCASE("zero residuals leave the model unchanged") {
        const SampleSet exact(s.inputs, n1.predict(s.inputs));
        const auto fitted = CfnModel(index, sigma, w, n1.coeffs(), 1);
        const auto again = iterate_residual(fitted, exact);
        for (std::size_t j = 0; j < again.coeffs().size(); ++j)
            CHECK(again.coeffs()[j] == doctest::Approx(n1.coeffs()[j]).epsilon(1e-12));
    }
}

TEST_CASE("prediction at the first center") {
    // At the first center the chain coordinate is 0, so the first sigmoid sits
    // at sigma(0) = 1/2 and the prediction is the midpoint of G_0 and G_1 up to
    // the tails of the remaining terms.
    std::mt19937_64 rng(4);
    const std::size_t n = 20;
    const auto index = quasi_index(n, 1);
    const auto sigma = Sigmoid::logistic();
    const double w = activation::recommended_w(sigma, n, 1);
    const auto model = random_model(index, w, rng);
    const auto& g = model.coeffs();
    const auto& t = index->chain().prefix();
    const double at_center = model.predict(index->chain().center(0));

    double expected = g[0];
    for (std::size_t j = 0; j + 1 < n; ++j) expected += (g[j + 1] - g[j]) * sigma(-w * t[j]);
    CHECK(at_center == doctest::Approx(expected).epsilon(1e-13));

    double bound = 0.0, eps = 0.0;
    for (double v : g) bound = std::max(bound, std::abs(v));
    for (std::size_t j = 1; j < n; ++j) eps = std::max(eps, sigma(-w * t[j]));
    CHECK(std::abs(at_center - 0.5 * (g[0] + g[1])) <= 2.0 * n * bound * eps);
}

TEST_CASE("locality at the recommended width") {
    std::mt19937_64 rng(8);
    for (std::size_t d : {1, 2}) {
        const std::size_t n = 30;
        const auto index = quasi_index(n, d);
        const auto sigma = Sigmoid::logistic();
        const double s = activation::default_smoothness;
        const double w = activation::recommended_w(sigma, n, d, s);
        const auto model = random_model(index, w, rng);
        const auto& g = model.coeffs();
        const auto& t = index->chain().prefix();
        const double gmax = std::abs(*std::max_element(g.begin(), g.end(), [](double a, double b) {
            return std::abs(a) < std::abs(b);
        }));
        const double delta = 0.25 * std::pow(static_cast<double>(n), -1.0 / static_cast<double>(d));
        const double bound = 2.0 * n * gmax * std::pow(static_cast<double>(n), -(s + d) / d);
        std::uniform_real_distribution<double> u(d == 1 ? -1.0 : 0.0, 1.0);
        int checked = 0;
        for (int k = 0; k < 2000; ++k) {
            Point x(d);
            for (auto& v : x) v = u(rng);
            const std::size_t k0 = index->assign_cell(x);
            const double tx = index->chain_coordinate(x);
            if (k0 > 0 && tx - t[k0 - 1] < delta) continue;
            if (k0 + 1 < n && t[k0 + 1] - tx < delta) continue;
            const double next = k0 + 1 < n ? g[k0 + 1] : g[k0];
            const double blend = g[k0] + (next - g[k0]) * sigma(w * (tx - t[k0]));
            CHECK(std::abs(model.predict(x) - blend) <= bound);
            ++checked;
        }
        CHECK(checked > 100);
    }
}

TEST_CASE("empty cells") {
    const auto index = make_index(line({0.0, 1.0, 2.0}));
    const SampleSet s(line({-0.1, 2.1}), {5.0, 5.0});
    const double w = 200.0;
    const auto zero = build_first_order(index, Sigmoid::logistic(), w, s);
    CHECK(zero.coeffs() == std::vector<double>{5.0, 0.0, 5.0});
    const auto carry = build_first_order(index, Sigmoid::logistic(), w, s, EmptyCellPolicy::carry_forward);
    CHECK(carry.coeffs() == std::vector<double>{5.0, 5.0, 5.0});
    CHECK(carry.predict(Point{1.0}) == doctest::Approx(5.0));
}

TEST_CASE("argument validation") {
    const auto index = make_index(line({0.0, 1.0}));
    const SampleSet s(line({0.2}), {1.0});
    CHECK_THROWS(build_first_order(index, Sigmoid::logistic(), 0.0, s));
    CHECK_THROWS(build_first_order(index, Sigmoid::logistic(), 1.0, SampleSet(PointSet(1), {})));
    CHECK_THROWS(build_first_order(index, Sigmoid::logistic(), 1.0, SampleSet(PointSet(2), {})));
    CHECK_THROWS(CfnModel(index, Sigmoid::logistic(), 1.0, {1.0}, 1));
    CHECK_THROWS(train(index, Sigmoid::logistic(), 1.0, 0, s));
}

TEST_CASE("width setting") {
    CHECK(WidthSetting::parse("auto").automatic);
    const auto fixed = WidthSetting::parse("12.5");
    CHECK_FALSE(fixed.automatic);
    CHECK(fixed.value == 12.5);
    CHECK(fixed.resolve(Sigmoid::logistic(), 10, 1) == 12.5);
    CHECK(WidthSetting{}.resolve(Sigmoid::logistic(), 10, 1) == activation::recommended_w(Sigmoid::logistic(), 10, 1));
    CHECK(WidthSetting::parse(fixed.to_string()).value == 12.5);
    CHECK_THROWS(WidthSetting::parse("-1"));
    CHECK_THROWS(WidthSetting::parse("wide"));
}
