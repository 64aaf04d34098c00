#include "cfnet/geometry.hpp"

#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

using namespace cfnet;
using namespace cfnet::geometry;

namespace {

PointSet random_points(std::size_t n, std::size_t d, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    PointSet ps(d);
    Point p(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto& v : p) v = u(rng);
        ps.push_back(p);
    }
    return ps;
}

std::size_t brute_force_cell(const PointSet& centers, PointView x) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < centers.size(); ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) s += (centers[j][k] - x[k]) * (centers[j][k] - x[k]);
        if (s < best_d) {
            best_d = s;
            best = j;
        }
    }
    return best;
}

PointSet line(std::initializer_list<double> xs) {
    PointSet ps(1);
    for (double x : xs) ps.push_back(Point{x});
    return ps;
}

} // namespace

TEST_CASE("sobol matches the reference unscrambled sequence") {
    // Reference values from scipy.stats.qmc.Sobol(scramble=False), origin dropped.
    const double expected[8][5] = {
        {0.5, 0.5, 0.5, 0.5, 0.5},          {0.75, 0.25, 0.25, 0.25, 0.75},
        {0.25, 0.75, 0.75, 0.75, 0.25},     {0.375, 0.375, 0.625, 0.875, 0.375},
        {0.875, 0.875, 0.125, 0.375, 0.875}, {0.625, 0.125, 0.875, 0.625, 0.625},
        {0.125, 0.625, 0.375, 0.125, 0.125}, {0.1875, 0.3125, 0.9375, 0.4375, 0.5625},
    };
    SobolSequence seq(5);
    for (const auto& row : expected) {
        const auto p = seq.next();
        for (int k = 0; k < 5; ++k) CHECK(p[k] == row[k]);
    }

    const double p63[21] = {0.015625, 0.796875, 0.359375, 0.453125, 0.859375, 0.140625, 0.578125,
                            0.140625, 0.828125, 0.578125, 0.421875, 0.671875, 0.546875, 0.765625,
                            0.328125, 0.765625, 0.078125, 0.390625, 0.953125, 0.234375, 0.234375};
    SobolSequence wide(21);
    Point p;
    for (int i = 0; i < 63; ++i) p = wide.next();
    for (int k = 0; k < 21; ++k) CHECK(p[k] == p63[k]);
}

TEST_CASE("sobol rejects unsupported dimensions") {
    CHECK_THROWS(SobolSequence{0});
    CHECK_THROWS(SobolSequence{max_sobol_dimension + 1});
    CHECK_NOTHROW(SobolSequence{max_sobol_dimension});
}

TEST_CASE("sobol_centers maps into the box") {
    const Box box{{-1.0, 2.0}, {1.0, 3.0}};
    const auto c = sobol_centers(3, 2, box);
    REQUIRE(c.size() == 3);
    CHECK(c[0][0] == 0.0);
    CHECK(c[0][1] == 2.5);
    CHECK(c[1][0] == 0.5);
    CHECK(c[1][1] == 2.25);
}

TEST_CASE("equispaced centers are cell midpoints") {
    const auto c = equispaced_centers(4, -1.0, 1.0);
    REQUIRE(c.size() == 4);
    CHECK(c[0][0] == doctest::Approx(-0.75));
    CHECK(c[1][0] == doctest::Approx(-0.25));
    CHECK(c[2][0] == doctest::Approx(0.25));
    CHECK(c[3][0] == doctest::Approx(0.75));
}

TEST_CASE("center chain prefix sums and spacing") {
    const auto chain = CenterChain::from_ordered(line({0.0, 0.5, 1.5}));
    CHECK(chain.prefix() == std::vector<double>{0.0, 0.5, 1.5});
    CHECK(chain.separation_radius() == doctest::Approx(0.25));
    CHECK(chain.max_consecutive_gap() == doctest::Approx(1.0));

    const auto single = CenterChain::from_ordered(line({0.3}));
    CHECK(std::isinf(single.separation_radius()));
    CHECK(single.max_consecutive_gap() == 0.0);

    CHECK_THROWS(CenterChain::from_ordered(line({0.1, 0.1})));
    CHECK_THROWS(CenterChain::from_ordered(PointSet(1)));
}

TEST_CASE("greedy rearrangement hops to the nearest unvisited point") {
    const auto chain = rearrange_greedy(line({0.5, -0.5, 0.0}));
    REQUIRE(chain.size() == 3);
    CHECK(chain.center(0)[0] == 0.5);
    CHECK(chain.center(1)[0] == 0.0);
    CHECK(chain.center(2)[0] == -0.5);
    CHECK(chain.prefix()[1] == doctest::Approx(0.5));
    CHECK(chain.prefix()[2] == doctest::Approx(1.0));

    // Equidistant candidates: the lower original index wins.
    const auto tie = rearrange_greedy(line({0.0, 1.0, -1.0}));
    CHECK(tie.center(1)[0] == 1.0);
}

TEST_CASE("greedy rearrangement is a permutation") {
    std::mt19937_64 rng(5);
    const auto pts = sobol_centers(40, 3, Box::cube(3, 0.0, 1.0));
    const auto chain = rearrange_greedy(pts);
    REQUIRE(chain.size() == pts.size());
    std::vector<bool> seen(pts.size(), false);
    for (std::size_t j = 0; j < chain.size(); ++j) {
        bool found = false;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (!seen[i] && squared_distance(pts[i], chain.center(j)) == 0.0) {
                seen[i] = found = true;
                break;
            }
        CHECK(found);
    }
}

TEST_CASE("cell assignment agrees with a brute-force scan") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> nd(1, 50), dd(1, 5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = nd(rng), d = dd(rng);
        const auto centers = random_points(n, d, rng);
        const VoronoiIndex index(CenterChain::from_ordered(centers));
        const auto probes = random_points(20, d, rng, -1.5, 1.5);
        for (std::size_t i = 0; i < probes.size(); ++i) CHECK(index.assign_cell(probes[i]) == brute_force_cell(centers, probes[i]));
    }
}

TEST_CASE("assignment ties go to the lowest index") {
    const VoronoiIndex index(CenterChain::from_ordered(line({-1.0, 1.0, 3.0})));
    CHECK(index.assign_cell(Point{0.0}) == 0);
    CHECK(index.assign_cell(Point{2.0}) == 1);
    CHECK(index.assign_cell(Point{2.1}) == 2);
}

TEST_CASE("partition distance worked examples") {
    const VoronoiIndex index(CenterChain::from_ordered(line({-0.5, 0.5})));
    CHECK(index.chain_coordinate(Point{0.6}) == doctest::Approx(1.1));
    CHECK(index.chain_coordinate(Point{-0.6}) == doctest::Approx(0.1));
    CHECK(index.partition_distance(Point{-0.6}, Point{0.6}) == doctest::Approx(1.2));
    CHECK(index.partition_distance(Point{0.2}, Point{0.7}) == doctest::Approx(0.5));

    const VoronoiIndex chain3(CenterChain::from_ordered(line({0.0, 0.5, 1.5})));
    CHECK(chain3.chain_coordinate(Point{1.45}) == doctest::Approx(1.55));
    CHECK(chain3.partition_distance(Point{0.05}, Point{1.45}) == doctest::Approx(1.6));
}

TEST_CASE("partition distance is symmetric and dominates the Euclidean distance") {
    std::mt19937_64 rng(17);
    for (std::size_t d : {1, 2, 3, 5}) {
        const auto chain = quasi_uniform_chain(24, Box::cube(d, 0.0, 1.0));
        const VoronoiIndex index(chain);
        const auto a = random_points(500, d, rng, 0.0, 1.0);
        const auto b = random_points(500, d, rng, 0.0, 1.0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double ab = index.partition_distance(a[i], b[i]);
            CHECK(ab == index.partition_distance(b[i], a[i]));
            CHECK(ab >= distance(a[i], b[i]) - 1e-12);
        }
    }
}

TEST_CASE("quasi-uniform chains") {
    SUBCASE("one dimension uses equispaced midpoints in order") {
        const auto chain = quasi_uniform_chain(8, Box::cube(1, -1.0, 1.0));
        for (std::size_t j = 0; j < 8; ++j) CHECK(chain.center(j)[0] == doctest::Approx(-1.0 + (2.0 * j + 1.0) / 8.0));
        CHECK(chain.max_consecutive_gap() == doctest::Approx(0.25));
    }
    SUBCASE("higher dimensions have bounded mesh ratio") {
        const Box box = Box::cube(2, 0.0, 1.0);
        const auto chain = quasi_uniform_chain(64, box);
        const auto q = diagnose(chain, box);
        CHECK(q.mesh_norm > 0.0);
        CHECK(q.ratio() < 10.0);
        CHECK(q.mesh_norm >= mesh_norm(chain, chain.centers()));
    }
}

TEST_CASE("mesh norm of probes") {
    const auto chain = CenterChain::from_ordered(line({0.25, 0.75}));
    CHECK(mesh_norm(chain, line({0.0, 0.5, 1.0})) == doctest::Approx(0.25));
    const auto probes = default_probes(chain, Box::cube(1, 0.0, 1.0));
    CHECK(probes.size() == 10000 + 2);
}
