#include <catch_amalgamated.hpp>

#include "rds/circle.hpp"

#include <random>

using namespace rds;
using Catch::Approx;

TEST_CASE("circle points are canonical", "[circle]") {
    CHECK(CirclePoint(0.0).pos() == 0.0);
    CHECK(CirclePoint(1.0).pos() == 0.0);
    CHECK(CirclePoint(-0.25).pos() == 0.75);
    CHECK(CirclePoint(3.5).pos() == 0.5);
    // rounds up to exactly 1.0 without the guard
    CHECK(CirclePoint(-1e-20).pos() < 1.0);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int i = 0; i < 10000; ++i) {
        double p = CirclePoint(u(rng)).pos();
        REQUIRE(p >= 0.0);
        REQUIRE(p < 1.0);
    }
}

TEST_CASE("circle_dist examples", "[circle]") {
    CHECK(circle_dist(CirclePoint(0.0), CirclePoint(0.0)) == 0.0);
    CHECK(circle_dist(CirclePoint(0.1), CirclePoint(0.9)) == Approx(0.2).margin(1e-15));
    CHECK(circle_dist(CirclePoint(0.25), CirclePoint(0.75)) == 0.5);
}

TEST_CASE("circle_dist is a metric bounded by 1/2", "[circle][property]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        CirclePoint x(u(rng)), y(u(rng)), z(u(rng));
        const double dxy = circle_dist(x, y);
        REQUIRE(dxy >= 0.0);
        REQUIRE(dxy <= 0.5);
        REQUIRE(dxy == circle_dist(y, x));
        REQUIRE(circle_dist(x, z) <= dxy + circle_dist(y, z) + 1e-15);
    }
}

TEST_CASE("rotation shifts by the offset", "[circle]") {
    CHECK(rotate(CirclePoint(0.9), 0.2).pos() == Approx(0.1).margin(1e-15));
    CHECK(rotate(CirclePoint(0.1), -0.2).pos() == Approx(0.9).margin(1e-15));
}
