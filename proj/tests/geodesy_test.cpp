#include "troppo/geodesy.hpp"

#include <cmath>
#include <random>

#include "doctest.h"

using namespace troppo;

namespace {
std::mt19937 rng(20200203);

GeoPoint random_point() {
    std::uniform_real_distribution<double> lat(-89.0, 89.0);
    std::uniform_real_distribution<double> lon(-180.0, 180.0);
    return {lat(rng), lon(rng), {}};
}
}  // namespace

TEST_CASE("great circle distance examples") {
    CHECK(great_circle_distance({45.0, 13.0}, {45.0, 13.0}) == doctest::Approx(0.0));
    CHECK(great_circle_distance({0.0, 0.0}, {1.0, 0.0}) ==
          doctest::Approx(111.19).epsilon(0.0001));
    CHECK(great_circle_distance({0.0, 0.0}, {0.0, 180.0}) ==
          doctest::Approx(20015.1).epsilon(0.00001));
}

TEST_CASE("distance symmetry and triangle inequality") {
    for (int i = 0; i < 200; ++i) {
        const auto a = random_point(), b = random_point(), c = random_point();
        const double ab = great_circle_distance(a, b);
        CHECK(ab == great_circle_distance(b, a));
        CHECK(ab >= 0.0);
        CHECK(ab <= great_circle_distance(a, c) + great_circle_distance(c, b) + 1e-6);
    }
}

TEST_CASE("distance rejects out-of-range coordinates") {
    CHECK_THROWS(great_circle_distance({91.0, 0.0}, {0.0, 0.0}));
    CHECK_THROWS(great_circle_distance({0.0, 0.0}, {0.0, 181.0}));
}

TEST_CASE("intermediate points endpoints and midpoint") {
    const GeoPoint a{0.0, 0.0}, b{0.0, 10.0};
    const auto two = intermediate_points(a, b, 2);
    REQUIRE(two.size() == 2);
    CHECK(two[0].latitude_deg == a.latitude_deg);
    CHECK(two[1].longitude_deg == b.longitude_deg);

    const auto three = intermediate_points(a, b, 3);
    REQUIRE(three.size() == 3);
    CHECK(three[1].latitude_deg == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(three[1].longitude_deg == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("intermediate points: 1 degree latitude steps") {
    const auto pts = intermediate_points({0.0, 0.0}, {10.0, 0.0}, 11);
    REQUIRE(pts.size() == 11);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(pts[i].latitude_deg ==
              doctest::Approx(static_cast<double>(i)).epsilon(1e-9));
        CHECK(pts[i].longitude_deg == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("intermediate points requires n >= 2") {
    CHECK_THROWS(intermediate_points({0, 0}, {1, 1}, 1));
}

TEST_CASE("radio horizon") {
    CHECK(radio_horizon(0.0, 4.0 / 3.0) == doctest::Approx(0.0));
    CHECK(radio_horizon(72.0, 4.0 / 3.0) == doctest::Approx(34.97).epsilon(0.0015));
    // sqrt(16/9) = 4/3: the 1.33x optical-horizon rule.
    const double ratio = radio_horizon(50.0, 16.0 / 9.0) / radio_horizon(50.0, 1.0);
    CHECK(ratio == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
    CHECK_THROWS(radio_horizon(10.0, 0.0));
}

TEST_CASE("radio horizon monotone in h and k") {
    double prev = 0.0;
    for (double h = 1.0; h <= 200.0; h += 10.0) {
        const double d = radio_horizon(h, 4.0 / 3.0);
        CHECK(d > prev);
        prev = d;
    }
    prev = 0.0;
    for (double k = 0.5; k <= 6.0; k += 0.25) {
        const double d = radio_horizon(30.0, k);
        CHECK(d > prev);
        prev = d;
    }
}

TEST_CASE("earth bulge") {
    CHECK(earth_bulge(0.0, 100.0, 4.0 / 3.0) == doctest::Approx(0.0));
    CHECK(earth_bulge(50.0, 50.0, 4.0 / 3.0) == doctest::Approx(147.15).epsilon(0.0007));
    CHECK(earth_bulge(50.0, 50.0, 1.0) == doctest::Approx(196.2).epsilon(0.0006));
    CHECK_THROWS(earth_bulge(10.0, 10.0, -1.0));
}

TEST_CASE("bulge maximal at midpoint, decreasing in k") {
    const double total = 120.0;
    const double mid = earth_bulge(total / 2, total / 2, 4.0 / 3.0);
    for (double d = 5.0; d < total; d += 5.0) {
        if (d == total / 2) continue;
        CHECK(earth_bulge(d, total - d, 4.0 / 3.0) < mid);
    }
    double prev = earth_bulge(60.0, 60.0, 0.9);
    for (double k = 1.0; k < 6.0; k += 0.5) {
        const double b = earth_bulge(60.0, 60.0, k);
        CHECK(b < prev);
        prev = b;
    }
}
