#include "troppo/refractivity.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"

using namespace troppo;

namespace {
Sounding load(const char* name) {
    std::ifstream in(std::string(TROPPO_FIXTURES_DIR "/soundings/") + name);
    REQUIRE(in);
    return parse_wyoming_sounding(in);
}

Sounding from_levels(std::vector<SoundingLevel> levels) {
    Sounding s;
    s.levels = std::move(levels);
    return s;
}
}  // namespace

TEST_CASE("refractivity examples") {
    CHECK(refractivity(1013.25, 288.15, 0.0) == doctest::Approx(272.88).epsilon(4e-5));
    CHECK(refractivity(1000.0, 283.15, 10.0) == doctest::Approx(347.67).epsilon(1.5e-4));
    // dry air reduces to 77.6 P/T exactly
    CHECK(refractivity(900.0, 270.0, 0.0) == 77.6 * 900.0 / 270.0);
    CHECK_THROWS(refractivity(0.0, 280.0, 5.0));
    CHECK_THROWS(refractivity(1000.0, -1.0, 5.0));
}

TEST_CASE("refractivity monotone in pressure and moisture") {
    double prev = refractivity(800.0, 280.0, 5.0);
    for (double p = 810.0; p <= 1050.0; p += 10.0) {
        const double n = refractivity(p, 280.0, 5.0);
        CHECK(n > prev);
        prev = n;
    }
    prev = refractivity(1000.0, 280.0, 0.0);
    for (double r = 0.5; r <= 20.0; r += 0.5) {
        const double n = refractivity(1000.0, 280.0, r);
        CHECK(n > prev);
        prev = n;
    }
}

TEST_CASE("gradient over two levels") {
    // N = 300 at 0 m and 290 at 1000 m gives -10 /km. Dry levels chosen to
    // produce those N values exactly: P = N*T/77.6.
    const double t = 280.0;
    auto s = from_levels({{300.0 * t / 77.6, 0.0, t, 0.0},
                          {290.0 * t / 77.6, 1000.0, t, 0.0}});
    const auto layers = gradient_profile(s);
    REQUIRE(layers.size() == 1);
    CHECK(layers[0].gradient_n_per_km == doctest::Approx(-10.0).epsilon(1e-9));
}

TEST_CASE("gradient over three levels") {
    const double t = 280.0;
    auto s = from_levels({{320.0 * t / 77.6, 0.0, t, 0.0},
                          {255.0 * t / 77.6, 500.0, t, 0.0},
                          {250.0 * t / 77.6, 1500.0, t, 0.0}});
    const auto layers = gradient_profile(s);
    REQUIRE(layers.size() == 2);
    CHECK(layers[0].gradient_n_per_km == doctest::Approx(-130.0).epsilon(1e-9));
    CHECK(layers[1].gradient_n_per_km == doctest::Approx(-5.0).epsilon(1e-9));
}

TEST_CASE("gradient requires two levels") {
    auto s = from_levels({{1000.0, 0.0, 280.0, 5.0}});
    CHECK_THROWS(gradient_profile(s));
}

TEST_CASE("sub-10 m layers merge into the next") {
    const double t = 280.0;
    auto s = from_levels({{300.0 * t / 77.6, 0.0, t, 0.0},
                          {299.0 * t / 77.6, 5.0, t, 0.0},
                          {280.0 * t / 77.6, 1000.0, t, 0.0}});
    const auto layers = gradient_profile(s);
    REQUIRE(layers.size() == 1);
    CHECK(layers[0].base_height_m_asl == 0.0);
    CHECK(layers[0].top_height_m_asl == 1000.0);
    CHECK(layers[0].gradient_n_per_km == doctest::Approx(-20.0).epsilon(1e-9));
}

TEST_CASE("affine N profile gives a constant gradient") {
    // N(h) = 310 - 0.042 h (N-units, h in meters): every layer -42 /km.
    const double t = 285.0;
    std::vector<SoundingLevel> levels;
    for (double h = 0; h <= 3000.0; h += 333.0)
        levels.push_back({(310.0 - 0.042 * h) * t / 77.6, h, t, 0.0});
    const auto layers = gradient_profile(from_levels(std::move(levels)));
    for (const auto& l : layers)
        CHECK(l.gradient_n_per_km == doctest::Approx(-42.0).epsilon(1e-9));
}

TEST_CASE("classification of gradient regimes") {
    CHECK(classify_gradient(-40.0) == PropagationCondition::Normal);
    CHECK(classify_gradient(-130.0) == PropagationCondition::SuperRefraction);
    CHECK(classify_gradient(-350.0) == PropagationCondition::Ducting);
    CHECK(classify_gradient(5.0) == PropagationCondition::SubRefraction);
    CHECK(classify_gradient(0.0) == PropagationCondition::Normal);
    // boundary values go to the more anomalous regime
    CHECK(classify_gradient(-79.0) == PropagationCondition::SuperRefraction);
    CHECK(classify_gradient(-157.0) == PropagationCondition::Ducting);
}

TEST_CASE("classification partitions the line") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> g(-500.0, 100.0);
    for (int i = 0; i < 1000; ++i) CHECK_NOTHROW(classify_gradient(g(rng)));
}

TEST_CASE("k factor") {
    CHECK(k_factor(0.0) == 1.0);
    CHECK(k_factor(-39.2) == doctest::Approx(4.0 / 3.0).epsilon(0.005));
    CHECK(k_factor(-115.0) == doctest::Approx(3.74).epsilon(0.005));
    CHECK(k_factor(-130.0) == doctest::Approx(5.85).epsilon(0.0103));
    CHECK_THROWS_AS(k_factor(-157.0), std::domain_error);
    CHECK_THROWS_AS(k_factor(-200.0), std::domain_error);
}

TEST_CASE("k factor strictly increasing toward the singularity") {
    double prev = k_factor(10.0);
    for (double g = 0.0; g > -156.0; g -= 2.0) {
        const double k = k_factor(g);
        CHECK(k > prev);
        prev = k;
    }
}

TEST_CASE("dominant gradient of bundled soundings") {
    const auto riv = dominant_gradient(load("rivolto.txt"));
    CHECK(riv.layer.gradient_n_per_km == doctest::Approx(-129.9).epsilon(0.005));
    CHECK(riv.layer.base_height_m_asl == doctest::Approx(600.0));
    CHECK(riv.condition == PropagationCondition::SuperRefraction);

    const auto cun = dominant_gradient(load("cuneo.txt"));
    CHECK(cun.layer.gradient_n_per_km == doctest::Approx(-115.1).epsilon(0.005));
    CHECK(cun.layer.base_height_m_asl == doctest::Approx(800.0));
    CHECK(cun.condition == PropagationCondition::SuperRefraction);

    const auto dec = dominant_gradient(load("decimomannu.txt"));
    CHECK(dec.layer.gradient_n_per_km <= -350.0);
    CHECK(dec.condition == PropagationCondition::Ducting);
}

TEST_CASE("four-regime sounding exhibits all conditions") {
    const auto layers = gradient_profile(load("four_regimes.txt"));
    bool sub = false, normal = false, super = false, duct = false;
    for (const auto& l : layers) {
        switch (classify_gradient(l.gradient_n_per_km)) {
            case PropagationCondition::SubRefraction: sub = true; break;
            case PropagationCondition::Normal: normal = true; break;
            case PropagationCondition::SuperRefraction: super = true; break;
            case PropagationCondition::Ducting: duct = true; break;
        }
    }
    CHECK(sub);
    CHECK(normal);
    CHECK(super);
    CHECK(duct);
}

TEST_CASE("dominant gradient respects the ceiling") {
    const double t = 280.0;
    auto s = from_levels({{330.0 * t / 77.6, 0.0, t, 0.0},
                          {310.0 * t / 77.6, 500.0, t, 0.0},
                          {200.0 * t / 77.6, 4000.0, t, 0.0},
                          {100.0 * t / 77.6, 5000.0, t, 0.0}});
    // Most negative layer (-100 at 4 km) is based above a 3 km ceiling,
    // so the -40 surface layer wins over it and over -31.4 at 500 m.
    const auto dom = dominant_gradient(s, 3000.0);
    CHECK(dom.layer.base_height_m_asl == 0.0);
    CHECK(dom.layer.gradient_n_per_km == doctest::Approx(-40.0));
    CHECK_THROWS(dominant_gradient(s, -1.0));
}

TEST_CASE("dominant gradient is the minimum of under-ceiling layers") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dn(-80.0, 20.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double t = 280.0;
        std::vector<SoundingLevel> levels;
        double n = 350.0;
        for (double h = 0.0; h <= 2500.0; h += 250.0) {
            levels.push_back({n * t / 77.6, h, t, 0.0});
            n += dn(rng) * 0.25;
        }
        const auto s = from_levels(std::move(levels));
        const auto dom = dominant_gradient(s, 3000.0);
        for (const auto& l : gradient_profile(s))
            CHECK(dom.layer.gradient_n_per_km <= l.gradient_n_per_km);
    }
}
