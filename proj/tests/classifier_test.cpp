#include "troppo/classifier.hpp"

#include <fstream>

#include "doctest.h"
#include "troppo/ingest.hpp"

using namespace troppo;

namespace {

StationRegistry registry() {
    return StationRegistry::load_file(TROPPO_FIXTURES_DIR "/registry.json");
}

Sounding sounding(const char* name) {
    std::ifstream in(std::string(TROPPO_FIXTURES_DIR "/soundings/") + name);
    REQUIRE(in);
    return parse_wyoming_sounding(in);
}

LinkCase make_case(const char* node, const char* gateway, const char* profile,
                   const char* sounding_name) {
    const auto reg = registry();
    const auto& n = reg.nodes.at(node);
    const auto& g = reg.gateways.at(gateway);
    LinkCase c;
    c.node = {n.position, n.antenna_m_agl};
    c.gateway = {g.position, g.antenna_m_agl};
    std::ifstream in(std::string(TROPPO_FIXTURES_DIR "/terrain/") + profile);
    REQUIRE(in);
    c.profile = load_profile_csv(in);
    c.profile.endpoint_a_antenna_m_agl = n.antenna_m_agl;
    c.profile.endpoint_b_antenna_m_agl = g.antenna_m_agl;
    c.radio.erp_dbm = n.erp_dbm;
    if (sounding_name) c.sounding = sounding(sounding_name);
    return c;
}

}  // namespace

TEST_CASE("Trieste to Cesena: super-refraction") {
    const auto r = classify_link(
        make_case("tp-trieste", "gw-cesena", "trieste_cesena.csv", "rivolto.txt"));
    CHECK(r.mechanism == Mechanism::SuperRefraction);
    REQUIRE(r.gradient_n_per_km.has_value());
    CHECK(*r.gradient_n_per_km == doctest::Approx(-129.9).epsilon(0.005));
    CHECK(r.k_used == doctest::Approx(5.80).epsilon(0.002));
    CHECK_FALSE(r.nu.has_value());
}

TEST_CASE("Sardinia to Barcelona: tropospheric duct") {
    const auto r = classify_link(make_case("tp-sardinia", "gw-barcelona1",
                                           "sardinia_barcelona.csv",
                                           "decimomannu.txt"));
    CHECK(r.mechanism == Mechanism::TroposphericDuct);
    REQUIRE(r.gradient_n_per_km.has_value());
    CHECK(*r.gradient_n_per_km <= -350.0);
    CHECK_FALSE(r.nu.has_value());
    CHECK_FALSE(r.predicted_rx_dbm.has_value());
}

TEST_CASE("Gattinara to Vezza: diffraction over a sharp ridge") {
    const auto r = classify_link(make_case("tp-gattinara", "gw-vezza",
                                           "gattinara_vezza.csv",
                                           "gattinara_normal.txt"));
    CHECK(r.mechanism == Mechanism::Diffraction);
    CHECK(r.k_used == doctest::Approx(4.0 / 3.0));
    REQUIRE(r.nu.has_value());
    CHECK(*r.nu == doctest::Approx(1.6506).epsilon(0.002));
    CHECK(*r.diffraction_loss_db == doctest::Approx(15.67).epsilon(0.002));
    CHECK(*r.predicted_rx_dbm == doctest::Approx(-132.9).epsilon(0.002));
    CHECK(*r.margin_db > 0.0);
}

TEST_CASE("Gattinara to Cuneo: diffraction plus super-refraction") {
    const auto r = classify_link(make_case("tp-gattinara", "gw-cuneo",
                                           "gattinara_cuneo.csv", "cuneo.txt"));
    CHECK(r.mechanism == Mechanism::DiffractionPlusSuperRefraction);
    CHECK(r.k_used == doctest::Approx(3.7456).epsilon(0.002));
    REQUIRE(r.nu.has_value());
    CHECK(*r.nu == doctest::Approx(2.0705).epsilon(0.002));
    CHECK(*r.diffraction_loss_db == doctest::Approx(17.62).epsilon(0.002));
    CHECK(*r.predicted_rx_dbm == doctest::Approx(-137.76).epsilon(0.002));
    CHECK(*r.margin_db == doctest::Approx(2.24).epsilon(0.01));
}

TEST_CASE("clear short path: line of sight") {
    const auto r = classify_link(
        make_case("tp-short", "gw-short", "short_clear.csv", nullptr));
    CHECK(r.mechanism == Mechanism::LineOfSight);
    CHECK(r.margin_db.has_value());
    CHECK(*r.margin_db > 0.0);
}

TEST_CASE("missing sounding falls back to the standard atmosphere") {
    // Vezza verdict must not depend on the (normal-gradient) sounding.
    auto c = make_case("tp-gattinara", "gw-vezza", "gattinara_vezza.csv", nullptr);
    const auto r = classify_link(c);
    CHECK(r.mechanism == Mechanism::Diffraction);
    CHECK(*r.gradient_n_per_km == doctest::Approx(-39.2));
    CHECK(r.narrative.find("standard atmosphere") != std::string::npos);
}

TEST_CASE("unexplained when diffraction cannot close the budget") {
    auto c = make_case("tp-gattinara", "gw-cuneo", "gattinara_cuneo.csv", nullptr);
    // Without the super-refractive sounding the ridge is far too high.
    const auto r = classify_link(c);
    CHECK(r.mechanism == Mechanism::Unexplained);
    REQUIRE(r.margin_db.has_value());
    CHECK(*r.margin_db < 0.0);
}

TEST_CASE("determinism") {
    const auto c = make_case("tp-gattinara", "gw-cuneo", "gattinara_cuneo.csv",
                             "cuneo.txt");
    const auto r1 = classify_link(c);
    const auto r2 = classify_link(c);
    CHECK(r1.mechanism == r2.mechanism);
    CHECK(r1.k_used == r2.k_used);
    CHECK(r1.nu == r2.nu);
    CHECK(r1.narrative == r2.narrative);
    CHECK(report_to_json(r1) == report_to_json(r2));
}

TEST_CASE("profile inconsistent with station geometry is rejected") {
    auto c = make_case("tp-trieste", "gw-cesena", "trieste_cesena.csv", nullptr);
    for (auto& s : c.profile.samples) s.distance_km *= 0.5;
    c.profile.total_distance_km *= 0.5;
    CHECK_THROWS(classify_link(c));
}

TEST_CASE("report serialization carries mechanism-relevant fields") {
    const auto diffraction = classify_link(make_case(
        "tp-gattinara", "gw-vezza", "gattinara_vezza.csv", "gattinara_normal.txt"));
    const auto json = report_to_json(diffraction);
    CHECK(json.find("\"mechanism\": \"Diffraction\"") != std::string::npos);
    CHECK(json.find("\"nu\"") != std::string::npos);

    const auto duct = classify_link(make_case(
        "tp-sardinia", "gw-barcelona1", "sardinia_barcelona.csv", "decimomannu.txt"));
    const auto duct_json = report_to_json(duct);
    CHECK(duct_json.find("TroposphericDuct") != std::string::npos);
    CHECK(duct_json.find("\"nu\"") == std::string::npos);

    const auto text = report_to_text(diffraction);
    CHECK(text.find("mechanism: Diffraction") != std::string::npos);
}
