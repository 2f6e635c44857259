#include "troppo/classifier.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "troppo/refractivity.hpp"

namespace troppo {

const char* to_string(Mechanism m) {
    switch (m) {
        case Mechanism::LineOfSight: return "LineOfSight";
        case Mechanism::Diffraction: return "Diffraction";
        case Mechanism::SuperRefraction: return "SuperRefraction";
        case Mechanism::DiffractionPlusSuperRefraction:
            return "DiffractionPlusSuperRefraction";
        case Mechanism::TroposphericDuct: return "TroposphericDuct";
        case Mechanism::Unexplained: return "Unexplained";
    }
    return "?";
}

namespace {

constexpr double kStandardK = 4.0 / 3.0;

std::string fmt(double v, int prec = 2) {
    std::ostringstream ss;
    ss.precision(prec);
    ss << std::fixed << v;
    return ss.str();
}

// Advisory only: clearance of the least-clear point against 60% of the first
// Fresnel zone there.
std::string fresnel_advisory(const TerrainProfile& p, const ClearanceResult& c,
                             double f_mhz) {
    if (c.obstacle_distance_km <= 0.0 ||
        c.obstacle_distance_km >= p.total_distance_km)
        return {};
    const double r1 = fresnel_zone_radius(
        c.obstacle_distance_km, p.total_distance_km - c.obstacle_distance_km, f_mhz);
    std::ostringstream ss;
    ss << " Least-clear point has " << fmt(c.min_clearance_m, 1)
       << " m clearance against a 60% first-Fresnel requirement of "
       << fmt(0.6 * r1, 1) << " m.";
    return ss.str();
}

}  // namespace

MechanismReport classify_link(const LinkCase& c) {
    const double gc =
        great_circle_distance(c.node.position, c.gateway.position, c.earth);
    if (gc > 0.0 &&
        std::abs(c.profile.total_distance_km - gc) > 0.01 * gc)
        throw std::invalid_argument(
            "classify_link: profile length " + fmt(c.profile.total_distance_km) +
            " km inconsistent with station distance " + fmt(gc) + " km");

    const double dist = c.profile.total_distance_km;
    MechanismReport r;
    std::ostringstream story;
    story << "Path " << fmt(dist, 1) << " km.";

    const auto clear_std = los_clearance(c.profile, kStandardK, c.earth);
    if (!clear_std.blocked) {
        r.mechanism = Mechanism::LineOfSight;
        r.k_used = kStandardK;
        r.predicted_rx_dbm = received_power(c.radio, dist, 0.0);
        const auto rx = is_receivable(*r.predicted_rx_dbm, c.sf, c.table);
        r.margin_db = rx.margin_db;
        story << " Clear at K = 4/3 (min clearance " << fmt(clear_std.min_clearance_m, 1)
              << " m)." << fresnel_advisory(c.profile, clear_std, c.radio.frequency_mhz);
        r.narrative = story.str();
        return r;
    }
    story << " Blocked at K = 4/3 (min clearance " << fmt(clear_std.min_clearance_m, 1)
          << " m at " << fmt(clear_std.obstacle_distance_km, 1) << " km).";

    double gradient = kStandardAtmosphereGradient;
    if (c.sounding) {
        const auto dom = dominant_gradient(*c.sounding, c.gradient_ceiling_m);
        gradient = dom.layer.gradient_n_per_km;
        story << " Sounding dominant gradient " << fmt(gradient, 1)
              << " N/km (" << to_string(dom.condition) << ") in layer "
              << fmt(dom.layer.base_height_m_asl, 0) << ".."
              << fmt(dom.layer.top_height_m_asl, 0) << " m.";
    } else {
        story << " No sounding provided; assuming standard atmosphere gradient "
              << fmt(gradient, 1) << " N/km.";
    }
    r.gradient_n_per_km = gradient;
    const auto condition = classify_gradient(gradient);

    if (condition == PropagationCondition::Ducting) {
        r.mechanism = Mechanism::TroposphericDuct;
        r.k_used = kStandardK;
        story << " Gradient is below -157 N/km: rays are trapped; "
                 "effective-earth geometry does not apply.";
        r.narrative = story.str();
        return r;
    }

    const double k_op = k_factor(gradient, c.earth);
    const auto clear_k = los_clearance(c.profile, k_op, c.earth);
    if (!clear_k.blocked) {
        r.k_used = k_op;
        r.predicted_rx_dbm = received_power(c.radio, dist, 0.0);
        const auto rx = is_receivable(*r.predicted_rx_dbm, c.sf, c.table);
        r.margin_db = rx.margin_db;
        story << " Clear at K = " << fmt(k_op) << " (min clearance "
              << fmt(clear_k.min_clearance_m, 1) << " m).";
        if (condition == PropagationCondition::SuperRefraction) {
            r.mechanism = Mechanism::SuperRefraction;
        } else {
            // Marginal case: clear under a near-standard K without a
            // super-refractive gradient.
            r.mechanism = Mechanism::LineOfSight;
            story << " Gradient is not super-refractive.";
        }
        r.narrative = story.str();
        return r;
    }

    // Still blocked: single dominant knife edge at the operative K, which is
    // the refractive K only when the gradient is super-refractive.
    const double k_edge =
        condition == PropagationCondition::SuperRefraction ? k_op : kStandardK;
    const auto obstacle =
        dominant_obstacle(c.profile, k_edge, c.radio.frequency_mhz, c.earth);
    const double loss = knife_edge_loss(obstacle.nu);
    r.k_used = k_edge;
    r.nu = obstacle.nu;
    r.diffraction_loss_db = loss;
    r.predicted_rx_dbm = received_power(c.radio, dist, loss);
    const auto rx = is_receivable(*r.predicted_rx_dbm, c.sf, c.table);
    r.margin_db = rx.margin_db;
    story << " Dominant obstacle at " << fmt(obstacle.distance_km, 1)
          << " km, nu = " << fmt(obstacle.nu) << ", J = " << fmt(loss, 1)
          << " dB, predicted " << fmt(*r.predicted_rx_dbm, 1) << " dBm at SF"
          << c.sf << " (margin " << fmt(rx.margin_db, 1) << " dB).";
    if (rx.receivable) {
        r.mechanism = condition == PropagationCondition::SuperRefraction
                          ? Mechanism::DiffractionPlusSuperRefraction
                          : Mechanism::Diffraction;
    } else {
        r.mechanism = Mechanism::Unexplained;
        story << " Below sensitivity; possibly tropospheric scatter, "
                 "which this tool does not model.";
    }
    r.narrative = story.str();
    return r;
}

std::string report_to_json(const MechanismReport& r) {
    nlohmann::json j;
    j["mechanism"] = to_string(r.mechanism);
    j["k_used"] = r.k_used;
    if (r.gradient_n_per_km) j["gradient_n_per_km"] = *r.gradient_n_per_km;
    if (r.nu) j["nu"] = *r.nu;
    if (r.diffraction_loss_db) j["diffraction_loss_db"] = *r.diffraction_loss_db;
    if (r.predicted_rx_dbm) j["predicted_rx_dbm"] = *r.predicted_rx_dbm;
    if (r.margin_db) j["margin_db"] = *r.margin_db;
    j["narrative"] = r.narrative;
    return j.dump(2);
}

std::string report_to_text(const MechanismReport& r) {
    std::ostringstream out;
    out << "mechanism: " << to_string(r.mechanism) << "\n";
    out << "k_used: " << fmt(r.k_used) << "\n";
    if (r.gradient_n_per_km)
        out << "gradient: " << fmt(*r.gradient_n_per_km, 1) << " N/km\n";
    if (r.nu) out << "nu: " << fmt(*r.nu) << "\n";
    if (r.diffraction_loss_db)
        out << "diffraction_loss: " << fmt(*r.diffraction_loss_db, 1) << " dB\n";
    if (r.predicted_rx_dbm)
        out << "predicted_rx: " << fmt(*r.predicted_rx_dbm, 1) << " dBm\n";
    if (r.margin_db) out << "margin: " << fmt(*r.margin_db, 1) << " dB\n";
    out << r.narrative << "\n";
    return out.str();
}

}  // namespace troppo
