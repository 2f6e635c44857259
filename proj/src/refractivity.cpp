#include "troppo/refractivity.hpp"

#include <cmath>
#include <stdexcept>

namespace troppo {

const char* to_string(PropagationCondition c) {
    switch (c) {
        case PropagationCondition::SubRefraction: return "SubRefraction";
        case PropagationCondition::Normal: return "Normal";
        case PropagationCondition::SuperRefraction: return "SuperRefraction";
        case PropagationCondition::Ducting: return "Ducting";
    }
    return "?";
}

double refractivity(double p_hpa, double t_k, double r_g_kg) {
    if (p_hpa <= 0.0) throw std::invalid_argument("refractivity: pressure must be positive");
    if (t_k <= 0.0) throw std::invalid_argument("refractivity: temperature must be positive");
    if (r_g_kg < 0.0) throw std::invalid_argument("refractivity: negative mixing ratio");
    return 77.6 * p_hpa / t_k +
           3.73e5 * r_g_kg * p_hpa / (t_k * t_k * (622.0 + r_g_kg));
}

std::vector<RefractivityPoint> refractivity_profile(const Sounding& s) {
    std::vector<RefractivityPoint> out;
    out.reserve(s.levels.size());
    for (const auto& lv : s.levels)
        out.push_back({lv.height_m_asl,
                       refractivity(lv.pressure_hpa, lv.temperature_k,
                                    lv.mixing_ratio_g_kg)});
    return out;
}

std::vector<GradientLayer> gradient_profile(const Sounding& s) {
    const auto pts = refractivity_profile(s);
    if (pts.size() < 2)
        throw std::invalid_argument("gradient_profile: need at least 2 levels");

    // Sub-10 m layers get merged into the next one: finite differences over
    // near-zero thickness amplify sensor noise.
    constexpr double kMinThicknessM = 10.0;
    std::vector<GradientLayer> out;
    std::size_t base = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double dh = pts[i].height_m_asl - pts[base].height_m_asl;
        if (dh < kMinThicknessM && i + 1 < pts.size()) continue;
        out.push_back({pts[base].height_m_asl, pts[i].height_m_asl,
                       (pts[i].n_units - pts[base].n_units) / (dh / 1000.0)});
        base = i;
    }
    if (out.empty())
        throw std::invalid_argument("gradient_profile: fewer than 2 usable levels");
    return out;
}

PropagationCondition classify_gradient(double g) {
    if (!std::isfinite(g))
        throw std::invalid_argument("classify_gradient: gradient not finite");
    if (g > 0.0) return PropagationCondition::SubRefraction;
    if (g > -79.0) return PropagationCondition::Normal;
    if (g > -157.0) return PropagationCondition::SuperRefraction;
    return PropagationCondition::Ducting;
}

double k_factor(double g, const EarthModel& earth) {
    const double denom = 1.0 + earth.radius_km * g * 1e-6;
    if (denom <= 0.0)
        throw std::domain_error("k_factor: ducting regime, K undefined");
    return 1.0 / denom;
}

DominantGradient dominant_gradient(const Sounding& s, double ceiling_m_agl) {
    const auto layers = gradient_profile(s);
    double station = s.levels.front().height_m_asl;
    if (s.station_location && s.station_location->elevation_m_asl)
        station = *s.station_location->elevation_m_asl;
    const double ceiling = station + ceiling_m_agl;

    const GradientLayer* best = nullptr;
    for (const auto& l : layers) {
        if (l.base_height_m_asl > ceiling) continue;
        if (!best || l.gradient_n_per_km < best->gradient_n_per_km) best = &l;
    }
    if (!best)
        throw std::invalid_argument("dominant_gradient: no layers under ceiling");
    return {*best, classify_gradient(best->gradient_n_per_km)};
}

}  // namespace troppo
