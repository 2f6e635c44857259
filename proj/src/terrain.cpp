#include "troppo/terrain.hpp"

#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace troppo {

namespace {
constexpr double kSpeedOfLightMps = 299792458.0;

void validate(const TerrainProfile& p) {
    if (p.samples.size() < 2)
        throw std::invalid_argument("terrain profile: need at least 2 samples");
    if (p.samples.front().distance_km != 0.0)
        throw std::invalid_argument("terrain profile: first sample must be at 0 km");
    for (std::size_t i = 1; i < p.samples.size(); ++i)
        if (p.samples[i].distance_km <= p.samples[i - 1].distance_km)
            throw std::invalid_argument("terrain profile: distances not increasing");
    if (p.endpoint_a_antenna_m_agl < 0.0 || p.endpoint_b_antenna_m_agl < 0.0)
        throw std::invalid_argument("terrain profile: negative antenna height");
}

double sightline_at(const TerrainProfile& p, double d_km) {
    const double ya = p.samples.front().elevation_m_asl + p.endpoint_a_antenna_m_agl;
    const double yb = p.samples.back().elevation_m_asl + p.endpoint_b_antenna_m_agl;
    return ya + (yb - ya) * d_km / p.total_distance_km;
}
}  // namespace

TerrainProfile load_profile_csv(std::istream& in) {
    TerrainProfile p;
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("profile csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "distance_km,elevation_m")
        throw std::runtime_error("profile csv: expected header distance_km,elevation_m");
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double d, e;
        char comma;
        std::istringstream row(line);
        if (!(row >> d >> comma >> e) || comma != ',')
            throw std::runtime_error("profile csv: bad row: " + line);
        p.samples.push_back({d, e});
    }
    if (p.samples.size() < 2)
        throw std::runtime_error("profile csv: need at least 2 rows");
    p.total_distance_km = p.samples.back().distance_km;
    validate(p);
    return p;
}

TerrainProfile load_profile_csv(const std::string& text) {
    std::istringstream in(text);
    return load_profile_csv(in);
}

std::string format_profile_csv(const TerrainProfile& p) {
    std::ostringstream out;
    out << "distance_km,elevation_m\n";
    for (const auto& s : p.samples)
        out << s.distance_km << ',' << s.elevation_m_asl << '\n';
    return out.str();
}

std::vector<TerrainSample> effective_profile(const TerrainProfile& p, double k,
                                             const EarthModel& earth) {
    validate(p);
    if (k <= 0.0) throw std::invalid_argument("effective_profile: k must be positive");
    std::vector<TerrainSample> out;
    out.reserve(p.samples.size());
    for (const auto& s : p.samples) {
        const double bulge = earth_bulge(s.distance_km,
                                         p.total_distance_km - s.distance_km, k, earth);
        out.push_back({s.distance_km, s.elevation_m_asl + bulge});
    }
    return out;
}

ClearanceResult los_clearance(const TerrainProfile& p, double k,
                              const EarthModel& earth) {
    const auto eff = effective_profile(p, k, earth);
    ClearanceResult r;
    bool first = true;
    for (std::size_t i = 1; i + 1 < eff.size(); ++i) {
        const double c = sightline_at(p, eff[i].distance_km) - eff[i].elevation_m_asl;
        if (first || c < r.min_clearance_m) {
            r.min_clearance_m = c;
            r.obstacle_index = i;
            r.obstacle_distance_km = eff[i].distance_km;
            first = false;
        }
    }
    if (first) {
        // Two-sample profile: no interior terrain, clearance is the smaller
        // antenna height.
        r.min_clearance_m = std::min(p.endpoint_a_antenna_m_agl,
                                     p.endpoint_b_antenna_m_agl);
        r.obstacle_index = 0;
        r.obstacle_distance_km = 0.0;
    }
    r.blocked = r.min_clearance_m < 0.0;
    return r;
}

double fresnel_nu(double h_m, double d1_km, double d2_km, double f_mhz) {
    if (d1_km <= 0.0 || d2_km <= 0.0)
        throw std::invalid_argument("fresnel_nu: sub-path distances must be positive");
    if (f_mhz <= 0.0)
        throw std::invalid_argument("fresnel_nu: frequency must be positive");
    const double lambda_m = kSpeedOfLightMps / (f_mhz * 1e6);
    const double d1 = d1_km * 1000.0, d2 = d2_km * 1000.0;
    return h_m * std::sqrt((2.0 / lambda_m) * (1.0 / d1 + 1.0 / d2));
}

double fresnel_zone_radius(double d1_km, double d2_km, double f_mhz) {
    if (d1_km <= 0.0 || d2_km <= 0.0 || f_mhz <= 0.0)
        throw std::invalid_argument("fresnel_zone_radius: non-positive input");
    const double lambda_m = kSpeedOfLightMps / (f_mhz * 1e6);
    const double d1 = d1_km * 1000.0, d2 = d2_km * 1000.0;
    return std::sqrt(lambda_m * d1 * d2 / (d1 + d2));
}

Obstacle dominant_obstacle(const TerrainProfile& p, double k, double f_mhz,
                           const EarthModel& earth) {
    const auto eff = effective_profile(p, k, earth);
    if (eff.size() < 3)
        throw std::invalid_argument("dominant_obstacle: no interior samples");
    Obstacle best;
    bool first = true;
    for (std::size_t i = 1; i + 1 < eff.size(); ++i) {
        const double d1 = eff[i].distance_km;
        const double d2 = p.total_distance_km - d1;
        const double h = eff[i].elevation_m_asl - sightline_at(p, d1);
        const double nu = fresnel_nu(h, d1, d2, f_mhz);
        if (first || nu > best.nu) {
            best = {i, nu, d1, h};
            first = false;
        }
    }
    return best;
}

}  // namespace troppo
