#include "troppo/geodesy.hpp"

#include <cmath>
#include <stdexcept>

namespace troppo {

namespace {
constexpr double kDegToRad = M_PI / 180.0;
}

bool valid_point(const GeoPoint& p) {
    return p.latitude_deg >= -90.0 && p.latitude_deg <= 90.0 &&
           p.longitude_deg >= -180.0 && p.longitude_deg <= 180.0;
}

double great_circle_distance(const GeoPoint& a, const GeoPoint& b,
                             const EarthModel& earth) {
    if (!valid_point(a) || !valid_point(b))
        throw std::invalid_argument("great_circle_distance: coordinates out of range");
    const double lat1 = a.latitude_deg * kDegToRad;
    const double lat2 = b.latitude_deg * kDegToRad;
    const double dlat = (b.latitude_deg - a.latitude_deg) * kDegToRad;
    const double dlon = (b.longitude_deg - a.longitude_deg) * kDegToRad;
    const double s1 = std::sin(dlat / 2.0);
    const double s2 = std::sin(dlon / 2.0);
    const double h = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
    return 2.0 * earth.radius_km * std::asin(std::min(1.0, std::sqrt(h)));
}

std::vector<GeoPoint> intermediate_points(const GeoPoint& a, const GeoPoint& b,
                                          std::size_t n) {
    if (n < 2) throw std::invalid_argument("intermediate_points: n must be >= 2");
    if (!valid_point(a) || !valid_point(b))
        throw std::invalid_argument("intermediate_points: coordinates out of range");

    // Unit vectors, then spherical linear interpolation between them.
    const auto to_xyz = [](const GeoPoint& p, double v[3]) {
        const double lat = p.latitude_deg * kDegToRad;
        const double lon = p.longitude_deg * kDegToRad;
        v[0] = std::cos(lat) * std::cos(lon);
        v[1] = std::cos(lat) * std::sin(lon);
        v[2] = std::sin(lat);
    };
    double va[3], vb[3];
    to_xyz(a, va);
    to_xyz(b, vb);
    const double dot = std::clamp(
        va[0] * vb[0] + va[1] * vb[1] + va[2] * vb[2], -1.0, 1.0);
    const double omega = std::acos(dot);

    std::vector<GeoPoint> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        double wa, wb;
        if (omega < 1e-12) {  // coincident or antipodal-degenerate: linear blend
            wa = 1.0 - t;
            wb = t;
        } else {
            wa = std::sin((1.0 - t) * omega) / std::sin(omega);
            wb = std::sin(t * omega) / std::sin(omega);
        }
        const double x = wa * va[0] + wb * vb[0];
        const double y = wa * va[1] + wb * vb[1];
        const double z = wa * va[2] + wb * vb[2];
        const double r = std::sqrt(x * x + y * y + z * z);
        GeoPoint p;
        p.latitude_deg = std::asin(z / r) / kDegToRad;
        p.longitude_deg = std::atan2(y, x) / kDegToRad;
        out.push_back(p);
    }
    // Endpoints exact by construction.
    out.front() = a;
    out.back() = b;
    return out;
}

double radio_horizon(double antenna_height_m, double k, const EarthModel& earth) {
    if (k <= 0.0) throw std::invalid_argument("radio_horizon: k must be positive");
    if (antenna_height_m < 0.0)
        throw std::invalid_argument("radio_horizon: negative antenna height");
    return std::sqrt(2.0 * k * earth.radius_km * antenna_height_m / 1000.0);
}

double earth_bulge(double d1_km, double d2_km, double k, const EarthModel& earth) {
    if (k <= 0.0) throw std::invalid_argument("earth_bulge: k must be positive");
    if (d1_km < 0.0 || d2_km < 0.0)
        throw std::invalid_argument("earth_bulge: negative distance");
    return 1000.0 * d1_km * d2_km / (2.0 * k * earth.radius_km);
}

}  // namespace troppo
