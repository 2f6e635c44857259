#ifndef TROPPO_GEODESY_HPP
#define TROPPO_GEODESY_HPP

#include <optional>
#include <vector>

namespace troppo {

struct GeoPoint {
    double latitude_deg = 0.0;   // [-90, 90]
    double longitude_deg = 0.0;  // [-180, 180]
    std::optional<double> elevation_m_asl;
};

struct EarthModel {
    double radius_km = 6371.0;
};

bool valid_point(const GeoPoint& p);

/// Haversine distance in km on a sphere of the model's radius.
double great_circle_distance(const GeoPoint& a, const GeoPoint& b,
                             const EarthModel& earth = {});

/// n equally spaced points on the great circle from a to b, endpoints included.
/// Requires n >= 2.
std::vector<GeoPoint> intermediate_points(const GeoPoint& a, const GeoPoint& b,
                                          std::size_t n);

/// Distance to the radio horizon, km, for an antenna h meters above ground
/// under effective earth radius factor k:  d = sqrt(2 * k * a * h).
double radio_horizon(double antenna_height_m, double k,
                     const EarthModel& earth = {});

/// Apparent rise of the earth's surface, in meters, at a point d1 km from one
/// end and d2 km from the other:  b = d1*d2 / (2*k*a).
double earth_bulge(double d1_km, double d2_km, double k,
                   const EarthModel& earth = {});

}  // namespace troppo

#endif
