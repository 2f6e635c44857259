#ifndef TROPPO_TERRAIN_HPP
#define TROPPO_TERRAIN_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "troppo/geodesy.hpp"

namespace troppo {

struct TerrainSample {
    double distance_km = 0.0;
    double elevation_m_asl = 0.0;
};

struct TerrainProfile {
    double total_distance_km = 0.0;
    std::vector<TerrainSample> samples;  // strictly increasing distance, [0, total]
    double endpoint_a_antenna_m_agl = 0.0;
    double endpoint_b_antenna_m_agl = 0.0;
};

struct ClearanceResult {
    bool blocked = false;
    double min_clearance_m = 0.0;  // signed; negative = intrusion
    std::size_t obstacle_index = 0;
    double obstacle_distance_km = 0.0;
};

/// CSV with header `distance_km,elevation_m`. Antenna heights are supplied
/// separately by the caller.
TerrainProfile load_profile_csv(std::istream& in);
TerrainProfile load_profile_csv(const std::string& text);

std::string format_profile_csv(const TerrainProfile& p);

/// Profile with n samples along the great circle from a to b, elevations from
/// a bulk-elevation HTTP endpoint (POST {"locations":[{latitude,longitude}..]}
/// -> {"results":[{elevation}..]}).
TerrainProfile fetch_profile_http(const GeoPoint& a, const GeoPoint& b,
                                  std::size_t n, const std::string& endpoint_url,
                                  const EarthModel& earth = {});

/// Sample elevations plus the earth bulge at effective radius factor k.
std::vector<TerrainSample> effective_profile(const TerrainProfile& p, double k,
                                             const EarthModel& earth = {});

/// Straight sightline between the antenna tops over the effective terrain.
ClearanceResult los_clearance(const TerrainProfile& p, double k,
                              const EarthModel& earth = {});

/// Single knife-edge Fresnel parameter; h is the obstacle height above the
/// sightline in meters (positive when blocking), d1/d2 the sub-path lengths.
double fresnel_nu(double h_m, double d1_km, double d2_km, double f_mhz);

/// First Fresnel zone radius in meters at the same geometry.
double fresnel_zone_radius(double d1_km, double d2_km, double f_mhz);

struct Obstacle {
    std::size_t index = 0;
    double nu = 0.0;
    double distance_km = 0.0;
    double height_above_sightline_m = 0.0;
};

/// Interior sample maximizing the knife-edge parameter at factor k.
Obstacle dominant_obstacle(const TerrainProfile& p, double k, double f_mhz,
                           const EarthModel& earth = {});

}  // namespace troppo

#endif
