#ifndef TROPPO_REFRACTIVITY_HPP
#define TROPPO_REFRACTIVITY_HPP

#include <string>
#include <vector>

#include "troppo/geodesy.hpp"
#include "troppo/radiosonde.hpp"

namespace troppo {

struct RefractivityPoint {
    double height_m_asl = 0.0;
    double n_units = 0.0;
};

struct GradientLayer {
    double base_height_m_asl = 0.0;
    double top_height_m_asl = 0.0;
    double gradient_n_per_km = 0.0;
};

enum class PropagationCondition { SubRefraction, Normal, SuperRefraction, Ducting };

const char* to_string(PropagationCondition c);

/// Radio refractivity in N-units from pressure (hPa), temperature (K) and
/// water-vapor mixing ratio (g/kg):
///   N = 77.6*P/T + 3.73e5 * r*P / (T^2 * (622 + r))
double refractivity(double p_hpa, double t_k, double r_g_kg);

/// N at each sounding level.
std::vector<RefractivityPoint> refractivity_profile(const Sounding& s);

/// Finite-difference dN/dh between consecutive levels, in N-units per km.
/// Layers thinner than 10 m are merged into the next layer.
std::vector<GradientLayer> gradient_profile(const Sounding& s);

/// Regime from the gradient. Boundary values -79 and -157 go to the more
/// anomalous regime.
PropagationCondition classify_gradient(double gradient_n_per_km);

/// Effective earth radius factor K = 1 / (1 + a * g * 1e-6).
/// Throws for gradients at or below the ducting singularity.
double k_factor(double gradient_n_per_km, const EarthModel& earth = {});

constexpr double kStandardAtmosphereGradient = -39.2;  // N-units/km, K = 4/3

struct DominantGradient {
    GradientLayer layer;
    PropagationCondition condition;
};

/// Most negative gradient among layers based at most ceiling_m above the
/// station (first-level height, or the station location's elevation when set).
DominantGradient dominant_gradient(const Sounding& s, double ceiling_m_agl = 3000.0);

}  // namespace troppo

#endif
