#ifndef TROPPO_CLASSIFIER_HPP
#define TROPPO_CLASSIFIER_HPP

#include <optional>
#include <string>

#include "troppo/geodesy.hpp"
#include "troppo/linkbudget.hpp"
#include "troppo/radiosonde.hpp"
#include "troppo/terrain.hpp"

namespace troppo {

struct Station {
    GeoPoint position;
    double antenna_m_agl = 0.0;
};

struct LinkCase {
    Station node;
    Station gateway;
    TerrainProfile profile;
    std::optional<Sounding> sounding;
    RadioConfig radio;
    int sf = 12;
    SensitivityTable table = SensitivityTable::lora_default();
    EarthModel earth;
    double gradient_ceiling_m = 3000.0;
};

enum class Mechanism {
    LineOfSight,
    Diffraction,
    SuperRefraction,
    DiffractionPlusSuperRefraction,
    TroposphericDuct,
    Unexplained,
};

const char* to_string(Mechanism m);

struct MechanismReport {
    Mechanism mechanism = Mechanism::Unexplained;
    double k_used = 4.0 / 3.0;
    std::optional<double> gradient_n_per_km;
    std::optional<double> nu;
    std::optional<double> diffraction_loss_db;
    std::optional<double> predicted_rx_dbm;
    std::optional<double> margin_db;
    std::string narrative;
};

/// Decide which mechanism explains the link:
///  1. clear at K = 4/3                      -> LineOfSight
///  2. sounding gradient in the duct regime  -> TroposphericDuct
///  3. clear at K from the gradient          -> SuperRefraction
///  4. knife-edge loss leaves the signal
///     above sensitivity                     -> Diffraction (normal gradient)
///                                              or DiffractionPlusSuperRefraction
///  5. otherwise                             -> Unexplained
MechanismReport classify_link(const LinkCase& c);

std::string report_to_json(const MechanismReport& r);
std::string report_to_text(const MechanismReport& r);

}  // namespace troppo

#endif
