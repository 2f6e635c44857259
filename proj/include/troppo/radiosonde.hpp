#ifndef TROPPO_RADIOSONDE_HPP
#define TROPPO_RADIOSONDE_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "troppo/geodesy.hpp"

namespace troppo {

struct SoundingLevel {
    double pressure_hpa = 0.0;
    double height_m_asl = 0.0;
    double temperature_k = 0.0;
    double mixing_ratio_g_kg = 0.0;
};

struct Sounding {
    std::string station_id;
    std::string launch_time;  // ISO-8601 UTC, empty if unknown
    std::optional<GeoPoint> station_location;
    std::vector<SoundingLevel> levels;  // strictly increasing height
    std::size_t skipped_rows = 0;       // data rows dropped for blank fields
};

/// Parse a University-of-Wyoming style sounding: fixed-width 7-char columns
/// PRES HGHT TEMP DWPT RELH MIXR DRCT SKNT THTA THTE THTV under a dashed
/// header block. Only PRES, HGHT, TEMP, MIXR are retained; TEMP is converted
/// from Celsius to kelvin. Rows with any required field blank are skipped
/// and counted, not errors.
Sounding parse_wyoming_sounding(std::istream& in);
Sounding parse_wyoming_sounding(const std::string& text);

/// Fixed-width serialization of the retained columns, re-parseable by
/// parse_wyoming_sounding.
std::string format_wyoming_sounding(const Sounding& s);

}  // namespace troppo

#endif
