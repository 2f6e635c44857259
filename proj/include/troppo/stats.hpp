#ifndef TROPPO_STATS_HPP
#define TROPPO_STATS_HPP

#include <map>
#include <string>
#include <vector>

#include "troppo/ingest.hpp"

namespace troppo {

struct DailyCount {
    std::string date;  // YYYY-MM-DD, UTC
    std::size_t count = 0;
};

/// Packets per UTC calendar date, dense over [first, last] with explicit
/// zeros for silent days.
std::vector<DailyCount> daily_counts(const std::vector<PacketRecord>& records);

/// Count per spreading factor; all of 7..12 present.
std::map<int, std::size_t> sf_distribution(const std::vector<PacketRecord>& records);

struct LinkSummary {
    std::string device_id;
    std::string gateway_id;
    std::optional<double> distance_km;
    std::size_t packet_count = 0;
    std::string first_seen;
    std::string last_seen;
    double rssi_min = 0, rssi_max = 0, rssi_mean = 0;
    double snr_min = 0, snr_max = 0, snr_mean = 0;
    std::map<int, std::size_t> sf_histogram;
    std::vector<std::string> warnings;
};

LinkSummary link_summary(const PacketStore& store, const StationRegistry& registry,
                         const std::string& device_id, const std::string& gateway_id,
                         const EarthModel& earth = {});

// Deterministic CSV emitters: fixed column order, ISO dates, '.' decimal,
// '\n' line endings.
std::string csv_daily(const std::vector<DailyCount>& daily);
std::string csv_sf(const std::map<int, std::size_t>& dist);
std::string csv_series(const std::vector<PacketRecord>& records);
std::string csv_summary(const LinkSummary& s);

// SVG charts; each data element carries its value in data-* attributes.
std::string svg_daily(const std::vector<DailyCount>& daily);
std::string svg_sf(const std::map<int, std::size_t>& dist);
std::string svg_series(const std::vector<PacketRecord>& records);

/// YYYY-MM-DD of the UTC day containing the epoch time.
std::string utc_date(double epoch_seconds);

}  // namespace troppo

#endif
