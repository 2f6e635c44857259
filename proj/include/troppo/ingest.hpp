#ifndef TROPPO_INGEST_HPP
#define TROPPO_INGEST_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "troppo/geodesy.hpp"

namespace troppo {

struct PacketRecord {
    std::string received_at;  // ISO-8601 UTC
    std::string device_id;
    std::string gateway_id;
    int rssi_dbm = 0;
    double snr_db = 0.0;
    int spreading_factor = 12;  // 7..12
    double bandwidth_khz = 125.0;
    double frequency_mhz = 868.0;
    std::uint32_t counter = 0;

    bool operator==(const PacketRecord&) const = default;
};

/// Seconds since the epoch (UTC) for "YYYY-MM-DDTHH:MM:SS[.fff]Z".
/// Throws on malformed input.
double parse_iso8601_utc(const std::string& ts);

struct NodeEntry {
    GeoPoint position;
    double antenna_m_agl = 0.0;
    double erp_dbm = 14.0;
};

struct GatewayEntry {
    GeoPoint position;
    double antenna_m_agl = 0.0;
};

struct StationRegistry {
    std::map<std::string, NodeEntry> nodes;
    std::map<std::string, GatewayEntry> gateways;

    static StationRegistry load(std::istream& in);
    static StationRegistry load_file(const std::filesystem::path& path);
};

enum class PacketFormat { Canonical, TtnV3 };

struct RejectedLine {
    std::size_t line_number = 0;
    std::string reason;
};

struct ParseResult {
    std::vector<PacketRecord> records;
    std::vector<RejectedLine> rejects;
};

/// Newline-delimited JSON. Canonical lines map 1:1 onto PacketRecord; TTN v3
/// uplinks expand to one record per reporting gateway. Malformed lines become
/// rejects, never batch failures.
ParseResult parse_packets(std::istream& in, PacketFormat format);

/// Append-only JSON-lines store, one file per (device, gateway) pair.
/// Single writer, any number of readers.
class PacketStore {
public:
    explicit PacketStore(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }

    struct AppendResult {
        std::size_t appended = 0;
        std::size_t duplicates = 0;
    };

    /// Duplicates keyed on (device, gateway, counter, received_at) are
    /// skipped and counted.
    AppendResult append(const std::vector<PacketRecord>& records);

    struct Query {
        std::optional<std::string> device_id;
        std::optional<std::string> gateway_id;
        std::optional<double> from_epoch;  // inclusive
        std::optional<double> to_epoch;    // inclusive
    };

    /// Matching records sorted by received_at ascending.
    std::vector<PacketRecord> query(const Query& q = {}) const;

private:
    std::filesystem::path root_;
};

std::string packet_to_json(const PacketRecord& r);

}  // namespace troppo

#endif
