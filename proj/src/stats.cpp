#include "troppo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace troppo {

namespace {

// %g-style shortest formatting would not be byte-stable across locales;
// fixed formatting with trailing-zero trim is.
std::string num(double v, int prec = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
    std::string s = buf;
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    return s;
}

}  // namespace

std::string utc_date(double epoch_seconds) {
    long days = static_cast<long>(std::floor(epoch_seconds / 86400.0));
    // Inverse of the civil-days algorithm.
    days += 719468;
    const long era = (days >= 0 ? days : days - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(days - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long y = static_cast<long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%04ld-%02u-%02u", y + (m <= 2), m, d);
    return buf;
}

std::vector<DailyCount> daily_counts(const std::vector<PacketRecord>& records) {
    if (records.empty()) return {};
    std::map<long, std::size_t> by_day;
    long first = 0, last = 0;
    bool init = false;
    for (const auto& r : records) {
        const long day =
            static_cast<long>(std::floor(parse_iso8601_utc(r.received_at) / 86400.0));
        ++by_day[day];
        if (!init || day < first) first = day;
        if (!init || day > last) last = day;
        init = true;
    }
    std::vector<DailyCount> out;
    for (long day = first; day <= last; ++day) {
        const auto it = by_day.find(day);
        out.push_back({utc_date(static_cast<double>(day) * 86400.0),
                       it == by_day.end() ? 0 : it->second});
    }
    return out;
}

std::map<int, std::size_t> sf_distribution(const std::vector<PacketRecord>& records) {
    std::map<int, std::size_t> out;
    for (int sf = 7; sf <= 12; ++sf) out[sf] = 0;
    for (const auto& r : records) {
        if (r.spreading_factor < 7 || r.spreading_factor > 12)
            throw std::invalid_argument("sf_distribution: SF out of range");
        ++out[r.spreading_factor];
    }
    return out;
}

LinkSummary link_summary(const PacketStore& store, const StationRegistry& registry,
                         const std::string& device_id, const std::string& gateway_id,
                         const EarthModel& earth) {
    PacketStore::Query q;
    q.device_id = device_id;
    q.gateway_id = gateway_id;
    const auto records = store.query(q);
    if (records.empty())
        throw std::runtime_error("link_summary: no records for " + device_id +
                                 " -> " + gateway_id);

    LinkSummary s;
    s.device_id = device_id;
    s.gateway_id = gateway_id;
    s.packet_count = records.size();
    s.first_seen = records.front().received_at;
    s.last_seen = records.back().received_at;
    s.sf_histogram = sf_distribution(records);

    double rssi_sum = 0, snr_sum = 0;
    s.rssi_min = s.rssi_max = records.front().rssi_dbm;
    s.snr_min = s.snr_max = records.front().snr_db;
    for (const auto& r : records) {
        s.rssi_min = std::min(s.rssi_min, static_cast<double>(r.rssi_dbm));
        s.rssi_max = std::max(s.rssi_max, static_cast<double>(r.rssi_dbm));
        s.snr_min = std::min(s.snr_min, r.snr_db);
        s.snr_max = std::max(s.snr_max, r.snr_db);
        rssi_sum += r.rssi_dbm;
        snr_sum += r.snr_db;
    }
    s.rssi_mean = rssi_sum / static_cast<double>(records.size());
    s.snr_mean = snr_sum / static_cast<double>(records.size());

    const auto node = registry.nodes.find(device_id);
    const auto gw = registry.gateways.find(gateway_id);
    if (node == registry.nodes.end())
        s.warnings.push_back("device '" + device_id + "' not in registry");
    if (gw == registry.gateways.end())
        s.warnings.push_back("gateway '" + gateway_id + "' not in registry");
    if (node != registry.nodes.end() && gw != registry.gateways.end())
        s.distance_km = great_circle_distance(node->second.position,
                                              gw->second.position, earth);
    return s;
}

std::string csv_daily(const std::vector<DailyCount>& daily) {
    std::string out = "date,count\n";
    for (const auto& d : daily)
        out += d.date + "," + std::to_string(d.count) + "\n";
    return out;
}

std::string csv_sf(const std::map<int, std::size_t>& dist) {
    std::string out = "sf,count\n";
    for (const auto& [sf, count] : dist)
        out += std::to_string(sf) + "," + std::to_string(count) + "\n";
    return out;
}

std::string csv_series(const std::vector<PacketRecord>& records) {
    std::string out = "received_at,rssi_dbm,snr_db,sf\n";
    for (const auto& r : records)
        out += r.received_at + "," + std::to_string(r.rssi_dbm) + "," +
               num(r.snr_db) + "," + std::to_string(r.spreading_factor) + "\n";
    return out;
}

std::string csv_summary(const LinkSummary& s) {
    std::string out =
        "device_id,gateway_id,distance_km,packet_count,first_seen,last_seen,"
        "rssi_min,rssi_max,rssi_mean,snr_min,snr_max,snr_mean,"
        "sf7,sf8,sf9,sf10,sf11,sf12\n";
    out += s.device_id + "," + s.gateway_id + ",";
    out += (s.distance_km ? num(*s.distance_km, 2) : std::string()) + ",";
    out += std::to_string(s.packet_count) + "," + s.first_seen + "," + s.last_seen;
    out += "," + num(s.rssi_min) + "," + num(s.rssi_max) + "," + num(s.rssi_mean, 2);
    out += "," + num(s.snr_min) + "," + num(s.snr_max) + "," + num(s.snr_mean, 2);
    for (int sf = 7; sf <= 12; ++sf) {
        const auto it = s.sf_histogram.find(sf);
        out += "," + std::to_string(it == s.sf_histogram.end() ? 0 : it->second);
    }
    out += "\n";
    return out;
}

namespace {

std::string svg_open(int width, int height) {
    std::ostringstream ss;
    ss << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
       << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
       << height << "\">\n";
    return ss.str();
}

std::string bars(const std::vector<std::pair<std::string, double>>& data,
                 const char* key_attr) {
    constexpr int kWidth = 800, kHeight = 300, kPad = 20;
    double vmax = 1.0;
    for (const auto& [k, v] : data) vmax = std::max(vmax, v);
    std::ostringstream ss;
    ss << svg_open(kWidth, kHeight);
    const double bw =
        (kWidth - 2.0 * kPad) / std::max<std::size_t>(1, data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double h = (kHeight - 2.0 * kPad) * data[i].second / vmax;
        ss << "  <rect class=\"bar\" " << key_attr << "=\"" << data[i].first
           << "\" data-value=\"" << num(data[i].second) << "\" x=\""
           << num(kPad + bw * static_cast<double>(i), 2) << "\" y=\""
           << num(kHeight - kPad - h, 2) << "\" width=\"" << num(bw * 0.9, 2)
           << "\" height=\"" << num(h, 2) << "\"/>\n";
    }
    ss << "</svg>\n";
    return ss.str();
}

}  // namespace

std::string svg_daily(const std::vector<DailyCount>& daily) {
    std::vector<std::pair<std::string, double>> data;
    for (const auto& d : daily)
        data.emplace_back(d.date, static_cast<double>(d.count));
    return bars(data, "data-date");
}

std::string svg_sf(const std::map<int, std::size_t>& dist) {
    std::vector<std::pair<std::string, double>> data;
    for (const auto& [sf, count] : dist)
        data.emplace_back(std::to_string(sf), static_cast<double>(count));
    return bars(data, "data-sf");
}

std::string svg_series(const std::vector<PacketRecord>& records) {
    constexpr int kWidth = 800, kHeight = 300, kPad = 20;
    std::ostringstream ss;
    ss << svg_open(kWidth, kHeight);
    if (!records.empty()) {
        const double t0 = parse_iso8601_utc(records.front().received_at);
        const double t1 = parse_iso8601_utc(records.back().received_at);
        const double span = std::max(1.0, t1 - t0);
        double rmin = records.front().rssi_dbm, rmax = rmin;
        for (const auto& r : records) {
            rmin = std::min(rmin, static_cast<double>(r.rssi_dbm));
            rmax = std::max(rmax, static_cast<double>(r.rssi_dbm));
        }
        const double rspan = std::max(1.0, rmax - rmin);
        for (const auto& r : records) {
            const double t = parse_iso8601_utc(r.received_at);
            const double x = kPad + (kWidth - 2.0 * kPad) * (t - t0) / span;
            const double y =
                kHeight - kPad - (kHeight - 2.0 * kPad) * (r.rssi_dbm - rmin) / rspan;
            ss << "  <circle class=\"pt\" data-received-at=\"" << r.received_at
               << "\" data-rssi=\"" << r.rssi_dbm << "\" data-snr=\""
               << num(r.snr_db) << "\" data-sf=\"" << r.spreading_factor
               << "\" cx=\"" << num(x, 2) << "\" cy=\"" << num(y, 2)
               << "\" r=\"2\"/>\n";
        }
    }
    ss << "</svg>\n";
    return ss.str();
}

}  // namespace troppo
