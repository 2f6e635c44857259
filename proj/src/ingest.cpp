#include "troppo/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace troppo {

using nlohmann::json;

double parse_iso8601_utc(const std::string& ts) {
    int y, mo, d, h, mi;
    double sec;
    char tail[8] = {0};
    if (std::sscanf(ts.c_str(), "%d-%d-%dT%d:%d:%lf%1s", &y, &mo, &d, &h, &mi,
                    &sec, tail) != 7 ||
        tail[0] != 'Z' || mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 ||
        mi > 59 || sec < 0.0 || sec >= 61.0)
        throw std::runtime_error("bad ISO-8601 UTC timestamp: " + ts);
    // Days since the epoch (Howard Hinnant's civil-days algorithm).
    const int yy = y - (mo <= 2);
    const int era = (yy >= 0 ? yy : yy - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(yy - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(mo + (mo > 2 ? -3 : 9)) + 2) / 5 +
                         static_cast<unsigned>(d) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    const long days = era * 146097L + static_cast<long>(doe) - 719468L;
    return static_cast<double>(days) * 86400.0 + h * 3600.0 + mi * 60.0 + sec;
}

StationRegistry StationRegistry::load(std::istream& in) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("registry: bad JSON: ") + e.what());
    }
    StationRegistry reg;
    const auto read_point = [](const json& e) {
        GeoPoint p;
        p.latitude_deg = e.at("lat").get<double>();
        p.longitude_deg = e.at("lon").get<double>();
        if (e.contains("elevation_m"))
            p.elevation_m_asl = e["elevation_m"].get<double>();
        if (!valid_point(p))
            throw std::runtime_error("registry: coordinates out of range");
        return p;
    };
    if (j.contains("nodes")) {
        for (const auto& [id, e] : j["nodes"].items()) {
            NodeEntry n;
            n.position = read_point(e);
            n.antenna_m_agl = e.value("antenna_m_agl", 0.0);
            n.erp_dbm = e.value("erp_dbm", 14.0);
            reg.nodes.emplace(id, n);
        }
    }
    if (j.contains("gateways")) {
        for (const auto& [id, e] : j["gateways"].items()) {
            GatewayEntry g;
            g.position = read_point(e);
            g.antenna_m_agl = e.value("antenna_m_agl", 0.0);
            reg.gateways.emplace(id, g);
        }
    }
    return reg;
}

StationRegistry StationRegistry::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("registry: cannot open " + path.string());
    return load(in);
}

namespace {

PacketRecord canonical_record(const json& j) {
    PacketRecord r;
    r.received_at = j.at("received_at").get<std::string>();
    parse_iso8601_utc(r.received_at);  // validate
    r.device_id = j.at("device_id").get<std::string>();
    r.gateway_id = j.at("gateway_id").get<std::string>();
    r.rssi_dbm = j.at("rssi").get<int>();
    r.snr_db = j.at("snr").get<double>();
    r.spreading_factor = j.at("spreading_factor").get<int>();
    r.bandwidth_khz = j.at("bandwidth_khz").get<double>();
    r.frequency_mhz = j.at("frequency_mhz").get<double>();
    const auto cnt = j.at("counter").get<std::int64_t>();
    if (cnt < 0) throw std::runtime_error("negative counter");
    r.counter = static_cast<std::uint32_t>(cnt);
    if (r.spreading_factor < 7 || r.spreading_factor > 12)
        throw std::runtime_error("spreading_factor out of range 7..12");
    if (r.device_id.empty() || r.gateway_id.empty())
        throw std::runtime_error("empty device or gateway id");
    return r;
}

std::vector<PacketRecord> ttn_v3_records(const json& j) {
    const auto& up = j.at("uplink_message");
    PacketRecord base;
    base.received_at = j.at("received_at").get<std::string>();
    parse_iso8601_utc(base.received_at);
    base.device_id = j.at("end_device_ids").at("device_id").get<std::string>();
    const auto cnt = up.value("f_cnt", std::int64_t{0});
    if (cnt < 0) throw std::runtime_error("negative f_cnt");
    base.counter = static_cast<std::uint32_t>(cnt);
    const auto& lora = up.at("settings").at("data_rate").at("lora");
    base.spreading_factor = lora.at("spreading_factor").get<int>();
    if (base.spreading_factor < 7 || base.spreading_factor > 12)
        throw std::runtime_error("spreading_factor out of range 7..12");
    base.bandwidth_khz = lora.at("bandwidth").get<double>() / 1000.0;
    // TTN carries the frequency as a string of hertz.
    const auto& freq = up.at("settings").at("frequency");
    base.frequency_mhz =
        (freq.is_string() ? std::stod(freq.get<std::string>()) : freq.get<double>()) / 1e6;

    std::vector<PacketRecord> out;
    for (const auto& rx : up.at("rx_metadata")) {
        PacketRecord r = base;
        r.gateway_id = rx.at("gateway_ids").at("gateway_id").get<std::string>();
        r.rssi_dbm = rx.at("rssi").get<int>();
        r.snr_db = rx.value("snr", 0.0);
        out.push_back(std::move(r));
    }
    if (out.empty()) throw std::runtime_error("uplink with no rx_metadata");
    return out;
}

std::string pair_filename(const std::string& device, const std::string& gateway) {
    const auto sanitize = [](const std::string& s) {
        std::string out;
        for (char c : s)
            out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-') ? c : '_';
        return out;
    };
    return sanitize(device) + "__" + sanitize(gateway) + ".jsonl";
}

PacketRecord record_from_store_line(const std::string& line) {
    return canonical_record(json::parse(line));
}

std::string dedupe_key(const PacketRecord& r) {
    return r.device_id + '\x1f' + r.gateway_id + '\x1f' +
           std::to_string(r.counter) + '\x1f' + r.received_at;
}

}  // namespace

ParseResult parse_packets(std::istream& in, PacketFormat format) {
    ParseResult result;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            const json j = json::parse(line);
            if (format == PacketFormat::Canonical) {
                result.records.push_back(canonical_record(j));
            } else {
                auto recs = ttn_v3_records(j);
                result.records.insert(result.records.end(), recs.begin(), recs.end());
            }
        } catch (const std::exception& e) {
            result.rejects.push_back({lineno, e.what()});
        }
    }
    return result;
}

std::string packet_to_json(const PacketRecord& r) {
    json j;
    j["received_at"] = r.received_at;
    j["device_id"] = r.device_id;
    j["gateway_id"] = r.gateway_id;
    j["rssi"] = r.rssi_dbm;
    j["snr"] = r.snr_db;
    j["spreading_factor"] = r.spreading_factor;
    j["bandwidth_khz"] = r.bandwidth_khz;
    j["frequency_mhz"] = r.frequency_mhz;
    j["counter"] = r.counter;
    return j.dump();
}

PacketStore::PacketStore(std::filesystem::path root) : root_(std::move(root)) {
    std::filesystem::create_directories(root_);
}

PacketStore::AppendResult PacketStore::append(const std::vector<PacketRecord>& records) {
    AppendResult result;
    // Group by target file, then load that file's keys once.
    std::map<std::string, std::vector<const PacketRecord*>> by_file;
    for (const auto& r : records)
        by_file[pair_filename(r.device_id, r.gateway_id)].push_back(&r);

    for (const auto& [name, recs] : by_file) {
        const auto path = root_ / name;
        std::set<std::string> keys;
        if (std::filesystem::exists(path)) {
            std::ifstream in(path);
            std::string line;
            while (std::getline(in, line))
                if (!line.empty()) keys.insert(dedupe_key(record_from_store_line(line)));
        }
        std::ofstream out(path, std::ios::app);
        if (!out)
            throw std::runtime_error("store: cannot open for append: " + path.string());
        for (const auto* r : recs) {
            if (!keys.insert(dedupe_key(*r)).second) {
                ++result.duplicates;
                continue;
            }
            out << packet_to_json(*r) << '\n';
            if (!out)
                throw std::runtime_error("store: write failed: " + path.string());
            ++result.appended;
        }
    }
    return result;
}

std::vector<PacketRecord> PacketStore::query(const Query& q) const {
    std::vector<PacketRecord> out;
    if (!std::filesystem::exists(root_)) return out;
    for (const auto& entry : std::filesystem::directory_iterator(root_)) {
        if (entry.path().extension() != ".jsonl") continue;
        std::ifstream in(entry.path());
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            PacketRecord r = record_from_store_line(line);
            if (q.device_id && r.device_id != *q.device_id) continue;
            if (q.gateway_id && r.gateway_id != *q.gateway_id) continue;
            if (q.from_epoch || q.to_epoch) {
                const double t = parse_iso8601_utc(r.received_at);
                if (q.from_epoch && t < *q.from_epoch) continue;
                if (q.to_epoch && t > *q.to_epoch) continue;
            }
            out.push_back(std::move(r));
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const PacketRecord& a, const PacketRecord& b) {
                         return parse_iso8601_utc(a.received_at) <
                                parse_iso8601_utc(b.received_at);
                     });
    return out;
}

}  // namespace troppo
