// troppo: tropospheric propagation analysis for long-distance LoRa links.
//
// Subcommands:
//   refract  - refractivity profile and regime from a radiosonde sounding
//   link     - propagation mechanism adjudication for a node->gateway path
//   ingest   - append LoRaWAN packet metadata into the store
//   stats    - daily/SF/series/summary products from the store

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "troppo/classifier.hpp"
#include "troppo/geodesy.hpp"
#include "troppo/ingest.hpp"
#include "troppo/linkbudget.hpp"
#include "troppo/radiosonde.hpp"
#include "troppo/refractivity.hpp"
#include "troppo/stats.hpp"
#include "troppo/terrain.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAnalysis = 1;
constexpr int kExitUsage = 2;
constexpr int kExitEnvironment = 3;

struct EnvironmentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    double earth_radius_km = 6371.0;
    double gradient_ceiling_m = 3000.0;
    std::string sensitivity_table_path;
    std::string elevation_url;
    std::string store_root = "troppo-store";
};

// key = value lines; flags override file values, file overrides environment.
void load_config_file(const std::string& path, Config& cfg) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            if (a == std::string::npos) return std::string();
            const auto b = s.find_last_not_of(" \t");
            return s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "earth_radius_km") cfg.earth_radius_km = std::stod(value);
        else if (key == "gradient_ceiling_m") cfg.gradient_ceiling_m = std::stod(value);
        else if (key == "sensitivity_table") cfg.sensitivity_table_path = value;
        else if (key == "elevation_url") cfg.elevation_url = value;
        else if (key == "store") cfg.store_root = value;
        else throw std::runtime_error("unknown config key: " + key);
    }
}

troppo::Sounding load_sounding(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sounding: " + path);
    return troppo::parse_wyoming_sounding(in);
}

troppo::SensitivityTable load_table(const Config& cfg) {
    if (cfg.sensitivity_table_path.empty())
        return troppo::SensitivityTable::lora_default();
    std::ifstream in(cfg.sensitivity_table_path);
    if (!in)
        throw std::runtime_error("cannot open sensitivity table: " +
                                 cfg.sensitivity_table_path);
    return troppo::SensitivityTable::load(in);
}

std::ostream& open_out(const std::string& out_path, std::ofstream& file) {
    if (out_path.empty()) return std::cout;
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot open output file: " + out_path);
    return file;
}

int cmd_refract(const Config& cfg, const std::string& sounding_path,
                const std::string& out_path) {
    const auto sounding = load_sounding(sounding_path);
    const troppo::EarthModel earth{cfg.earth_radius_km};
    const auto points = troppo::refractivity_profile(sounding);
    const auto layers = troppo::gradient_profile(sounding);

    std::ofstream file;
    std::ostream& out = open_out(out_path, file);
    out << "height_m,n_units,gradient_n_per_km,condition\n";
    std::map<double, double> n_by_height;
    for (const auto& p : points) n_by_height[p.height_m_asl] = p.n_units;
    for (const auto& l : layers) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%.1f,%.2f,%.2f,%s\n",
                      l.base_height_m_asl, n_by_height[l.base_height_m_asl],
                      l.gradient_n_per_km,
                      troppo::to_string(troppo::classify_gradient(l.gradient_n_per_km)));
        out << buf;
    }

    const auto dom = troppo::dominant_gradient(sounding, cfg.gradient_ceiling_m);
    std::ostream& info = out_path.empty() ? std::cerr : std::cout;
    info << "dominant gradient " << dom.layer.gradient_n_per_km << " N/km at "
         << dom.layer.base_height_m_asl << ".." << dom.layer.top_height_m_asl
         << " m: " << troppo::to_string(dom.condition);
    if (dom.condition == troppo::PropagationCondition::Ducting) {
        info << ", K undefined (ducting)\n";
    } else {
        info << ", K = " << troppo::k_factor(dom.layer.gradient_n_per_km, earth)
             << "\n";
    }
    return kExitOk;
}

int cmd_link(const Config& cfg, const std::string& registry_path,
             const std::string& node_id, const std::string& gateway_id,
             const std::string& profile_path, bool fetch, std::size_t samples,
             const std::string& sounding_path, int sf, bool json, bool strict) {
    const auto registry = troppo::StationRegistry::load_file(registry_path);
    const auto node = registry.nodes.find(node_id);
    if (node == registry.nodes.end())
        throw std::runtime_error("unknown device id: " + node_id);
    const auto gw = registry.gateways.find(gateway_id);
    if (gw == registry.gateways.end())
        throw std::runtime_error("unknown gateway id: " + gateway_id);

    troppo::LinkCase link;
    link.earth = troppo::EarthModel{cfg.earth_radius_km};
    link.gradient_ceiling_m = cfg.gradient_ceiling_m;
    link.node = {node->second.position, node->second.antenna_m_agl};
    link.gateway = {gw->second.position, gw->second.antenna_m_agl};
    link.radio.erp_dbm = node->second.erp_dbm;
    link.sf = sf;
    link.table = load_table(cfg);

    if (fetch) {
        if (cfg.elevation_url.empty())
            throw std::runtime_error(
                "no elevation endpoint configured (flag, config, or "
                "TROPPO_ELEVATION_URL)");
        try {
            link.profile = troppo::fetch_profile_http(
                node->second.position, gw->second.position, samples,
                cfg.elevation_url, link.earth);
        } catch (const std::exception& e) {
            throw EnvironmentError(e.what());
        }
    } else {
        std::ifstream in(profile_path);
        if (!in) throw std::runtime_error("cannot open profile: " + profile_path);
        link.profile = troppo::load_profile_csv(in);
    }
    link.profile.endpoint_a_antenna_m_agl = node->second.antenna_m_agl;
    link.profile.endpoint_b_antenna_m_agl = gw->second.antenna_m_agl;
    if (!sounding_path.empty()) link.sounding = load_sounding(sounding_path);

    const auto report = troppo::classify_link(link);
    std::cout << (json ? troppo::report_to_json(report)
                       : troppo::report_to_text(report))
              << "\n";
    if (strict && report.mechanism == troppo::Mechanism::Unexplained)
        return kExitAnalysis;
    return kExitOk;
}

class StoreLock {
public:
    explicit StoreLock(const std::filesystem::path& root) {
        std::filesystem::create_directories(root);
        fd_ = ::open((root / ".lock").c_str(), O_CREAT | O_RDWR, 0644);
        if (fd_ < 0) throw std::runtime_error("cannot open store lock file");
        if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
            ::close(fd_);
            fd_ = -1;
            throw std::runtime_error("store is locked by another writer");
        }
    }
    ~StoreLock() {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    StoreLock(const StoreLock&) = delete;
    StoreLock& operator=(const StoreLock&) = delete;

private:
    int fd_ = -1;
};

int cmd_ingest(const Config& cfg, const std::string& input_path,
               const std::string& format) {
    std::ifstream in(input_path);
    if (!in) throw std::runtime_error("cannot open input: " + input_path);
    const auto fmt = format == "ttn_v3" ? troppo::PacketFormat::TtnV3
                                        : troppo::PacketFormat::Canonical;

    std::optional<StoreLock> lock;
    try {
        lock.emplace(cfg.store_root);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEnvironment;
    }

    troppo::PacketStore store(cfg.store_root);
    const auto parsed = troppo::parse_packets(in, fmt);
    const auto appended = store.append(parsed.records);
    std::cout << appended.appended << " appended, " << appended.duplicates
              << " duplicate, " << parsed.rejects.size() << " rejected\n";
    for (const auto& rej : parsed.rejects)
        std::cerr << "line " << rej.line_number << ": " << rej.reason << "\n";
    return kExitOk;
}

int cmd_stats(const Config& cfg, const std::string& registry_path,
              const std::string& device, const std::string& gateway,
              const std::string& metric, const std::string& window, bool svg,
              const std::string& out_path) {
    troppo::PacketStore store(cfg.store_root);
    troppo::PacketStore::Query q;
    if (!device.empty()) q.device_id = device;
    if (!gateway.empty()) q.gateway_id = gateway;
    auto records = store.query(q);

    if (window != "all") {
        if (records.empty())
            throw std::runtime_error("windowed stats on an empty selection");
        const double days = window == "1d" ? 1 : window == "10d" ? 10 : 30;
        // Windows are anchored at the newest record, not the wall clock.
        const double newest =
            troppo::parse_iso8601_utc(records.back().received_at);
        q.from_epoch = newest - days * 86400.0;
        records = store.query(q);
    }

    std::ofstream file;
    std::ostream& out = open_out(out_path, file);
    if (metric == "daily") {
        const auto daily = troppo::daily_counts(records);
        out << (svg ? troppo::svg_daily(daily) : troppo::csv_daily(daily));
    } else if (metric == "sf") {
        const auto dist = troppo::sf_distribution(records);
        out << (svg ? troppo::svg_sf(dist) : troppo::csv_sf(dist));
    } else if (metric == "series") {
        out << (svg ? troppo::svg_series(records) : troppo::csv_series(records));
    } else {  // summary
        if (device.empty() || gateway.empty())
            throw std::runtime_error("summary needs --device and --gateway");
        const auto registry =
            registry_path.empty() ? troppo::StationRegistry{}
                                  : troppo::StationRegistry::load_file(registry_path);
        const auto s = troppo::link_summary(store, registry, device, gateway,
                                            troppo::EarthModel{cfg.earth_radius_km});
        for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
        if (svg) throw std::runtime_error("summary has no SVG form");
        out << troppo::csv_summary(s);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tropospheric propagation analysis for long-distance LoRa links"};
    app.require_subcommand(1);

    Config cfg;
    std::string config_path;
    app.add_option("--config", config_path, "key=value config file");
    if (const char* url = std::getenv("TROPPO_ELEVATION_URL"))
        cfg.elevation_url = url;

    // refract
    std::string sounding_path, out_path;
    auto* refract = app.add_subcommand("refract", "Refractivity profile from a sounding");
    refract->add_option("sounding", sounding_path, "Wyoming sounding file")->required();
    refract->add_option("--out", out_path, "write CSV here instead of stdout");

    // link
    std::string node_id, gateway_id, profile_path, link_sounding, registry_path;
    std::size_t samples = 128;
    int sf = 12;
    bool fetch = false, json = false, strict = false;
    auto* link = app.add_subcommand("link", "Classify the propagation mechanism");
    link->add_option("node", node_id, "device id")->required();
    link->add_option("gateway", gateway_id, "gateway id")->required();
    link->add_option("--registry", registry_path, "registry JSON")->required();
    auto* prof_opt = link->add_option("--profile", profile_path, "terrain CSV");
    auto* fetch_opt = link->add_flag("--fetch", fetch, "fetch terrain from elevation endpoint");
    prof_opt->excludes(fetch_opt);
    link->add_option("--samples", samples, "profile samples when fetching");
    link->add_option("--sounding", link_sounding, "Wyoming sounding file");
    link->add_option("--sf", sf, "spreading factor")->check(CLI::Range(7, 12));
    link->add_flag("--json", json, "emit JSON report");
    link->add_flag("--strict", strict, "exit 1 when the mechanism is Unexplained");
    link->add_option("--elevation-url", cfg.elevation_url, "bulk elevation endpoint");

    // ingest
    std::string input_path, format = "canonical";
    auto* ingest = app.add_subcommand("ingest", "Append packet metadata to the store");
    ingest->add_option("input", input_path, "JSON-lines file")->required();
    ingest->add_option("--format", format, "canonical or ttn_v3")
        ->check(CLI::IsMember({"canonical", "ttn_v3"}));

    // stats
    std::string device, gateway, metric = "daily", window = "all", stats_out;
    bool svg = false;
    auto* stats = app.add_subcommand("stats", "Analysis products from the store");
    stats->add_option("--device", device, "filter by device id");
    stats->add_option("--gateway", gateway, "filter by gateway id");
    stats->add_option("--metric", metric, "daily, sf, series or summary")
        ->check(CLI::IsMember({"daily", "sf", "series", "summary"}));
    stats->add_option("--window", window, "all, 1d, 10d or 30d")
        ->check(CLI::IsMember({"all", "1d", "10d", "30d"}));
    stats->add_flag("--svg", svg, "emit SVG instead of CSV");
    stats->add_option("--out", stats_out, "write output here instead of stdout");
    stats->add_option("--registry", registry_path, "registry JSON (for summary)");

    app.add_option("--store", cfg.store_root, "packet store root directory");
    app.add_option("--earth-radius", cfg.earth_radius_km, "earth radius, km");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (!config_path.empty()) {
            Config file_cfg = cfg;
            load_config_file(config_path, file_cfg);
            // Explicit flags win over file values.
            if (app.count("--store") == 0) cfg.store_root = file_cfg.store_root;
            if (app.count("--earth-radius") == 0)
                cfg.earth_radius_km = file_cfg.earth_radius_km;
            cfg.gradient_ceiling_m = file_cfg.gradient_ceiling_m;
            cfg.sensitivity_table_path = file_cfg.sensitivity_table_path;
            if (link->count("--elevation-url") == 0 &&
                !file_cfg.elevation_url.empty())
                cfg.elevation_url = file_cfg.elevation_url;
        }

        if (refract->parsed()) return cmd_refract(cfg, sounding_path, out_path);
        if (link->parsed())
            return cmd_link(cfg, registry_path, node_id, gateway_id, profile_path,
                            fetch, samples, link_sounding, sf, json, strict);
        if (ingest->parsed()) return cmd_ingest(cfg, input_path, format);
        if (stats->parsed())
            return cmd_stats(cfg, registry_path, device, gateway, metric, window,
                             svg, stats_out);
    } catch (const EnvironmentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEnvironment;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
