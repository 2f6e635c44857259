#include <stdexcept>
#include <string>

#include "httplib.h"
#include "json.hpp"
#include "troppo/terrain.hpp"

namespace troppo {

TerrainProfile fetch_profile_http(const GeoPoint& a, const GeoPoint& b,
                                  std::size_t n, const std::string& endpoint_url,
                                  const EarthModel& earth) {
    if (n < 2)
        throw std::invalid_argument("fetch_profile_http: need at least 2 samples");

    // Split the URL into host part and path.
    std::string base = endpoint_url, path = "/";
    const std::size_t scheme = endpoint_url.find("://");
    if (scheme != std::string::npos) {
        const std::size_t slash = endpoint_url.find('/', scheme + 3);
        if (slash != std::string::npos) {
            base = endpoint_url.substr(0, slash);
            path = endpoint_url.substr(slash);
        }
    }

    const auto points = intermediate_points(a, b, n);
    nlohmann::json body;
    body["locations"] = nlohmann::json::array();
    for (const auto& p : points)
        body["locations"].push_back(
            {{"latitude", p.latitude_deg}, {"longitude", p.longitude_deg}});

    httplib::Client client(base);
    client.set_read_timeout(30, 0);
    auto res = client.Post(path, body.dump(), "application/json");
    if (!res)
        throw std::runtime_error("elevation endpoint unreachable: " + base);
    if (res->status != 200)
        throw std::runtime_error("elevation endpoint returned status " +
                                 std::to_string(res->status));

    nlohmann::json reply;
    try {
        reply = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("elevation endpoint: bad JSON: ") + e.what());
    }
    if (!reply.contains("results") || !reply["results"].is_array())
        throw std::runtime_error("elevation endpoint: missing results array");
    const auto& results = reply["results"];
    if (results.size() < n)
        throw std::runtime_error("elevation endpoint: short response (" +
                                 std::to_string(results.size()) + " of " +
                                 std::to_string(n) + ")");

    const double total = great_circle_distance(a, b, earth);
    TerrainProfile profile;
    profile.total_distance_km = total;
    profile.samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = total * static_cast<double>(i) / static_cast<double>(n - 1);
        profile.samples.push_back({d, results[i].at("elevation").get<double>()});
    }
    return profile;
}

}  // namespace troppo
