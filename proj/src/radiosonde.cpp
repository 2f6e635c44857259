#include "troppo/radiosonde.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace troppo {

namespace {

constexpr int kColWidth = 7;
constexpr int kColPres = 0;
constexpr int kColHght = 1;
constexpr int kColTemp = 2;
constexpr int kColMixr = 5;

const char* kMonths[12] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                           "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

// Extract the fixed-width field `col`; empty string if blank or the line
// is too short.
std::string field(const std::string& line, int col) {
    const std::size_t start = static_cast<std::size_t>(col) * kColWidth;
    if (start >= line.size()) return {};
    std::string f = line.substr(start, kColWidth);
    std::size_t a = f.find_first_not_of(' ');
    if (a == std::string::npos) return {};
    std::size_t b = f.find_last_not_of(' ');
    return f.substr(a, b - a + 1);
}

bool parse_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end && *end == '\0';
}

bool is_dashed(const std::string& line) {
    if (line.empty()) return false;
    for (char c : line)
        if (c != '-' && c != ' ') return false;
    return line.find('-') != std::string::npos;
}

// "16045 LIPI Rivolto Observations at 12Z 14 Feb 2020"
void parse_title(const std::string& line, Sounding& s) {
    std::istringstream ss(line);
    std::string tok;
    if (ss >> tok) s.station_id = tok;
    const std::size_t at = line.find("Observations at ");
    if (at == std::string::npos) return;
    int hour = 0, day = 0, year = 0;
    char mon[8] = {0};
    if (std::sscanf(line.c_str() + at, "Observations at %dZ %d %3s %d",
                    &hour, &day, mon, &year) == 4) {
        for (int i = 0; i < 12; ++i) {
            if (std::string(mon) == kMonths[i]) {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:00:00Z",
                              year, i + 1, day, hour);
                s.launch_time = buf;
                break;
            }
        }
    }
}

}  // namespace

Sounding parse_wyoming_sounding(std::istream& in) {
    std::vector<std::string> lines;
    std::string raw;
    while (std::getline(in, raw)) {
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        lines.push_back(raw);
    }

    std::size_t header = lines.size();
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].find("PRES") != std::string::npos &&
            lines[i].find("HGHT") != std::string::npos &&
            lines[i].find("TEMP") != std::string::npos) {
            header = i;
            break;
        }
    }
    if (header == lines.size())
        throw std::runtime_error("sounding: no header block (PRES/HGHT/TEMP) found");

    Sounding s;
    for (std::size_t i = 0; i < header; ++i) {
        if (!lines[i].empty() && !is_dashed(lines[i])) {
            parse_title(lines[i], s);
            break;
        }
    }

    // Skip the units line and the dashed separator below the header.
    std::size_t i = header + 1;
    while (i < lines.size()) {
        double v;
        if (parse_number(field(lines[i], kColPres), v)) break;  // data starts
        const bool skip = is_dashed(lines[i]) ||
                          lines[i].find("hPa") != std::string::npos;
        ++i;
        if (!skip) break;
    }

    for (; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.empty() || is_dashed(line)) break;
        const std::string pres = field(line, kColPres);
        const std::string hght = field(line, kColHght);
        const std::string temp = field(line, kColTemp);
        const std::string mixr = field(line, kColMixr);
        double p, h, t, r;
        const bool has_p = parse_number(pres, p);
        if (!has_p && !pres.empty()) break;  // footer text
        if (!has_p || !parse_number(hght, h) || !parse_number(temp, t) ||
            !parse_number(mixr, r) || p <= 0.0 || r < 0.0) {
            ++s.skipped_rows;
            continue;
        }
        SoundingLevel lv;
        lv.pressure_hpa = p;
        lv.height_m_asl = h;
        lv.temperature_k = t + 273.15;
        lv.mixing_ratio_g_kg = r;
        s.levels.push_back(lv);
    }

    if (s.levels.empty())
        throw std::runtime_error("sounding: no parseable data rows");
    for (std::size_t j = 1; j < s.levels.size(); ++j)
        if (s.levels[j].height_m_asl <= s.levels[j - 1].height_m_asl)
            throw std::runtime_error("sounding: heights not strictly increasing");
    return s;
}

Sounding parse_wyoming_sounding(const std::string& text) {
    std::istringstream in(text);
    return parse_wyoming_sounding(in);
}

std::string format_wyoming_sounding(const Sounding& s) {
    std::ostringstream out;
    if (!s.station_id.empty()) {
        out << s.station_id;
        int y, mo, d, h;
        if (std::sscanf(s.launch_time.c_str(), "%d-%d-%dT%d", &y, &mo, &d, &h) == 4 &&
            mo >= 1 && mo <= 12) {
            char buf[48];
            std::snprintf(buf, sizeof(buf), " Observations at %02dZ %02d %s %04d",
                          h, d, kMonths[mo - 1], y);
            out << buf;
        }
        out << '\n';
    }
    const std::string dashes(77, '-');
    out << dashes << '\n';
    out << "   PRES   HGHT   TEMP   DWPT   RELH   MIXR   DRCT   SKNT   THTA   THTE   THTV\n";
    out << "    hPa     m      C      C      %    g/kg    deg   knot     K      K      K \n";
    out << dashes << '\n';
    for (const auto& lv : s.levels) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%7.1f%7.0f%7.1f%14s%7.2f\n",
                      lv.pressure_hpa, lv.height_m_asl,
                      lv.temperature_k - 273.15, "", lv.mixing_ratio_g_kg);
        out << buf;
    }
    return out.str();
}

}  // namespace troppo
