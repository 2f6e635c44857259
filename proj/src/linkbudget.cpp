#include "troppo/linkbudget.hpp"

#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace troppo {

SensitivityTable SensitivityTable::lora_default() {
    SensitivityTable t;
    for (int sf = 7; sf <= 12; ++sf)
        t.set(sf, -140.0 + 2.5 * (12 - sf));
    return t;
}

SensitivityTable SensitivityTable::load(std::istream& in) {
    SensitivityTable t = lora_default();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        int sf;
        char eq;
        double dbm;
        if (!(row >> sf)) continue;  // blank line
        if (!(row >> eq >> dbm) || eq != '=')
            throw std::runtime_error("sensitivity table: bad line " +
                                     std::to_string(lineno));
        t.set(sf, dbm);
    }
    if (!t.valid())
        throw std::runtime_error("sensitivity table: not strictly decreasing "
                                 "with 1.5..3.5 dB steps");
    return t;
}

double SensitivityTable::at(int sf) const {
    if (sf < 7 || sf > 12)
        throw std::out_of_range("sensitivity table: SF must be 7..12");
    return dbm_[static_cast<std::size_t>(sf - 7)];
}

void SensitivityTable::set(int sf, double dbm) {
    if (sf < 7 || sf > 12)
        throw std::out_of_range("sensitivity table: SF must be 7..12");
    dbm_[static_cast<std::size_t>(sf - 7)] = dbm;
}

bool SensitivityTable::valid() const {
    for (int sf = 7; sf < 12; ++sf) {
        const double step = at(sf) - at(sf + 1);
        if (step < 1.5 || step > 3.5) return false;
    }
    return true;
}

double free_space_loss(double d_km, double f_mhz) {
    if (d_km <= 0.0 || f_mhz <= 0.0)
        throw std::invalid_argument("free_space_loss: non-positive input");
    return 32.45 + 20.0 * std::log10(f_mhz) + 20.0 * std::log10(d_km);
}

double knife_edge_loss(double nu) {
    if (nu <= -0.78) return 0.0;
    return 6.9 + 20.0 * std::log10(std::sqrt((nu - 1.0) * (nu - 1.0) + 1.0) +
                                   nu - 0.1);
}

double received_power(const RadioConfig& cfg, double d_km, double extra_loss_db) {
    if (extra_loss_db < 0.0)
        throw std::invalid_argument("received_power: negative extra loss");
    return cfg.erp_dbm - free_space_loss(d_km, cfg.frequency_mhz) - extra_loss_db;
}

Receivability is_receivable(double p_dbm, int sf, const SensitivityTable& table) {
    const double margin = p_dbm - table.at(sf);
    return {margin >= 0.0, margin};
}

}  // namespace troppo
