#ifndef TROPPO_LINKBUDGET_HPP
#define TROPPO_LINKBUDGET_HPP

#include <array>
#include <iosfwd>
#include <string>

namespace troppo {

struct RadioConfig {
    double erp_dbm = 14.0;
    double frequency_mhz = 868.0;
    double bandwidth_khz = 125.0;
};

/// Receiver sensitivity per spreading factor 7..12, dBm.
class SensitivityTable {
public:
    /// SF12 at -140 dBm, +2.5 dB per step down.
    static SensitivityTable lora_default();

    /// Key-value override file, one `sf = dbm` per line; '#' comments.
    static SensitivityTable load(std::istream& in);

    double at(int sf) const;  // throws for sf outside 7..12
    void set(int sf, double dbm);

    /// Strictly decreasing with SF, adjacent steps within [1.5, 3.5] dB.
    bool valid() const;

private:
    std::array<double, 6> dbm_{};  // index 0 = SF7
};

/// 32.45 + 20 log10(f_MHz) + 20 log10(d_km), dB.
double free_space_loss(double d_km, double f_mhz);

/// Single knife-edge diffraction loss J(nu), dB:
///   J = 6.9 + 20 log10( sqrt((nu-1)^2 + 1) + nu - 0.1 )   for nu > -0.78,
/// zero below the approximation's validity bound.
double knife_edge_loss(double nu);

/// ERP minus free-space loss minus any extra loss; receive gain taken as 0.
double received_power(const RadioConfig& cfg, double d_km, double extra_loss_db);

struct Receivability {
    bool receivable = false;
    double margin_db = 0.0;
};

Receivability is_receivable(double p_dbm, int sf, const SensitivityTable& table);

}  // namespace troppo

#endif
