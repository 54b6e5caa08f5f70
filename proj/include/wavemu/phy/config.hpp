#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wavemu {

enum class CodeRate { R1_2, R2_3, R3_4, R5_6 };

int rate_numerator(CodeRate r);
int rate_denominator(CodeRate r);
std::string to_string(CodeRate r);
/// Parses "1/2", "2/3", "3/4" or "5/6".
CodeRate parse_code_rate(const std::string& text);

/// Every PHY constant in one record. Subcarriers are signed frequency
/// offsets in [-fft_size/2, fft_size/2); bins not listed as data or pilot
/// are nulls.
struct PhyConfig {
    int fft_size = 64;
    int cp_len = 16;
    std::vector<int> data_subcarriers;
    std::vector<int> pilot_subcarriers;
    std::vector<double> pilot_values;
    int modulation = 64;
    CodeRate rate = CodeRate::R3_4;
    std::uint8_t scrambler_seed = 0b1011101;

    /// 802.11a subcarrier layout (48 data bins, pilots at +-7, +-21).
    static PhyConfig standard(int modulation = 64, CodeRate rate = CodeRate::R3_4);

    int samples_per_ofdm() const { return fft_size + cp_len; }
    int n_data() const { return static_cast<int>(data_subcarriers.size()); }
    int bits_per_subcarrier() const;
    int coded_bits_per_symbol() const { return n_data() * bits_per_subcarrier(); }
    int data_bits_per_symbol() const;

    /// FFT bin index of a signed subcarrier offset.
    int bin_of(int subcarrier) const;

    /// Throws ConfigError on any violated invariant.
    void validate() const;

    /// Stable short text identifying every field; used in manifests.
    std::string fingerprint() const;
};

/// Pilot polarity p_n for OFDM symbol n (period 127, values +-1).
double pilot_polarity(int symbol_index);

}  // namespace wavemu

#include <map>

namespace wavemu {

/// Builds a config from key/value pairs (keys: fft_size, cp_len, modulation,
/// coding_rate, scrambler_seed, subcarrier_map). Missing keys keep the
/// standard defaults. subcarrier_map is either "standard" or
/// "data:<list>;pilot:<list>[;pilot_values:<list>]" where a list is comma
/// separated offsets or inclusive ranges "a..b".
PhyConfig phy_config_from_keys(const std::map<std::string, std::string>& keys);

std::vector<int> parse_index_list(const std::string& text);

}  // namespace wavemu
