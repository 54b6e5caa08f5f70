#include "wavemu/phy/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <set>
#include <sstream>

#include "wavemu/error.hpp"
#include "wavemu/phy/coding.hpp"

namespace wavemu {

int rate_numerator(CodeRate r) {
    switch (r) {
        case CodeRate::R1_2: return 1;
        case CodeRate::R2_3: return 2;
        case CodeRate::R3_4: return 3;
        case CodeRate::R5_6: return 5;
    }
    return 1;
}

int rate_denominator(CodeRate r) { return rate_numerator(r) + 1; }

std::string to_string(CodeRate r) {
    return std::to_string(rate_numerator(r)) + "/" + std::to_string(rate_denominator(r));
}

CodeRate parse_code_rate(const std::string& text) {
    if (text == "1/2") return CodeRate::R1_2;
    if (text == "2/3") return CodeRate::R2_3;
    if (text == "3/4") return CodeRate::R3_4;
    if (text == "5/6") return CodeRate::R5_6;
    throw ConfigError("unsupported coding rate '" + text + "' (expected 1/2, 2/3, 3/4 or 5/6)");
}

PhyConfig PhyConfig::standard(int modulation, CodeRate rate) {
    PhyConfig cfg;
    for (int f = -26; f <= 26; ++f) {
        if (f == 0 || f == -21 || f == -7 || f == 7 || f == 21) continue;
        cfg.data_subcarriers.push_back(f);
    }
    cfg.pilot_subcarriers = {-21, -7, 7, 21};
    cfg.pilot_values = {1.0, 1.0, 1.0, -1.0};
    cfg.modulation = modulation;
    cfg.rate = rate;
    return cfg;
}

int PhyConfig::bits_per_subcarrier() const {
    switch (modulation) {
        case 2: return 1;
        case 4: return 2;
        case 16: return 4;
        case 64: return 6;
        default: throw ConfigError("unsupported modulation order " + std::to_string(modulation));
    }
}

int PhyConfig::data_bits_per_symbol() const {
    return coded_bits_per_symbol() * rate_numerator(rate) / rate_denominator(rate);
}

int PhyConfig::bin_of(int subcarrier) const {
    return ((subcarrier % fft_size) + fft_size) % fft_size;
}

void PhyConfig::validate() const {
    if (fft_size < 2 || (fft_size & (fft_size - 1)) != 0)
        throw ConfigError("fft_size must be a power of two >= 2");
    if (cp_len < 0 || cp_len > fft_size) throw ConfigError("cp_len must lie in [0, fft_size]");
    bits_per_subcarrier();
    if (scrambler_seed == 0 || scrambler_seed > 0x7F)
        throw ConfigError("scrambler_seed must be a nonzero 7-bit word");
    if (data_subcarriers.empty()) throw ConfigError("no data subcarriers");
    if (pilot_values.size() != pilot_subcarriers.size())
        throw ConfigError("pilot_values must match pilot_subcarriers");

    std::set<int> bins;
    auto add = [&](int f, const char* kind) {
        if (f < -fft_size / 2 || f >= fft_size / 2)
            throw ConfigError(std::string(kind) + " subcarrier " + std::to_string(f) + " out of range");
        if (!bins.insert(bin_of(f)).second)
            throw ConfigError("subcarrier " + std::to_string(f) + " listed twice");
    };
    for (int f : data_subcarriers) add(f, "data");
    for (int f : pilot_subcarriers) add(f, "pilot");

    const long long coded = static_cast<long long>(coded_bits_per_symbol());
    if ((coded * rate_numerator(rate)) % rate_denominator(rate) != 0)
        throw ConfigError("R * N * log2(M) is not an integer");
    // The puncture period has to tile one symbol of mother bits so every
    // OFDM symbol sees the same keep pattern.
    const long long mother = 2LL * data_bits_per_symbol();
    if (mother % static_cast<long long>(puncture_pattern(rate).size()) != 0)
        throw ConfigError("puncture period does not divide one OFDM symbol");
    if (coded % 16 != 0) throw ConfigError("coded bits per symbol must be a multiple of 16 for the interleaver");
}

std::string PhyConfig::fingerprint() const {
    std::ostringstream os;
    os << "fft" << fft_size << "-cp" << cp_len << "-M" << modulation << "-R" << rate_numerator(rate) << "_"
       << rate_denominator(rate) << "-seed" << int(scrambler_seed) << "-d";
    unsigned h = 2166136261u;
    auto mix = [&](int v) {
        h ^= static_cast<unsigned>(v + 1000);
        h *= 16777619u;
    };
    for (int f : data_subcarriers) mix(f);
    mix(9999);
    for (int f : pilot_subcarriers) mix(f);
    for (double v : pilot_values) mix(static_cast<int>(v * 1000));
    os << std::hex << h;
    return os.str();
}

double pilot_polarity(int symbol_index) {
    static const Bits seq = scrambler_sequence(0x7F, 127);
    const int i = ((symbol_index % 127) + 127) % 127;
    return seq[static_cast<std::size_t>(i)] ? -1.0 : 1.0;
}

namespace {

int parse_int(const std::string& s) {
    int v = 0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    while (b < e && *b == ' ') ++b;
    while (e > b && e[-1] == ' ') --e;
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e) throw ConfigError("expected integer, got '" + s + "'");
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<int> parse_index_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto dots = item.find("..", 1);
        if (dots == std::string::npos) {
            out.push_back(parse_int(item));
            continue;
        }
        const int a = parse_int(item.substr(0, dots));
        const int b = parse_int(item.substr(dots + 2));
        if (b < a) throw ConfigError("descending range '" + item + "'");
        for (int v = a; v <= b; ++v) out.push_back(v);
    }
    return out;
}

PhyConfig phy_config_from_keys(const std::map<std::string, std::string>& keys) {
    auto get = [&](const char* k) -> const std::string* {
        auto it = keys.find(k);
        return it == keys.end() ? nullptr : &it->second;
    };
    for (const auto& [k, v] : keys)
        if (k != "modulation" && k != "coding_rate" && k != "fft_size" && k != "cp_len" && k != "scrambler_seed" &&
            k != "subcarrier_map")
            throw ConfigError("unknown PHY key '" + k + "'");
    PhyConfig cfg = PhyConfig::standard();
    if (auto v = get("modulation")) cfg.modulation = parse_int(*v);
    if (auto v = get("coding_rate")) cfg.rate = parse_code_rate(trim(*v));
    if (auto v = get("fft_size")) cfg.fft_size = parse_int(*v);
    if (auto v = get("cp_len")) cfg.cp_len = parse_int(*v);
    if (auto v = get("scrambler_seed")) {
        const std::string s = trim(*v);
        const bool binary = s.size() == 7 && s.find_first_not_of("01") == std::string::npos;
        const int seed = binary ? std::stoi(s, nullptr, 2) : parse_int(s);
        if (seed <= 0 || seed > 0x7F) throw ConfigError("scrambler_seed must be a nonzero 7-bit word");
        cfg.scrambler_seed = static_cast<std::uint8_t>(seed);
    }
    if (auto v = get("subcarrier_map")) {
        const std::string map = trim(*v);
        if (map != "standard") {
            cfg.data_subcarriers.clear();
            cfg.pilot_subcarriers.clear();
            cfg.pilot_values.clear();
            bool explicit_values = false;
            std::stringstream ss(map);
            std::string part;
            while (std::getline(ss, part, ';')) {
                part = trim(part);
                const auto colon = part.find(':');
                if (colon == std::string::npos) throw ConfigError("bad subcarrier_map section '" + part + "'");
                const std::string name = trim(part.substr(0, colon));
                const std::string list = part.substr(colon + 1);
                if (name == "data") {
                    cfg.data_subcarriers = parse_index_list(list);
                } else if (name == "pilot") {
                    cfg.pilot_subcarriers = parse_index_list(list);
                } else if (name == "pilot_values") {
                    explicit_values = true;
                    for (int x : parse_index_list(list)) cfg.pilot_values.push_back(x);
                } else {
                    throw ConfigError("unknown subcarrier_map section '" + name + "'");
                }
            }
            if (!explicit_values) cfg.pilot_values.assign(cfg.pilot_subcarriers.size(), 1.0);
        }
    }
    cfg.validate();
    return cfg;
}

}  // namespace wavemu
