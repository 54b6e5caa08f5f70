#pragma once
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wavemu/link/sdm.hpp"
#include "wavemu/nn/compensator.hpp"
#include "wavemu/nn/jscc.hpp"
#include "wavemu/nn/proxy.hpp"
#include "wavemu/phy/config.hpp"
#include "wavemu/train/stages.hpp"

namespace wavemu::harness {

inline const std::vector<std::string> kSystems = {"ideal", "emulated", "float", "zeroshot", "stage0", "e2e"};

struct ExperimentSpec {
    PhyConfig phy = PhyConfig::standard();
    std::vector<double> snrs = {-5, 0, 5, 10, 15, 20, 25, 30, 35};
    std::size_t symbols = 10000;  // per cell, symbol-level systems
    std::size_t images = 256;     // per cell, image-level systems
    std::vector<std::string> systems = {"ideal", "emulated", "float", "zeroshot"};
    std::uint64_t seed = 1;
    std::filesystem::path out = "out";
    std::filesystem::path checkpoint = "out/models";
    RecoveryMode mode = RecoveryMode::Soft;
    double float_bound = 10.0;

    void validate() const;
};

/// Everything a run needs; each section of the INI file fills one part.
struct ToolConfig {
    ExperimentSpec sweep;
    train::TrainConfig train;
    nn::JsccConfig jscc;
    nn::ProxyConfig proxy;
    /// 0 means derived from the PHY (period_j) and kept default otherwise.
    std::size_t comp_period_j = 0;
    std::size_t comp_layers = 2, comp_kernel = 3, comp_channels = 8;
    bool comp_residual = true, comp_positional = true, comp_snr_input = true;
    /// Generators used to build the GF(2) model in selftest.
    unsigned gen_a = 0133, gen_b = 0171;

    nn::CompensatorConfig compensator(std::size_t n_chosen) const;
};

/// INI file with sections [phy], [sweep], [train], [jscc], [compensator],
/// [proxy], [gf2]. Unknown keys are configuration errors.
ToolConfig load_config(const std::filesystem::path& path);
ToolConfig parse_config(const std::string& text);

/// "a,b,c" or "lo..hi:step".
std::vector<double> parse_snr_list(const std::string& text);

}  // namespace wavemu::harness
