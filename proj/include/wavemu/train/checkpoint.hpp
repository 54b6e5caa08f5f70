#pragma once
#include <filesystem>

#include "wavemu/phy/config.hpp"
#include "wavemu/train/stages.hpp"

namespace wavemu::train {

/// Directory with one model file per network (jscc_awgn, comp_stage1, jscc,
/// comp, proxy .wmnn) and manifest.txt holding the architecture, proxy
/// calibration, TrainConfig and seed as key=value lines.
void save_checkpoint(const std::filesystem::path& dir, ModelSet& models, const PhyConfig& phy, const TrainConfig& tc);

/// Throws IoError naming `train-e2e` when the checkpoint is missing.
ModelSet load_checkpoint(const std::filesystem::path& dir, const PhyConfig& phy);

}  // namespace wavemu::train
