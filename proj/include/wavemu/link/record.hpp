#pragma once
#include <filesystem>
#include <span>
#include <vector>

#include "wavemu/link/sdm.hpp"

namespace wavemu {

/// Writes each record's four waveforms as frame files
/// (record_<i>_{target,input,estimates,reconstructed}.wmfr) plus
/// manifest.txt with one line per record: index snr_db seed mode fingerprint.
void save_records(const std::filesystem::path& dir, std::span<const LinkRecord> records);
std::vector<LinkRecord> load_records(const std::filesystem::path& dir);

}  // namespace wavemu
