#pragma once
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wavemu/harness/config_file.hpp"

namespace wavemu::harness {

struct MetricRow {
    std::string system;
    double snr_db = 0.0;
    double symbol_mse = 0.0;
    std::optional<double> image_mse;
    double evm_percent = 0.0;
    std::optional<double> ber;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    /// Standard error of the plotted metric (image MSE when present); not a
    /// CSV column.
    double stderr_mse = 0.0;
};

/// Per-cell seed: master XOR cell index, cells numbered system-major.
std::uint64_t cell_seed(std::uint64_t master, std::size_t cell);

/// Evaluates every (system, snr) cell. Symbol-level systems share one
/// workload of Gaussian symbols drawn from the master seed; image-level
/// systems share one set of glyph images. Throws IoError naming train-e2e
/// when a system needs models that are not in spec.checkpoint.
std::vector<MetricRow> run_sweep(const ExperimentSpec& spec);

/// Header: system,snr_db,symbol_mse,image_mse,evm_percent,ber,n,seed.
std::string metrics_csv(const std::vector<MetricRow>& rows);
void write_metrics_csv(const std::filesystem::path& path, const std::vector<MetricRow>& rows);

/// One "<system>.dat" file per system with lines "snr mse stderr", plus
/// metrics.csv, all in `dir`. Returns the files written.
std::vector<std::filesystem::path> emit_plotdata(const std::vector<MetricRow>& rows, const std::filesystem::path& dir);

}  // namespace wavemu::harness
