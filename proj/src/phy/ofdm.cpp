#include "wavemu/phy/ofdm.hpp"

#include <string>

#include "wavemu/error.hpp"
#include "wavemu/phy/dft.hpp"

namespace wavemu {

FreqGrid assemble_grid(std::span<const cplx> data, int symbol_index, const PhyConfig& cfg) {
    if (static_cast<int>(data.size()) != cfg.n_data())
        throw FramingError("assemble_grid: " + std::to_string(data.size()) + " points, expected " +
                           std::to_string(cfg.n_data()));
    FreqGrid grid{std::vector<cplx>(static_cast<std::size_t>(cfg.fft_size))};
    for (std::size_t i = 0; i < data.size(); ++i)
        grid.bins[static_cast<std::size_t>(cfg.bin_of(cfg.data_subcarriers[i]))] = data[i];
    const double polarity = pilot_polarity(symbol_index);
    for (std::size_t i = 0; i < cfg.pilot_subcarriers.size(); ++i)
        grid.bins[static_cast<std::size_t>(cfg.bin_of(cfg.pilot_subcarriers[i]))] = polarity * cfg.pilot_values[i];
    return grid;
}

std::vector<cplx> extract_data(const FreqGrid& grid, const PhyConfig& cfg) {
    if (static_cast<int>(grid.bins.size()) != cfg.fft_size) throw FramingError("extract_data: grid size mismatch");
    std::vector<cplx> out;
    out.reserve(cfg.data_subcarriers.size());
    for (int f : cfg.data_subcarriers) out.push_back(grid.bins[static_cast<std::size_t>(cfg.bin_of(f))]);
    return out;
}

std::vector<cplx> ofdm_modulate(const FreqGrid& grid, const PhyConfig& cfg) {
    if (static_cast<int>(grid.bins.size()) != cfg.fft_size) throw FramingError("ofdm_modulate: grid size mismatch");
    const auto n = static_cast<std::size_t>(cfg.fft_size);
    const auto cp = static_cast<std::size_t>(cfg.cp_len);
    std::vector<cplx> out(n + cp);
    dft_unitary(grid.bins, std::span<cplx>(out).subspan(cp, n), true);
    std::copy(out.end() - static_cast<std::ptrdiff_t>(cp), out.end(), out.begin());
    return out;
}

FreqGrid ofdm_demodulate(std::span<const cplx> segment, const PhyConfig& cfg) {
    if (static_cast<int>(segment.size()) != cfg.samples_per_ofdm())
        throw FramingError("ofdm_demodulate: segment of " + std::to_string(segment.size()) + " samples, expected " +
                           std::to_string(cfg.samples_per_ofdm()));
    FreqGrid grid{std::vector<cplx>(static_cast<std::size_t>(cfg.fft_size))};
    dft_unitary(segment.subspan(static_cast<std::size_t>(cfg.cp_len)), grid.bins, false);
    return grid;
}

}  // namespace wavemu
