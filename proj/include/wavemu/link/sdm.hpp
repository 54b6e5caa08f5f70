#pragma once
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wavemu/gf2/solver.hpp"
#include "wavemu/gf2/symbol_system.hpp"
#include "wavemu/phy/config.hpp"
#include "wavemu/phy/qam.hpp"
#include "wavemu/phy/types.hpp"

namespace wavemu {

enum class RecoveryMode { Soft, Hard };
std::string to_string(RecoveryMode m);
RecoveryMode parse_recovery_mode(const std::string& text);

/// Scale that maps +-3 standard deviations of a unit-power complex symbol
/// (per axis 3/sqrt(2)) onto the outermost constellation level.
double default_symbol_scale(int modulation);

/// Continuous symbols to emulate. `symbols` are in unit-power units;
/// the sender multiplies by `scale` before quantization and the receiver
/// divides by it.
struct TargetSymbols {
    std::vector<cplx> symbols;
    double scale = 1.0;
};

struct EmulationPlan {
    std::vector<int> chosen;  // N' subcarriers, ascending
    std::vector<int> dummy;   // remaining data subcarriers
    std::size_t k = 0;
    int ofdm_symbols = 0;
    double scale = 1.0;
    /// Quantized points on chosen bins, ofdm_symbols x N', constellation units.
    std::vector<cplx> quantized;
    /// Their Gray labels, bits_per_subcarrier bits per point.
    Bits labels;
    /// Solved scrambled input bits, one beta-bit block per OFDM symbol.
    std::vector<Bits> solved;
    /// Transmitter input bits b*.
    Bits input_bits;
    std::size_t clip_events = 0;
};

struct SoftRecovery {
    std::vector<cplx> estimates;      // K symbols, unit-power units
    std::vector<cplx> reconstructed;  // synth(estimates)
};

/// Optional waveform-domain post-processing applied to the reconstructed
/// waveform (the learned compensator plugs in here).
using WaveformMap = std::function<std::vector<cplx>(std::span<const cplx>)>;

struct LinkRecord {
    std::vector<cplx> target_waveform;  // synth(targets)
    std::vector<cplx> input_waveform;   // tx_chain(b*), before the channel
    std::vector<cplx> estimates;
    std::vector<cplx> reconstructed;
    double snr_db = 0.0;
    std::uint64_t seed = 0;
    std::string fingerprint;
    RecoveryMode mode = RecoveryMode::Soft;
};

struct LinkOutput {
    std::vector<cplx> estimates;
    LinkRecord record;
    std::size_t clip_events = 0;
};

/// Sender and receiver software-defined modules for one PHY configuration.
/// Immutable after construction; the GF(2) factorization is shared by all
/// plans.
class Emulator {
public:
    /// `subset` defaults to the certified closest-to-DC selection; `scale`
    /// defaults to default_symbol_scale.
    explicit Emulator(PhyConfig cfg, std::optional<std::vector<int>> subset = std::nullopt,
                      std::optional<double> scale = std::nullopt);

    const PhyConfig& config() const { return cfg_; }
    const std::vector<int>& chosen() const { return chosen_; }
    const std::vector<int>& dummy() const { return dummy_; }
    const gf2::SymbolSystem& system() const { return sys_; }
    const Constellation& constellation() const { return qam_; }
    double scale() const { return scale_; }
    std::size_t certified_rank() const { return solver_.rank(); }

    /// Symbol-to-bits inversion. Throws CapacityError if the subset exceeds
    /// floor(R N) or C' is rank-deficient.
    EmulationPlan sender_invert(const TargetSymbols& targets) const;
    EmulationPlan sender_invert(std::span<const cplx> unit_symbols) const;
    /// Waveform-domain entry: projects each OFDM body window onto the chosen
    /// subcarriers and emulates the resulting K symbols.
    EmulationPlan sender_invert_waveform(std::span<const cplx> wave, std::size_t k) const;

    /// True iff tx_chain(b*) carries exactly the planned labels on every
    /// chosen subcarrier of every symbol.
    bool replay_matches(const EmulationPlan& plan) const;

    /// Demodulate, equalize, read chosen bins, clamp to the constellation
    /// box, unscale.
    SoftRecovery receiver_recover_soft(const BasebandFrame& rx, const EmulationPlan& plan) const;
    /// Decode to bits, re-run T1..T4, read chosen labels, unscale.
    std::vector<cplx> receiver_recover_hard(const BasebandFrame& rx, const EmulationPlan& plan) const;

    BasebandFrame transmit(const EmulationPlan& plan) const;

    /// sender_invert -> tx_chain -> awgn -> recovery -> optional compensation.
    LinkOutput emulated_link(std::span<const cplx> unit_symbols, double snr_db, std::uint64_t seed,
                             RecoveryMode mode = RecoveryMode::Soft,
                             const WaveformMap& compensator = nullptr) const;

    std::vector<cplx> synth(std::span<const cplx> symbols) const;
    std::vector<cplx> analyze(std::span<const cplx> wave, std::size_t k) const;

private:
    EmulationPlan plan_from_scaled(std::span<const cplx> scaled, std::size_t k) const;

    PhyConfig cfg_;
    gf2::SymbolSystem sys_;
    std::vector<int> chosen_;
    std::vector<int> dummy_;
    std::vector<std::size_t> rows_;
    gf2::Solver solver_;
    Constellation qam_;
    double scale_;
    std::array<gf2::Vector, 64> offsets_;   // state offsets on the chosen rows
    std::vector<std::size_t> positions_;    // chosen subcarrier -> data index
};

}  // namespace wavemu
