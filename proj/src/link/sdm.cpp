#include "wavemu/link/sdm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wavemu/error.hpp"
#include "wavemu/link/channel.hpp"
#include "wavemu/link/waveform.hpp"
#include "wavemu/phy/chain.hpp"
#include "wavemu/phy/coding.hpp"

namespace wavemu {

std::string to_string(RecoveryMode m) { return m == RecoveryMode::Soft ? "soft" : "hard"; }

RecoveryMode parse_recovery_mode(const std::string& text) {
    if (text == "soft") return RecoveryMode::Soft;
    if (text == "hard") return RecoveryMode::Hard;
    throw ConfigError("recovery mode must be 'soft' or 'hard', got '" + text + "'");
}

double default_symbol_scale(int modulation) {
    const Constellation qam(modulation);
    return qam.box_edge() / (3.0 / std::sqrt(2.0));
}

namespace {

std::vector<int> resolve_subset(const PhyConfig& cfg, const gf2::SymbolSystem& sys,
                                const std::optional<std::vector<int>>& subset) {
    if (!subset) {
        auto cert = gf2::certify_subset(sys, cfg, gf2::default_subcarrier_subset(cfg));
        if (!cert.full_rank())
            throw CapacityError("no full-rank subcarrier subset found (rank " + std::to_string(cert.rank) + " of " +
                                std::to_string(cert.rows) + ")");
        return cert.subcarriers;
    }
    std::vector<int> s = *subset;
    std::sort(s.begin(), s.end());
    if (s.empty()) throw SelectionError("empty subcarrier selection");
    if (s.size() > gf2::max_usable_subcarriers(cfg))
        throw CapacityError(std::to_string(s.size()) + " chosen subcarriers exceed floor(R N) = " +
                            std::to_string(gf2::max_usable_subcarriers(cfg)));
    const auto rank = gf2::rank(gf2::restrict_rows(sys, cfg, s));
    if (rank != s.size() * static_cast<std::size_t>(cfg.bits_per_subcarrier()))
        throw CapacityError("chosen subcarriers give a rank-deficient system (rank " + std::to_string(rank) + ")");
    return s;
}

std::vector<int> complement(const PhyConfig& cfg, const std::vector<int>& chosen) {
    std::vector<int> out;
    for (int f : cfg.data_subcarriers)
        if (!std::binary_search(chosen.begin(), chosen.end(), f)) out.push_back(f);
    return out;
}

std::vector<std::size_t> data_positions(const PhyConfig& cfg, const std::vector<int>& chosen) {
    std::vector<std::size_t> pos;
    for (int f : chosen)
        pos.push_back(static_cast<std::size_t>(
            std::find(cfg.data_subcarriers.begin(), cfg.data_subcarriers.end(), f) - cfg.data_subcarriers.begin()));
    return pos;
}

}  // namespace

Emulator::Emulator(PhyConfig cfg, std::optional<std::vector<int>> subset, std::optional<double> scale)
    : cfg_((cfg.validate(), std::move(cfg))),
      sys_(gf2::SymbolSystem::build(cfg_)),
      chosen_(resolve_subset(cfg_, sys_, subset)),
      dummy_(complement(cfg_, chosen_)),
      rows_(gf2::chosen_rows(sys_, cfg_, chosen_)),
      solver_(sys_.matrix().select_rows(rows_)),
      qam_(cfg_.modulation),
      scale_(scale.value_or(default_symbol_scale(cfg_.modulation))) {
    if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw ConfigError("symbol scale must be positive and finite");
    for (unsigned s = 0; s < 64; ++s) {
        const auto& full = sys_.state_offset(ConvState{static_cast<std::uint8_t>(s)});
        gf2::Vector v(rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i) v.set(i, full.get(rows_[i]));
        offsets_[s] = std::move(v);
    }
    positions_ = data_positions(cfg_, chosen_);
}

std::vector<cplx> Emulator::synth(std::span<const cplx> symbols) const {
    return wavemu::synth(symbols, cfg_, chosen_, ofdm_symbols_for(symbols.size(), chosen_.size()));
}

std::vector<cplx> Emulator::analyze(std::span<const cplx> wave, std::size_t k) const {
    return wavemu::analyze(wave, cfg_, chosen_, k);
}

EmulationPlan Emulator::sender_invert(const TargetSymbols& targets) const {
    std::vector<cplx> scaled(targets.symbols.size());
    for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = targets.symbols[i] * targets.scale;
    auto plan = plan_from_scaled(scaled, scaled.size());
    plan.scale = targets.scale;
    return plan;
}

EmulationPlan Emulator::sender_invert(std::span<const cplx> unit_symbols) const {
    return sender_invert(TargetSymbols{{unit_symbols.begin(), unit_symbols.end()}, scale_});
}

EmulationPlan Emulator::sender_invert_waveform(std::span<const cplx> wave, std::size_t k) const {
    return sender_invert(analyze(wave, k));
}

EmulationPlan Emulator::plan_from_scaled(std::span<const cplx> scaled, std::size_t k) const {
    for (const auto& z : scaled)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw NumericError("non-finite target symbol");
    const std::size_t np = chosen_.size();
    const auto bpsc = static_cast<std::size_t>(cfg_.bits_per_subcarrier());
    const std::size_t beta = sys_.beta();
    EmulationPlan plan;
    plan.chosen = chosen_;
    plan.dummy = dummy_;
    plan.k = k;
    plan.ofdm_symbols = ofdm_symbols_for(std::max<std::size_t>(k, 1), np);
    plan.quantized.resize(static_cast<std::size_t>(plan.ofdm_symbols) * np);
    plan.labels.resize(plan.quantized.size() * bpsc);
    const Bits seq = scrambler_sequence(cfg_.scrambler_seed, static_cast<std::size_t>(plan.ofdm_symbols) * beta);
    plan.input_bits.reserve(seq.size());

    const double edge = qam_.box_edge();
    const bool has_q = qam_.order() > 2;
    ConvState state{};
    for (int s = 0; s < plan.ofdm_symbols; ++s) {
        const std::size_t base = static_cast<std::size_t>(s) * np;
        for (std::size_t j = 0; j < np; ++j) {
            const cplx z = base + j < k ? scaled[base + j] : cplx{};
            if (std::abs(z.real()) > edge || (has_q && std::abs(z.imag()) > edge)) ++plan.clip_events;
            plan.quantized[base + j] = qam_.quantize(z, std::span(plan.labels).subspan((base + j) * bpsc, bpsc));
        }
        const gf2::Vector target =
            gf2::Vector::from_bits(std::span(plan.labels).subspan(base * bpsc, np * bpsc)) ^ offsets_[state.reg];
        const auto res = solver_.solve(target);
        if (!res.ok())
            throw CapacityError("OFDM symbol " + std::to_string(s) + " is unsolvable at row " +
                                std::to_string(res.failure().row));
        Bits x = res.solution().to_bits();
        state = conv_advance(x, state);
        for (std::size_t i = 0; i < beta; ++i) plan.input_bits.push_back(x[i] ^ seq[static_cast<std::size_t>(s) * beta + i]);
        plan.solved.push_back(std::move(x));
    }
    return plan;
}

bool Emulator::replay_matches(const EmulationPlan& plan) const {
    const Bits coded = tx_coded_bits(plan.input_bits, cfg_);
    const auto alpha = sys_.alpha();
    const auto bpsc = static_cast<std::size_t>(cfg_.bits_per_subcarrier());
    const std::size_t np = plan.chosen.size();
    if (coded.size() != static_cast<std::size_t>(plan.ofdm_symbols) * alpha) return false;
    for (int s = 0; s < plan.ofdm_symbols; ++s)
        for (std::size_t j = 0; j < np; ++j)
            for (std::size_t b = 0; b < bpsc; ++b) {
                const std::size_t row = rows_[j * bpsc + b];
                if (coded[static_cast<std::size_t>(s) * alpha + row] !=
                    plan.labels[(static_cast<std::size_t>(s) * np + j) * bpsc + b])
                    return false;
            }
    for (std::size_t i = 0; i < plan.quantized.size(); ++i)
        if (qam_.map(std::span(plan.labels).subspan(i * bpsc, bpsc)) != plan.quantized[i]) return false;
    return true;
}

BasebandFrame Emulator::transmit(const EmulationPlan& plan) const { return tx_chain(plan.input_bits, cfg_); }

SoftRecovery Emulator::receiver_recover_soft(const BasebandFrame& rx, const EmulationPlan& plan) const {
    if (rx.samples.size() != static_cast<std::size_t>(plan.ofdm_symbols * cfg_.samples_per_ofdm()))
        throw FramingError("received frame length does not match the plan");
    const auto points = rx_equalized_points(rx, cfg_);
    const auto n = static_cast<std::size_t>(cfg_.n_data());
    const std::size_t np = chosen_.size();
    const double edge = qam_.box_edge();
    const double q_edge = qam_.order() > 2 ? edge : 0.0;
    SoftRecovery out;
    out.estimates.resize(plan.k);
    for (std::size_t i = 0; i < plan.k; ++i) {
        const cplx p = points[(i / np) * n + positions_[i % np]];
        const cplx boxed(std::clamp(p.real(), -edge, edge), std::clamp(p.imag(), -q_edge, q_edge));
        out.estimates[i] = boxed / plan.scale;
    }
    out.reconstructed = wavemu::synth(out.estimates, cfg_, chosen_, plan.ofdm_symbols);
    return out;
}

std::vector<cplx> Emulator::receiver_recover_hard(const BasebandFrame& rx, const EmulationPlan& plan) const {
    if (rx.samples.size() != static_cast<std::size_t>(plan.ofdm_symbols * cfg_.samples_per_ofdm()))
        throw FramingError("received frame length does not match the plan");
    const Bits coded = tx_coded_bits(rx_chain(rx, cfg_), cfg_);
    const auto alpha = sys_.alpha();
    const auto bpsc = static_cast<std::size_t>(cfg_.bits_per_subcarrier());
    const std::size_t np = chosen_.size();
    std::vector<cplx> out(plan.k);
    Bits label(bpsc);
    for (std::size_t i = 0; i < plan.k; ++i) {
        const std::size_t s = i / np, j = i % np;
        for (std::size_t b = 0; b < bpsc; ++b) label[b] = coded[s * alpha + rows_[j * bpsc + b]];
        out[i] = qam_.map(label) / plan.scale;
    }
    return out;
}

LinkOutput Emulator::emulated_link(std::span<const cplx> unit_symbols, double snr_db, std::uint64_t seed,
                                   RecoveryMode mode, const WaveformMap& compensator) const {
    const auto plan = sender_invert(unit_symbols);
    const auto tx = transmit(plan);
    const auto rx = awgn(tx, snr_db, seed);
    LinkOutput out;
    out.clip_events = plan.clip_events;
    LinkRecord& rec = out.record;
    if (mode == RecoveryMode::Soft) {
        auto soft = receiver_recover_soft(rx, plan);
        rec.estimates = std::move(soft.estimates);
        rec.reconstructed = std::move(soft.reconstructed);
    } else {
        rec.estimates = receiver_recover_hard(rx, plan);
        rec.reconstructed = wavemu::synth(rec.estimates, cfg_, chosen_, plan.ofdm_symbols);
    }
    if (compensator) {
        rec.reconstructed = compensator(rec.reconstructed);
        rec.estimates = analyze(rec.reconstructed, plan.k);
    }
    rec.target_waveform = wavemu::synth(unit_symbols, cfg_, chosen_, plan.ofdm_symbols);
    rec.input_waveform = tx.samples;
    rec.snr_db = snr_db;
    rec.seed = seed;
    rec.fingerprint = cfg_.fingerprint();
    rec.mode = mode;
    out.estimates = rec.estimates;
    return out;
}

}  // namespace wavemu
