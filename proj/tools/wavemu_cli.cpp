#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <cmath>
#include <limits>
#include <sstream>

#include "wavemu/error.hpp"
#include "wavemu/harness/config_file.hpp"
#include "wavemu/harness/selftest.hpp"
#include "wavemu/harness/sweep.hpp"
#include "wavemu/link/channel.hpp"
#include "wavemu/link/record.hpp"
#include "wavemu/link/waveform.hpp"
#include "wavemu/nn/serialize.hpp"
#include "wavemu/phy/chain.hpp"
#include "wavemu/phy/frame_io.hpp"
#include "wavemu/train/checkpoint.hpp"
#include "wavemu/train/stages.hpp"

namespace fs = std::filesystem;
using namespace wavemu;

namespace {

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config, "INI configuration file")->check(CLI::ExistingFile);
    sub->add_option("--seed", c.seed, "master seed (overrides the config)");
    sub->add_option("--out", c.out, "output directory");
}

harness::ToolConfig resolve(const Common& c) {
    harness::ToolConfig tc = c.config.empty() ? harness::ToolConfig{} : harness::load_config(c.config);
    if (c.seed) {
        tc.sweep.seed = *c.seed;
        tc.train.seed = *c.seed;
    }
    if (!c.out.empty()) {
        tc.sweep.out = c.out;
        if (c.config.empty() || tc.sweep.checkpoint == "out/models") tc.sweep.checkpoint = fs::path(c.out) / "models";
    }
    tc.sweep.phy.validate();
    tc.train.validate();
    return tc;
}

fs::path out_dir(const harness::ToolConfig& tc) {
    fs::create_directories(tc.sweep.out);
    return tc.sweep.out;
}

void write_bits(const fs::path& path, const Bits& bits) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot write " + path.string());
    for (auto b : bits) os << static_cast<char>('0' + b);
    os << '\n';
}

Bits read_bits(const fs::path& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot read " + path.string());
    Bits bits;
    char ch;
    while (is.get(ch)) {
        if (ch == '0' || ch == '1') bits.push_back(static_cast<std::uint8_t>(ch - '0'));
        else if (!std::isspace(static_cast<unsigned char>(ch))) throw IoError("bit file holds non-binary characters");
    }
    return bits;
}

void print_trace(const train::LossTrace& trace) {
    for (const auto& r : trace)
        std::printf("cycle %zu %-8s total %.6g  jscc %.6g  comp %.6g\n", r.cycle, r.phase.c_str(), r.total, r.jscc, r.comp);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wavemu: analog symbol emulation over a digital OFDM PHY"};
    app.require_subcommand(1);

    Common c_self, c_tx, c_rx, c_emu, c_sweep, c_comp, c_proxy, c_e2e;
    auto* self = app.add_subcommand("selftest", "conformance vectors, GF(2) probes, loopbacks, gradient checks");
    add_common(self, c_self);

    std::size_t tx_bits = 0;
    std::string tx_in;
    auto* tx = app.add_subcommand("tx", "encode bits into a baseband frame");
    add_common(tx, c_tx);
    tx->add_option("--bits", tx_bits, "random payload length (default: three OFDM symbols)");
    tx->add_option("--in", tx_in, "payload file of '0'/'1' characters")->check(CLI::ExistingFile);

    std::string rx_in;
    std::size_t rx_len = 0;
    double rx_snr = std::numeric_limits<double>::infinity();
    auto* rx = app.add_subcommand("rx", "decode a baseband frame to bits");
    add_common(rx, c_rx);
    rx->add_option("--in", rx_in, "frame file (.wmfr)")->required()->check(CLI::ExistingFile);
    rx->add_option("--length", rx_len, "payload length to keep (default: whole frame)");
    rx->add_option("--snr", rx_snr, "add AWGN at this SNR before decoding");

    std::size_t emu_symbols = 1000;
    double emu_snr = 20.0;
    std::string emu_mode = "soft";
    auto* emu = app.add_subcommand("emulate", "emulate Gaussian symbols over the real link and save the record");
    add_common(emu, c_emu);
    emu->add_option("--symbols", emu_symbols, "number of unit-power symbols")->check(CLI::PositiveNumber);
    emu->add_option("--snr", emu_snr, "channel SNR in dB");
    emu->add_option("--mode", emu_mode, "soft or hard recovery");

    std::string sw_systems;
    auto* sweep = app.add_subcommand("sweep", "SNR sweep over the configured systems; writes metrics.csv and series files");
    add_common(sweep, c_sweep);
    sweep->add_option("--systems", sw_systems, "comma-separated subset of ideal,emulated,float,zeroshot,stage0,e2e");

    auto* tcomp = app.add_subcommand("train-comp", "stage 1: compensator on known waveforms");
    add_common(tcomp, c_comp);
    auto* tproxy = app.add_subcommand("train-proxy", "stage 2: differentiable link proxy on link records");
    add_common(tproxy, c_proxy);
    auto* te2e = app.add_subcommand("train-e2e", "full pipeline; writes the checkpoint used by sweep");
    add_common(te2e, c_e2e);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*self) {
            const auto tc = resolve(c_self);
            harness::SelftestOptions opt;
            opt.gen_a = tc.gen_a;
            opt.gen_b = tc.gen_b;
            const auto rep = harness::selftest(opt);
            std::cout << rep.text();
            if (!c_self.out.empty()) {
                std::ofstream(out_dir(tc) / "selftest.txt") << rep.text();
            }
            return rep.passed() ? 0 : 1;
        }
        if (*tx) {
            const auto tc = resolve(c_tx);
            const auto& phy = tc.sweep.phy;
            Bits bits;
            if (!tx_in.empty()) {
                bits = read_bits(tx_in);
            } else {
                std::mt19937_64 rng(train::derive_seed(tc.sweep.seed, 1));
                bits.resize(tx_bits ? tx_bits : static_cast<std::size_t>(3 * phy.data_bits_per_symbol()));
                for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1u);
            }
            const auto dbps = static_cast<std::size_t>(phy.data_bits_per_symbol());
            if (bits.size() % dbps) bits.resize(bits.size() + dbps - bits.size() % dbps, 0);  // zero pad
            const auto frame = tx_chain(bits, phy);
            const auto dir = out_dir(tc);
            save_frame(dir / "tx.wmfr", frame.samples);
            write_bits(dir / "tx_bits.txt", bits);
            std::printf("%zu bits -> %d OFDM symbols, %zu samples, mean power %.6f\n", bits.size(), frame.ofdm_symbol_count,
                        frame.samples.size(), mean_power(frame.samples));
            return 0;
        }
        if (*rx) {
            const auto tc = resolve(c_rx);
            const auto& phy = tc.sweep.phy;
            BasebandFrame frame;
            frame.samples = load_frame(rx_in);
            const auto sps = static_cast<std::size_t>(phy.samples_per_ofdm());
            if (frame.samples.size() % sps != 0) throw FramingError("frame length is not a whole number of OFDM symbols");
            frame.ofdm_symbol_count = static_cast<int>(frame.samples.size() / sps);
            if (std::isfinite(rx_snr)) frame = awgn(frame, rx_snr, train::derive_seed(tc.sweep.seed, 2));
            Bits bits = rx_chain(frame, phy);
            if (rx_len) bits.resize(std::min(rx_len, bits.size()));
            write_bits(out_dir(tc) / "rx_bits.txt", bits);
            std::printf("%zu bits decoded\n", bits.size());
            return 0;
        }
        if (*emu) {
            const auto tc = resolve(c_emu);
            const Emulator em(tc.sweep.phy);
            const auto symbols = gaussian_symbols(emu_symbols, train::derive_seed(tc.sweep.seed, 7));
            const auto out = em.emulated_link(symbols, emu_snr, train::derive_seed(tc.sweep.seed, 3),
                                              parse_recovery_mode(emu_mode));
            double err = 0.0;
            for (std::size_t i = 0; i < symbols.size(); ++i) err += std::norm(out.estimates[i] - symbols[i]);
            const auto dir = out_dir(tc);
            save_records(dir / "records", std::span<const LinkRecord>(&out.record, 1));
            std::printf("chosen %zu subcarriers, rank %zu, scale %.6f\n", em.chosen().size(), em.certified_rank(), em.scale());
            std::printf("symbols %zu  snr %.2f dB  mse %.6g  clip events %zu\n", symbols.size(), emu_snr,
                        err / static_cast<double>(symbols.size()), out.clip_events);
            return 0;
        }
        if (*sweep) {
            auto tc = resolve(c_sweep);
            if (!sw_systems.empty()) {
                tc.sweep.systems.clear();
                std::stringstream ss(sw_systems);
                for (std::string s; std::getline(ss, s, ',');) tc.sweep.systems.push_back(s);
            }
            const auto rows = harness::run_sweep(tc.sweep);
            const auto files = harness::emit_plotdata(rows, out_dir(tc));
            std::cout << harness::metrics_csv(rows);
            for (const auto& f : files) std::printf("wrote %s\n", f.string().c_str());
            return 0;
        }
        if (*tcomp) {
            const auto tc = resolve(c_comp);
            const auto link = train::image_link(tc.sweep.phy, tc.jscc.k);
            nn::Compensator comp(tc.compensator(link.chosen().size()), train::derive_seed(tc.train.seed, 20));
            const auto res = train::stage1_train_compensator(link, comp, tc.train);
            const auto dir = out_dir(tc);
            nn::save_params(dir / "comp_stage1.wmnn", comp.fingerprint(), comp.params());
            train::write_loss_csv(dir / "loss_stage1.csv", res.trace);
            print_trace(res.trace);
            std::printf("held-out compensation mse %.6g -> %.6g (%.1f%% reduction)\n", res.initial_mse, res.final_mse,
                        100.0 * (1.0 - res.final_mse / res.initial_mse));
            return 0;
        }
        if (*tproxy) {
            const auto tc = resolve(c_proxy);
            const auto link = train::image_link(tc.sweep.phy, tc.jscc.k);
            nn::ToyJscc jscc(tc.jscc, train::derive_seed(tc.train.seed, 10));
            const auto images = nn::glyph_images(tc.train.stage2_records, train::derive_seed(tc.train.seed, 11), tc.jscc.side);
            const auto records = train::stage2_records(link, jscc, images, tc.train, train::derive_seed(tc.train.seed, 12));
            nn::Proxy proxy(tc.proxy, train::derive_seed(tc.train.seed, 30));
            const auto res = train::stage2_train_proxy(records, proxy, link, tc.train);
            const auto dir = out_dir(tc);
            nn::save_params(dir / "proxy.wmnn", proxy.fingerprint(), proxy.params());
            save_records(dir / "records", records);
            train::write_loss_csv(dir / "loss_stage2.csv", res.trace);
            print_trace(res.trace);
            std::printf("held-out fidelity %.6g  bound %.6g (2 sigma2 %.6g + floor %.6g)\n", res.fidelity.heldout_mse,
                        res.fidelity.bound(), 2.0 * res.fidelity.sigma2, res.fidelity.floor);
            return 0;
        }
        if (*te2e) {
            const auto tc = resolve(c_e2e);
            const auto link = train::image_link(tc.sweep.phy, tc.jscc.k);
            auto models = train::make_models(tc.sweep.phy, tc.jscc, tc.compensator(link.chosen().size()), tc.proxy,
                                             tc.train.seed);
            const auto res = train::run_pipeline(models, tc.sweep.phy, tc.train);
            const auto dir = out_dir(tc);
            train::save_checkpoint(tc.sweep.checkpoint, models, tc.sweep.phy, tc.train);
            train::write_loss_csv(dir / "loss.csv", res.trace);
            print_trace(res.trace);
            std::printf("stage 1: compensation mse %.6g -> %.6g\n", res.stage1.initial_mse, res.stage1.final_mse);
            std::printf("stage 2: proxy fidelity %.6g, bound %.6g\n", res.stage2.fidelity.heldout_mse,
                        res.stage2.fidelity.bound());
            std::printf("stage 3: %zu cycles\n", res.stage3.cycles);
            std::printf("checkpoint written to %s\n", tc.sweep.checkpoint.string().c_str());
            return 0;
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const NumericError& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
