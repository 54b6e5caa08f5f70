#include "wavemu/harness/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>

#include "wavemu/error.hpp"
#include "wavemu/link/baselines.hpp"
#include "wavemu/link/waveform.hpp"
#include "wavemu/train/checkpoint.hpp"
#include "wavemu/train/stages.hpp"

namespace wavemu::harness {

std::uint64_t cell_seed(std::uint64_t master, std::size_t cell) { return master ^ static_cast<std::uint64_t>(cell); }

namespace {

void symbol_metrics(MetricRow& row, std::span<const cplx> ref, std::span<const cplx> est) {
    double err = 0.0, err2 = 0.0, pow = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        const double e = std::norm(est[i] - ref[i]);
        err += e;
        err2 += e * e;
        pow += std::norm(ref[i]);
    }
    const double n = static_cast<double>(ref.size());
    row.symbol_mse = err / n;
    row.evm_percent = pow > 0 ? 100.0 * std::sqrt(err / pow) : 0.0;
    row.n = ref.size();
    const double var = n > 1 ? (err2 - err * err / n) / (n - 1) : 0.0;
    row.stderr_mse = std::sqrt(std::max(var, 0.0) / n);
}

double stderr_of(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    if (v.size() < 2) return 0.0;
    double m = 0.0;
    for (double x : v) m += x;
    m /= n;
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / (n - 1) / n);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

std::vector<MetricRow> run_sweep(const ExperimentSpec& spec) {
    spec.validate();
    const auto symbols = gaussian_symbols(spec.symbols, train::derive_seed(spec.seed, 7));
    std::optional<Emulator> full;
    std::optional<train::ModelSet> models;
    std::optional<Emulator> img_link;
    std::vector<nn::Tensor> images;
    std::vector<MetricRow> rows;

    for (std::size_t si = 0; si < spec.systems.size(); ++si) {
        const std::string& sys = spec.systems[si];
        if ((sys == "zeroshot" || sys == "stage0" || sys == "e2e") && !models) {
            models.emplace(train::load_checkpoint(spec.checkpoint, spec.phy));
            img_link.emplace(train::image_link(spec.phy, models->jscc.config().k));
            images = nn::glyph_images(spec.images, train::derive_seed(spec.seed, 8), models->jscc.config().side);
        }
        if (sys == "emulated" && !full) full.emplace(spec.phy);
        for (std::size_t pi = 0; pi < spec.snrs.size(); ++pi) {
            MetricRow row;
            row.system = sys;
            row.snr_db = spec.snrs[pi];
            row.seed = cell_seed(spec.seed, si * spec.snrs.size() + pi);
            if (sys == "ideal") {
                symbol_metrics(row, symbols, ideal_analog_link(symbols, row.snr_db, row.seed));
            } else if (sys == "emulated") {
                symbol_metrics(row, symbols, full->emulated_link(symbols, row.snr_db, row.seed, spec.mode).estimates);
            } else if (sys == "float") {
                const auto values = nn::unpair_latent(symbols);
                const auto res = float_serialization_link(values, row.snr_db, row.seed, spec.phy, spec.float_bound);
                symbol_metrics(row, symbols, nn::pair_latent(res.values));
                row.ber = res.ber;
            } else {
                const bool trained = sys == "e2e";
                auto& jscc = trained ? models->jscc : models->jscc_awgn;
                nn::Compensator* comp = trained ? &models->comp : sys == "stage0" ? &models->comp_stage1 : nullptr;
                const auto ev =
                    train::evaluate_real_link(jscc, comp, *img_link, images, row.snr_db, row.seed, spec.mode);
                row.symbol_mse = ev.symbol_mse;
                row.evm_percent = 100.0 * std::sqrt(ev.symbol_mse);  // encoder symbols have unit power
                row.image_mse = ev.image_mse;
                row.n = images.size();
                row.stderr_mse = stderr_of(ev.per_image);
            }
            rows.push_back(row);
        }
    }
    return rows;
}

std::string metrics_csv(const std::vector<MetricRow>& rows) {
    std::string s = "system,snr_db,symbol_mse,image_mse,evm_percent,ber,n,seed\n";
    for (const auto& r : rows) {
        s += r.system + ',' + fmt(r.snr_db) + ',' + fmt(r.symbol_mse) + ',' + (r.image_mse ? fmt(*r.image_mse) : "") +
             ',' + fmt(r.evm_percent) + ',' + (r.ber ? fmt(*r.ber) : "") + ',' + std::to_string(r.n) + ',' +
             std::to_string(r.seed) + '\n';
    }
    return s;
}

void write_metrics_csv(const std::filesystem::path& path, const std::vector<MetricRow>& rows) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot write " + path.string());
    os << metrics_csv(rows);
}

std::vector<std::filesystem::path> emit_plotdata(const std::vector<MetricRow>& rows, const std::filesystem::path& dir) {
    if (rows.empty()) throw ConfigError("emit_plotdata: empty table");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::vector<std::string> order;
    for (const auto& r : rows)
        if (std::find(order.begin(), order.end(), r.system) == order.end()) order.push_back(r.system);
    std::vector<std::filesystem::path> written;
    for (const auto& sys : order) {
        const auto path = dir / (sys + ".dat");
        std::ofstream os(path, std::ios::binary);
        if (!os) throw IoError("cannot write " + path.string());
        for (const auto& r : rows)
            if (r.system == sys)
                os << fmt(r.snr_db) << ' ' << fmt(r.image_mse.value_or(r.symbol_mse)) << ' ' << fmt(r.stderr_mse) << '\n';
        written.push_back(path);
    }
    write_metrics_csv(dir / "metrics.csv", rows);
    written.push_back(dir / "metrics.csv");
    return written;
}

}  // namespace wavemu::harness
