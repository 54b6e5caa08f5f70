#include "wavemu/link/record.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "wavemu/error.hpp"
#include "wavemu/phy/frame_io.hpp"

namespace wavemu {

namespace {

std::filesystem::path part(const std::filesystem::path& dir, std::size_t i, const char* name) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "record_%04zu_%s.wmfr", i, name);
    return dir / buf;
}

}  // namespace

void save_records(const std::filesystem::path& dir, std::span<const LinkRecord> records) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream manifest(dir / "manifest.txt");
    if (!manifest) throw IoError("cannot write " + (dir / "manifest.txt").string());
    manifest << "# index snr_db seed mode fingerprint\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        save_frame(part(dir, i, "target"), r.target_waveform);
        save_frame(part(dir, i, "input"), r.input_waveform);
        save_frame(part(dir, i, "estimates"), r.estimates);
        save_frame(part(dir, i, "reconstructed"), r.reconstructed);
        manifest << i << ' ' << std::setprecision(17) << r.snr_db << ' ' << r.seed << ' ' << to_string(r.mode) << ' '
                 << r.fingerprint << '\n';
    }
}

std::vector<LinkRecord> load_records(const std::filesystem::path& dir) {
    std::ifstream manifest(dir / "manifest.txt");
    if (!manifest) throw IoError("cannot read " + (dir / "manifest.txt").string());
    std::vector<LinkRecord> out;
    std::string line;
    while (std::getline(manifest, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        std::size_t i = 0;
        std::string snr, mode;
        LinkRecord r;
        if (!(is >> i >> snr >> r.seed >> mode)) throw IoError("malformed manifest line: " + line);
        r.snr_db = std::stod(snr);
        r.mode = parse_recovery_mode(mode);
        std::getline(is >> std::ws, r.fingerprint);
        r.target_waveform = load_frame(part(dir, i, "target"));
        r.input_waveform = load_frame(part(dir, i, "input"));
        r.estimates = load_frame(part(dir, i, "estimates"));
        r.reconstructed = load_frame(part(dir, i, "reconstructed"));
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace wavemu
