#include "wavemu/phy/frame_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "wavemu/error.hpp"

namespace wavemu {
namespace {

template <typename U>
void put_le(std::ostream& os, U v) {
    char buf[sizeof(U)];
    for (std::size_t i = 0; i < sizeof(U); ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    os.write(buf, sizeof(U));
}

template <typename U>
U get_le(std::istream& is) {
    unsigned char buf[sizeof(U)];
    if (!is.read(reinterpret_cast<char*>(buf), sizeof(U))) throw IoError("frame: truncated input");
    U v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(buf[i]) << (8 * i);
    return v;
}

}  // namespace

void write_frame(std::ostream& os, std::span<const cplx> samples) {
    os.write(kFrameMagic, 4);
    put_le<std::uint32_t>(os, kFrameVersion);
    put_le<std::uint64_t>(os, samples.size());
    for (const auto& s : samples) {
        put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(s.real()));
        put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(s.imag()));
    }
    if (!os) throw IoError("frame: write failed");
}

std::vector<cplx> read_frame(std::istream& is) {
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, kFrameMagic, 4) != 0) throw IoError("frame: bad magic");
    const auto version = get_le<std::uint32_t>(is);
    if (version != kFrameVersion) throw IoError("frame: unsupported version " + std::to_string(version));
    const auto count = get_le<std::uint64_t>(is);
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::uint64_t i = 0; i < count; ++i) {
        const double re = std::bit_cast<double>(get_le<std::uint64_t>(is));
        const double im = std::bit_cast<double>(get_le<std::uint64_t>(is));
        out.emplace_back(re, im);
    }
    return out;
}

void save_frame(const std::filesystem::path& path, std::span<const cplx> samples) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    write_frame(os, samples);
}

std::vector<cplx> load_frame(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    return read_frame(is);
}

}  // namespace wavemu
