#include "wavemu/nn/serialize.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>

#include "wavemu/error.hpp"
#include "wavemu/nn/layers.hpp"

namespace wavemu::nn {

namespace {

constexpr char kMagic[4] = {'W', 'M', 'N', 'N'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ostream& os, T v) {
    static_assert(std::endian::native == std::endian::little, "little-endian host required");
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is) {
    T v{};
    if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw IoError("model file truncated");
    return v;
}

}  // namespace

void write_params(std::ostream& os, const std::string& fingerprint, const std::vector<Param*>& params) {
    os.write(kMagic, 4);
    put<std::uint32_t>(os, kVersion);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(fingerprint.size()));
    os.write(fingerprint.data(), static_cast<std::streamsize>(fingerprint.size()));
    put<std::uint64_t>(os, parameter_count(params));
    for (const Param* p : params)
        for (double v : p->value.data) put<double>(os, v);
    if (!os) throw IoError("failed writing model parameters");
}

void read_params(std::istream& is, const std::string& fingerprint, const std::vector<Param*>& params) {
    char magic[4];
    if (!is.read(magic, 4) || !std::equal(magic, magic + 4, kMagic)) throw IoError("not a model file (bad magic)");
    if (get<std::uint32_t>(is) != kVersion) throw IoError("unsupported model file version");
    const auto len = get<std::uint32_t>(is);
    std::string fp(len, '\0');
    if (!is.read(fp.data(), len)) throw IoError("model file truncated");
    if (fp != fingerprint) throw IoError("model fingerprint mismatch: file has '" + fp + "', expected '" + fingerprint + "'");
    if (get<std::uint64_t>(is) != parameter_count(params)) throw IoError("model parameter count mismatch");
    for (Param* p : params)
        for (double& v : p->value.data) v = get<double>(is);
}

void save_params(const std::filesystem::path& path, const std::string& fingerprint, const std::vector<Param*>& params) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot write " + path.string());
    write_params(os, fingerprint, params);
}

void load_params(const std::filesystem::path& path, const std::string& fingerprint, const std::vector<Param*>& params) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot read " + path.string());
    read_params(is, fingerprint, params);
}

}  // namespace wavemu::nn
