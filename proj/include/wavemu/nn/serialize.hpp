#pragma once
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wavemu/nn/tensor.hpp"

namespace wavemu::nn {

// Layout: "WMNN", u32 version 1, u32 fingerprint length, fingerprint bytes,
// u64 value count, then the values of every param in declaration order as
// little-endian binary64.
void write_params(std::ostream& os, const std::string& fingerprint, const std::vector<Param*>& params);
/// Throws IoError if the fingerprint or value count differs.
void read_params(std::istream& is, const std::string& fingerprint, const std::vector<Param*>& params);
void save_params(const std::filesystem::path& path, const std::string& fingerprint, const std::vector<Param*>& params);
void load_params(const std::filesystem::path& path, const std::string& fingerprint, const std::vector<Param*>& params);

}  // namespace wavemu::nn
