#pragma once
#include <string>
#include <vector>

namespace wavemu::harness {

struct Check {
    std::string invariant;
    bool passed = false;
    std::string measured;
};

struct SelftestReport {
    std::vector<Check> checks;
    bool passed() const;
    std::string text() const;
};

struct SelftestOptions {
    /// Generators used for the GF(2) model; the PHY always uses 133/171.
    unsigned gen_a = 0133;
    unsigned gen_b = 0171;
    std::size_t probes = 200;
};

/// Conformance vectors, GF(2) probe agreement, loopbacks, the quantization
/// bound and gradient checks.
SelftestReport selftest(const SelftestOptions& opt = {});

}  // namespace wavemu::harness
