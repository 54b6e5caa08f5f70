#include "wavemu/phy/dft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "wavemu/error.hpp"

namespace wavemu {
namespace {

class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(int n, bool inverse) {
        std::lock_guard lock(mu_);
        const auto key = std::make_pair(n, inverse);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::vector<cplx> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
        fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                       reinterpret_cast<fftw_complex*>(b.data()),
                                       inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

private:
    std::mutex mu_;
    std::map<std::pair<int, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

}  // namespace

void dft_unitary(std::span<const cplx> in, std::span<cplx> out, bool inverse) {
    if (in.size() != out.size() || in.empty()) throw FramingError("dft_unitary: size mismatch");
    const int n = static_cast<int>(in.size());
    std::vector<cplx> src(in.begin(), in.end());
    fftw_execute_dft(cache().get(n, inverse), reinterpret_cast<fftw_complex*>(src.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& v : out) v *= s;
}

}  // namespace wavemu
