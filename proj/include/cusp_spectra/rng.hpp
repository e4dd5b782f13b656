#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace cusp_spectra {

// Deterministic uniform deviates.  mt19937_64 output is specified by the
// standard, and mapping the top 53 bits to [0,1) keeps the stream identical
// across standard libraries, unlike std::uniform_real_distribution.
class UniformRng {
  public:
    explicit UniformRng(std::uint64_t seed) : gen_(seed) {}

    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double in(double lo, double hi) { return lo + (hi - lo) * unit(); }

    double log_in(double lo, double hi) {
        return lo * std::exp(unit() * std::log(hi / lo));
    }

    long integer(long lo, long hi) { // inclusive ends
        return lo + static_cast<long>(unit() * static_cast<double>(hi - lo + 1));
    }

  private:
    std::mt19937_64 gen_;
};

} // namespace cusp_spectra
