#ifndef AFFCM_RANDOM_HPP
#define AFFCM_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace affcm {

/**
 * Seeded random stream with a fully specified output sequence.
 *
 * Engine: std::mt19937_64 (MT19937-64, Matsumoto & Nishimura; the C++ standard
 * pins its output, seeding uses the standard's init_genrand64 with the 64-bit
 * seed). The standard library distributions are implementation-defined, so the
 * transforms are spelled out here:
 *
 *  - uniform():       (word >> 11) * 2^-53, a double in [0, 1).
 *  - uniform_index(k): rejection sampling on the top of the 64-bit range,
 *                      limit = 2^64 - (2^64 mod k), result = word mod k.
 *  - normal():        Marsaglia polar method, u, v = 2*uniform() - 1 until
 *                     0 < s = u^2 + v^2 < 1; returns u*sqrt(-2 ln s / s) and
 *                     caches v*sqrt(-2 ln s / s) for the next call.
 *
 * Any implementation following these rules reproduces the same streams.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::uint64_t uniform_index(std::uint64_t k) {
        // 2^64 mod k computed without overflow as (2^64 - k) mod k.
        const std::uint64_t rem = (std::uint64_t(0) - k) % k;
        for (;;) {
            const std::uint64_t w = engine_();
            if (rem == 0 || w < std::uint64_t(0) - rem) return w % k;
        }
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace affcm

#endif
