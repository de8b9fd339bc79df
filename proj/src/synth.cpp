#include "tubal/synth.hpp"

#include <cmath>
#include <numbers>

#include "tubal/algebra.hpp"

namespace tubal {

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(counter_hash(seed, counter) >> 11) * 0x1.0p-53;
}

double counter_normal(std::uint64_t seed, std::uint64_t index) {
    // u1 in (0, 1] so the log is finite.
    const double u1 =
        (static_cast<double>(counter_hash(seed, 2 * index) >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = counter_uniform(seed, 2 * index + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

ObservationMask gen_mask(std::size_t n1, std::size_t n2, std::size_t n3, double miss_rate,
                         std::uint64_t seed) {
    if (!(miss_rate >= 0.0 && miss_rate < 1.0))
        throw RangeError("gen_mask: miss_rate must lie in [0, 1)");
    ObservationMask mask(n1, n2, n3);
    for (std::size_t t = 0; t < mask.size(); ++t)
        mask.data()[t] = (counter_uniform(seed, t) >= miss_rate) ? 1 : 0;
    return mask;
}

RealTensor3 randn_tensor(std::size_t n1, std::size_t n2, std::size_t n3, std::uint64_t seed) {
    RealTensor3 out(n1, n2, n3);
    for (std::size_t t = 0; t < out.size(); ++t) out.data()[t] = counter_normal(seed, t);
    return out;
}

RealTensor3 synth_lowrank(const SynthSpec& spec) {
    if (spec.m < 1 || spec.n < 1 || spec.p < 1)
        throw RangeError("synth_lowrank: dimensions must be positive");
    if (spec.r1 < 1 || spec.r1 > std::min(spec.m, spec.n))
        throw RangeError("synth_lowrank: r1 must lie in [1, min(m, n)]");
    RealTensor3 m1(spec.m, spec.r1, spec.p);
    RealTensor3 m2(spec.r1, spec.n, spec.p);
    std::size_t t = 0;
    for (std::size_t i = 0; i < m1.size(); ++i) m1.data()[i] = counter_normal(spec.seed, t++);
    for (std::size_t i = 0; i < m2.size(); ++i) m2.data()[i] = counter_normal(spec.seed, t++);
    return t_product(m1, m2);
}

}  // namespace tubal
