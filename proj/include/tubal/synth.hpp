#pragma once

#include <cstdint>

#include "tubal/tensor.hpp"

namespace tubal {

/// Counter-based deterministic generator: the SplitMix64 finalizer
/// applied to seed + (counter+1) * golden gamma. A given
/// (seed, counter) pair produces the same value on every platform and
/// under any thread count.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter);

/// Uniform double in [0, 1) from one counter.
double counter_uniform(std::uint64_t seed, std::uint64_t counter);

/// Standard normal via Box-Muller; draw `index` consumes counters
/// 2*index and 2*index + 1.
double counter_normal(std::uint64_t seed, std::uint64_t index);

/// Construction recipe for a synthetic low-tubal-rank tensor:
/// the t-product of two independent standard-normal tensors
/// (m x r1 x p) * (r1 x n x p).
struct SynthSpec {
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t p = 0;
    std::size_t r1 = 0;  // tubal rank of the construction
    std::uint64_t seed = 0;
};

/// Bernoulli mask: each entry observed independently with probability
/// 1 - miss_rate. Identical output for identical (dims, miss_rate,
/// seed) everywhere.
ObservationMask gen_mask(std::size_t n1, std::size_t n2, std::size_t n3, double miss_rate,
                         std::uint64_t seed);

RealTensor3 synth_lowrank(const SynthSpec& spec);

/// Tensor of independent standard normals.
RealTensor3 randn_tensor(std::size_t n1, std::size_t n2, std::size_t n3, std::uint64_t seed);

}  // namespace tubal
