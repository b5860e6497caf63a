#pragma once

#include <cstdint>
#include <random>

namespace kpzlab {

/// Purpose of a random stream. Streams with different tags never overlap in
/// use, so e.g. two runs sharing a noise stream can differ in initial data.
enum class StreamTag : std::uint32_t {
  noise = 1,
  initial = 2,
  mcmc = 3,
  reference = 4,
  fresh_w = 5,
  experiment = 6,
};

/// Independent generator for (seed, index, tag).
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t index, StreamTag tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(tag)};
  return std::mt19937_64(seq);
}

}  // namespace kpzlab
