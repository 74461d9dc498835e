#include "rdsim/rng.hpp"

namespace rdsim {

Rng derive_stream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> words) {
  std::uint64_t state = mix64(master_seed);
  for (std::uint64_t w : words) {
    state = mix64(state ^ mix64(w));
  }
  // Expand to four words; std::seed_seq generation is fully specified by the
  // standard, so the engine state is identical across standard libraries.
  std::seed_seq seq{
      static_cast<std::uint32_t>(state),
      static_cast<std::uint32_t>(state >> 32),
      static_cast<std::uint32_t>(mix64(state)),
      static_cast<std::uint32_t>(mix64(state) >> 32),
      static_cast<std::uint32_t>(mix64(state + 1)),
      static_cast<std::uint32_t>(mix64(state + 1) >> 32),
  };
  return Rng(seq);
}

}  // namespace rdsim
