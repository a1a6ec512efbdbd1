#pragma once

#include <cstdint>

namespace flexopt {

/// Default seed for every stochastic component; runs are reproducible given
/// the same seed, inputs, and callbacks.
inline constexpr std::uint64_t default_seed = 42;

}  // namespace flexopt
