#pragma once

#include <cstdint>

namespace toptree::testing {

/// Base seed of every randomized test, set from --seed (default 0).
std::uint64_t base_seed();
void set_base_seed(std::uint64_t seed);

}  // namespace toptree::testing
