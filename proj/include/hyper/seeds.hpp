#pragma once

#include <cstdint>

namespace hyper {

std::uint64_t splitmix64(std::uint64_t x);

// Child seed for item `index` of stream `stream`:
// splitmix64(splitmix64(master + stream) + index). Independent of the order
// in which items are evaluated.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

}  // namespace hyper
