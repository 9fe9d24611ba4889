#pragma once

#include <cstddef>
#include <functional>

namespace cim {

// Splits [0, count) into contiguous chunks and runs `body(begin, end)` on
// each, possibly concurrently. Callers must make per-index results
// independent of how the range is split.
void parallel_for_chunks(std::size_t count,
                         const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace cim
