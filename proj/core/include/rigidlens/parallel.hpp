#ifndef RIGIDLENS_PARALLEL_HPP
#define RIGIDLENS_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace rigidlens {

/// Parallel width used by parallel_for: min(RIGIDLENS_THREADS, hardware).
/// RIGIDLENS_THREADS unset or invalid falls back to the hardware count.
unsigned parallel_width();

/// Runs fn(i) for i in [0, count) across parallel_width() threads with a
/// static partition. Callers must write results into per-index slots and
/// reduce sequentially afterwards so outputs are thread-count independent.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace rigidlens

#endif  // RIGIDLENS_PARALLEL_HPP
