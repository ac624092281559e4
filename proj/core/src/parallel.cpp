#include "rigidlens/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace rigidlens {

unsigned parallel_width() {
  static const unsigned width = [] {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("RIGIDLENS_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != env && v >= 1) return std::min<unsigned>(hw, static_cast<unsigned>(v));
    }
    return hw;
  }();
  return width;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const unsigned width = std::min<std::size_t>(parallel_width(), count);
  if (width <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(width);
  for (unsigned t = 0; t < width; ++t) {
    workers.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += width) fn(i);
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace rigidlens
