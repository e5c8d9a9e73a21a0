#include "swolff/parallel.hpp"

#include <cstdlib>
#include <string>

namespace swolff {

int thread_count() {
  if (const char* env = std::getenv("SWOLFF_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace swolff
