#include "nxent/parallel.hpp"

#include <cstdlib>
#include <string>

namespace nxent {

unsigned thread_count() {
  static const unsigned count = [] {
    unsigned requested = 0;
    if (const char* env = std::getenv("NXENT_THREADS")) {
      try {
        requested = static_cast<unsigned>(std::stoul(env));
      } catch (...) {
        requested = 0;
      }
    }
    if (requested == 0) requested = std::thread::hardware_concurrency();
    return requested == 0 ? 1u : requested;
  }();
  return count;
}

}  // namespace nxent
