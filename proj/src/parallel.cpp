#include "walshfejer/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace wf {

namespace {
std::atomic<unsigned> g_override{0};
}

void set_thread_count_override(unsigned threads) { g_override.store(threads); }

unsigned thread_count() {
  if (const unsigned forced = g_override.load(); forced != 0) return forced;
  if (const char* env = std::getenv("WF_THREADS"); env != nullptr && *env != '\0') {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
      // fall through to the hardware default
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

}  // namespace wf
