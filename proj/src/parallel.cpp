#include "qgb/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace qgb {

namespace {

int default_threads() {
  if (const char* env = std::getenv("QGB_THREADS")) {
    try {
      const int k = std::stoi(env);
      if (k > 0) return k;
    } catch (...) {
    }
  }
  return 1;
}

std::atomic<int>& threads() {
  static std::atomic<int> k{default_threads()};
  return k;
}

}  // namespace

void set_thread_count(int k) { threads() = k > 0 ? k : default_threads(); }

int thread_count() { return threads(); }

}  // namespace qgb
