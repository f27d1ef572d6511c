#include "ivpkit/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace ivpkit {

namespace {
std::atomic<int> override_threads{0};
}

int default_threads() {
  if (int n = override_threads.load(); n > 0) return n;
  if (const char* env = std::getenv("IVP_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_default_threads(int n) { override_threads = n; }

}  // namespace ivpkit
