#include "lipjet/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace lipjet {

unsigned thread_count() {
  if (const char* env = std::getenv("LIPJET_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // fall through to the machine default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::size_t chunk_count(std::size_t n, std::size_t min_chunk) {
  if (n == 0) return 1;
  const std::size_t by_size = std::max<std::size_t>(1, n / std::max<std::size_t>(1, min_chunk));
  return std::min<std::size_t>(by_size, thread_count());
}

void parallel_chunks(std::size_t n, std::size_t chunks,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  chunks = std::max<std::size_t>(1, std::min(chunks, std::max<std::size_t>(1, n)));
  auto range = [&](std::size_t c) {
    return std::pair{n * c / chunks, n * (c + 1) / chunks};
  };
  if (chunks == 1) {
    body(0, 0, n);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> workers;
  workers.reserve(chunks - 1);
  for (std::size_t c = 1; c < chunks; ++c) {
    workers.emplace_back([&, c] {
      try {
        auto [b, e] = range(c);
        body(c, b, e);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  try {
    auto [b, e] = range(0);
    body(0, b, e);
  } catch (...) {
    errors[0] = std::current_exception();
  }
  for (auto& w : workers) w.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

}  // namespace lipjet
