#include "kpnlab/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace kpnlab {

unsigned default_jobs()
{
  if (const char* env = std::getenv("KPNLAB_JOBS")) {
    try {
      long v = std::stol(env);
      if (v > 0 && v < 1024)
        return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body)
{
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      body(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  for (unsigned t = 0; t < workers; ++t) {
    threads.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += workers)
          body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
      }
    });
  }
  for (auto& th : threads)
    th.join();
  if (error)
    std::rethrow_exception(error);
}

} // namespace kpnlab
