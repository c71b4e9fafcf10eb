#include "homolocal/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace homolocal {

namespace {
std::atomic<int> g_jobs{1};
thread_local bool t_inside = false;
}  // namespace

void set_jobs(int n) { g_jobs = std::max(1, n); }
int jobs() { return g_jobs; }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(g_jobs.load()), n);
  if (workers <= 1 || t_inside) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  // The lowest failing index wins so the reported error matches a serial run.
  std::exception_ptr error;
  std::size_t error_index = n;
  std::mutex error_mutex;
  auto body = [&] {
    t_inside = true;
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
    t_inside = false;
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace homolocal
