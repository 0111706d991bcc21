#include "dmetgeo/util.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <thread>
#include <vector>

namespace dmetgeo {

int worker_count() {
  if (const char* env = std::getenv("DMETGEO_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  const int workers = std::min(n, worker_count());
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failed.load() && error) std::rethrow_exception(error);
}

RunLog::RunLog(const std::string& path) : out_(path) {}

void RunLog::line(const std::string& text) {
  std::lock_guard<std::mutex> lock(mutex_);
  if (out_.is_open()) out_ << text << '\n';
}

void RunLog::vqe_row(const std::string& fragment_label, int iteration, double energy,
                     double grad_norm) {
  std::lock_guard<std::mutex> lock(mutex_);
  if (!out_.is_open()) return;
  char buf[160];
  std::snprintf(buf, sizeof buf, "vqe,%s,%d,%.12g,%.12g", fragment_label.c_str(), iteration,
                energy, grad_norm);
  out_ << buf << '\n';
}

}  // namespace dmetgeo
