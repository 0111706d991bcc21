#pragma once

#include <fstream>
#include <functional>
#include <mutex>
#include <string>

namespace dmetgeo {

/// Worker count: DMETGEO_WORKERS if set, else hardware concurrency.
int worker_count();

/// Runs fn(0..n-1) across workers; results must go to per-index slots so the
/// outcome is identical to the sequential order.
void parallel_for(int n, const std::function<void(int)>& fn);

/// Line-oriented run log; also receives VQE energy traces as CSV rows.
class RunLog {
 public:
  RunLog() = default;
  explicit RunLog(const std::string& path);

  void line(const std::string& text);
  void vqe_row(const std::string& fragment_label, int iteration, double energy, double grad_norm);

  bool is_open() const { return out_.is_open(); }

 private:
  std::mutex mutex_;
  std::ofstream out_;
};

}  // namespace dmetgeo
