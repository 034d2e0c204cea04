#include "job_queue.hpp"

#include <algorithm>

namespace simulatar::detail {

WorkerPool::WorkerPool(int workers) {
  const int n = std::max(1, workers);
  workers_.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    workers_.emplace_back([this](std::stop_token stop) { run(stop); });
  }
}

WorkerPool::~WorkerPool() {
  for (auto& w : workers_) w.request_stop();
  ready_.notify_all();
  workers_.clear();  // joins
}

void WorkerPool::submit(Lane lane, std::function<void()> task) {
  {
    std::lock_guard lock(mutex_);
    (lane == Lane::Interactive ? interactive_ : batch_).push_back(std::move(task));
  }
  ready_.notify_one();
}

std::size_t WorkerPool::pending_batch() const {
  std::lock_guard lock(mutex_);
  return batch_.size();
}

void WorkerPool::run(std::stop_token stop) {
  for (;;) {
    std::function<void()> task;
    {
      std::unique_lock lock(mutex_);
      ready_.wait(lock, stop, [this] { return !interactive_.empty() || !batch_.empty(); });
      if (stop.stop_requested()) return;
      auto& lane = interactive_.empty() ? batch_ : interactive_;
      task = std::move(lane.front());
      lane.pop_front();
    }
    task();
  }
}

}  // namespace simulatar::detail
