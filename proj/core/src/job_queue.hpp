#pragma once

#include <condition_variable>
#include <deque>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace simulatar::detail {

/// Fixed-size worker pool with two FIFO lanes. Workers always drain the
/// interactive lane first, so queued batch work never delays a preview by
/// more than the frames already in flight.
class WorkerPool {
 public:
  enum class Lane { Interactive, Batch };

  explicit WorkerPool(int workers);
  ~WorkerPool();
  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  void submit(Lane lane, std::function<void()> task);

  /// Tasks waiting (not yet started) in the batch lane.
  [[nodiscard]] std::size_t pending_batch() const;

 private:
  void run(std::stop_token stop);

  mutable std::mutex mutex_;
  std::condition_variable_any ready_;
  std::deque<std::function<void()>> interactive_;
  std::deque<std::function<void()>> batch_;
  std::vector<std::jthread> workers_;
};

}  // namespace simulatar::detail
