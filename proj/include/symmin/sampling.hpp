#pragma once

#include <cstdint>
#include <functional>
#include <random>

namespace symmin {

// Seed for sample `index` of stream `stream` under a user seed. Samples are
// independent of how work is split across threads.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// Runs body(i) for i in [0, count). threads <= 0 means hardware concurrency.
// Exceptions thrown by body are rethrown on the calling thread.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

int default_threads();

}  // namespace symmin
