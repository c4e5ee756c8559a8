#include "hermiquad/config.hpp"

#include <atomic>
#include <string>

#include "hermiquad/errors.hpp"

namespace hermiquad {
namespace {

std::atomic<int> g_max_index{kDefaultMaxIndex};

}  // namespace

int max_index() noexcept { return g_max_index.load(std::memory_order_relaxed); }

void set_max_index(int n) {
  if (n < 1 || n > kHardMaxIndex)
    throw EvalError(errc::invalid_argument,
                    "max index must lie in [1, " +
                        std::to_string(kHardMaxIndex) + "], got " +
                        std::to_string(n));
  g_max_index.store(n, std::memory_order_relaxed);
}

}  // namespace hermiquad
