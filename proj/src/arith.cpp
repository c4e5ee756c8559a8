#include "hermiquad/detail/arith.hpp"

#include <array>

namespace hermiquad::detail {
namespace {

constexpr int kMaxFactorial = 170;

constexpr std::array<double, kMaxFactorial + 1> make_factorials() {
  std::array<double, kMaxFactorial + 1> t{};
  t[0] = 1.0;
  for (int i = 1; i <= kMaxFactorial; ++i)
    t[i] = t[i - 1] * static_cast<double>(i);
  return t;
}

constexpr auto kFactorials = make_factorials();

}  // namespace

double factorial(int n) noexcept {
  if (n < 0 || n > kMaxFactorial)
    return std::numeric_limits<double>::quiet_NaN();
  return kFactorials[static_cast<std::size_t>(n)];
}

}  // namespace hermiquad::detail
