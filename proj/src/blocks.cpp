#include <cmath>
#include <string>

#include "idlewage/errors.hpp"
#include "idlewage/optimize.hpp"

namespace idlewage {

namespace {
constexpr int kDay = static_cast<int>(kHoursPerDay);
}

void BlockConstraint::validate() const {
  if (b1 < 1 || b2 < 1 || b1 + b2 > kDay) {
    throw ValidationError("optimize: block lengths need b1, b2 >= 1 and b1 + b2 <= 24");
  }
  if (!(std::isfinite(j_min) && j_min >= 0.0)) {
    throw ValidationError("optimize: minimum block wage j_min must be >= 0");
  }
}

std::vector<BlockPair> admissible_blocks(int b1, int b2) {
  std::vector<BlockPair> pairs;
  if (b1 < 1 || b2 < 1) return pairs;
  // Block 2 starts after block 1 ends and ends before block 1 starts again
  // the next day: b1 <= (h2 - h1) mod 24 <= 24 - b2.
  for (int h1 = 1; h1 <= kDay; ++h1) {
    for (int h2 = 1; h2 <= kDay; ++h2) {
      const int offset = ((h2 - h1) % kDay + kDay) % kDay;
      if (offset >= b1 && offset <= kDay - b2) pairs.push_back({h1, h2});
    }
  }
  return pairs;
}

double block_sum(std::span<const double> hourly, BlockPair pair, int b1, int b2) {
  if (hourly.size() != kHoursPerDay) {
    throw ValidationError("optimize: block sums need 24 hourly values, got " +
                          std::to_string(hourly.size()));
  }
  auto at = [&](int hour) { return hourly[static_cast<std::size_t>((hour - 1) % kDay)]; };
  double sum = 0.0;
  for (int k = 0; k < b1; ++k) sum += at(pair.h1 + k);
  for (int k = 0; k < b2; ++k) sum += at(pair.h2 + k);
  return sum;
}

BlockMax block_wage_max(std::span<const double> hourly, int b1, int b2) {
  BlockMax best;
  for (const auto& pair : admissible_blocks(b1, b2)) {
    const double v = block_sum(hourly, pair, b1, b2);
    if (!best.pair || v > best.value) {
      best.value = v;
      best.pair = pair;
    }
  }
  return best;
}

}  // namespace idlewage
