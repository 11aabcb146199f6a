#pragma once

#include <algorithm>
#include <vector>

namespace metronome {

/// Middle order statistic; the mean of the two middle values for even
/// counts, 0 for an empty input.
inline double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace metronome
