#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "zinv/rational.hpp"

namespace zinv {

/// x[n] for n = 0 .. values.size() - 1, tagged with the method that produced it.
struct SequenceTable {
  std::vector<double> values;
  std::string method_tag;
  RationalFunction source;

  int n_max() const { return static_cast<int>(values.size()) - 1; }
  double max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
};

/// Largest |a[n] - b[n]| over the common index range.
inline double max_deviation(const SequenceTable& a, const SequenceTable& b) {
  double m = 0.0;
  const std::size_t n = std::min(a.values.size(), b.values.size());
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

}  // namespace zinv
