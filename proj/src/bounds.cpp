#include "capcomp/bounds.hpp"

#include <algorithm>

#include "capcomp/capacity.hpp"
#include "capcomp/errors.hpp"

namespace capcomp {

CapacityInterval swc_sec_sandwich(int window, int weight) {
  if (window < 1 || weight < 1 || weight > window) throw DomainError("SWC requires 1 <= w <= T");
  const double upper = sec_capacity(window, weight).value;
  const double lower = static_cast<double>(window) / (window + weight) * upper;
  return {lower, upper};
}

double swc_lower_embedded_sec(int window, int weight, int max_m) {
  if (window < 1 || weight < 1 || weight > window) throw DomainError("SWC requires 1 <= w <= T");
  if (max_m < 1) throw DomainError("max_m must be positive");
  double best = 0.0;
  auto consider = [&best](int length, int w) {
    if (length < 1 || w < 1 || w > length) return;
    best = std::max(best, sec_capacity(length, w).value);
  };
  consider(window - 1, (window + weight - 2 + 1) / 2);
  for (int m = 1; m <= max_m; ++m) {
    consider(window / (m + 1), (weight + m - 1) / m);
  }
  return best;
}

double swc_best_lower_bound(int window, int weight, int max_m) {
  return std::max(swc_sec_sandwich(window, weight).lower, swc_lower_embedded_sec(window, weight, max_m));
}

double entropy_ceiling(const Rational& b) {
  if (b <= 0 || b >= 1) throw DomainError("entropy ceiling needs 0 < B < 1");
  const Rational half(1, 2);
  return binary_entropy(to_double(b > half ? b : half));
}

}  // namespace capcomp
