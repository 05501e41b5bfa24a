#pragma once

#include "capcomp/rational.hpp"

namespace capcomp {

struct CapacityInterval {
  double lower;
  double upper;
};

// (T/(T+w)) C_SEC(T,w) <= C_SWC(T,w) <= C_SEC(T,w). The lower end comes from
// stacking length-(T+w) blocks: T bits with >= w ones followed by w ones.
CapacityInterval swc_sec_sandwich(int window, int weight);

// Largest of C_SEC(T-1, ceil((T+w-2)/2)) and C_SEC(floor(T/(m+1)), ceil(w/m))
// for m = 1 .. max_m. Parameterizations with weight > length (or length 0)
// are skipped; 0 when none survive.
double swc_lower_embedded_sec(int window, int weight, int max_m = 8);

// max of the two lower bounds above.
double swc_best_lower_bound(int window, int weight, int max_m = 8);

// h(max{B, 1/2}): no outage-free code family can exceed it.
double entropy_ceiling(const Rational& b);

}  // namespace capcomp
