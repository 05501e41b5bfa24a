#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "capcomp/bits.hpp"
#include "capcomp/energy_model.hpp"
#include "capcomp/rational.hpp"
#include "capcomp/settings.hpp"

namespace capcomp {

// (d, inf)-RLL, type 1: every run of ones strictly between two zeros has
// length >= d. Leading and trailing runs are unconstrained.
struct RllParams {
  int d;
  friend bool operator==(const RllParams&, const RllParams&) = default;
};

// (T, w)-SWC: every window of T consecutive bits holds at least w ones.
struct SwcParams {
  int window;
  int weight;
  friend bool operator==(const SwcParams&, const SwcParams&) = default;
};

// (L, w)-SEC: every aligned subblock of L bits holds at least w ones.
struct SecParams {
  int length;
  int weight;
  friend bool operator==(const SecParams&, const SecParams&) = default;
};

enum class ConstraintFamily { rll, swc, sec };

class ConstraintSpec {
 public:
  using Variant = std::variant<RllParams, SwcParams, SecParams>;

  static ConstraintSpec rll(int d);
  static ConstraintSpec swc(int window, int weight);
  static ConstraintSpec sec(int length, int weight);

  ConstraintFamily family() const noexcept { return static_cast<ConstraintFamily>(params_.index()); }
  const Variant& params() const noexcept { return params_; }

  template <typename P>
  const P& as() const { return std::get<P>(params_); }

  // "RLL(d=2)", "SWC(T=3,w=2)", "SEC(L=4,w=2)"
  std::string to_string() const;

  friend bool operator==(const ConstraintSpec&, const ConstraintSpec&) = default;

 private:
  explicit ConstraintSpec(Variant params) : params_(params) {}
  Variant params_;
};

std::string to_string(ConstraintFamily family);

// Throws LengthMismatchError for SEC when seq.size() is not a multiple of L.
// An SWC word shorter than T is treated as a partial window and may hold at
// most T - w zeros, so short words are exactly the factors of long ones.
bool satisfies(const ConstraintSpec& spec, const BitSequence& seq);

// All valid words of length n in lexicographic order. Brute force over the
// 2^n words; n above settings.exhaustive_limit throws ResourceError.
std::vector<BitSequence> enumerate(const ConstraintSpec& spec, std::size_t n,
                                   const Settings& settings = {});

// M(n) by dynamic programming over constraint state. SWC throws
// ResourceError when 2^(T-1) exceeds settings.state_budget.
BigInt count_exact(const ConstraintSpec& spec, std::size_t n, const Settings& settings = {});

// True when both constraints admit exactly the same words of length n.
bool sets_equal(const ConstraintSpec& a, const ConstraintSpec& b, std::size_t n,
                const Settings& settings = {});

// A word satisfying `spec` that drives `model` into outage once it is long
// enough. Throws NoWitnessError when the constraint avoids outage under the model.
//   RLL: (0 1^d)^reps
//   SWC: (1^w 0^(T-w))^reps if w < ceil(TB), else (0^(T-w) 1^w)^reps
//   SEC: as SWC with L for the weight and E_init conditions; when only the
//        buffer condition fails, (1^w 0^(L-w) 0^(L-w) 1^w)^reps
BitSequence adversarial_sequence(const ConstraintSpec& spec, const EnergyModel& model,
                                 std::size_t repetitions);

// Smallest repetition count for which adversarial_sequence() is guaranteed
// to contain an outage.
std::size_t witness_repetitions(const ConstraintSpec& spec, const EnergyModel& model);

}  // namespace capcomp
