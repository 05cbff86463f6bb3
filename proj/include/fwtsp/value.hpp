#pragma once

#include <cstdint>
#include <limits>
#include <string>

namespace fwtsp {

// Extended integer used for all costs and reduced values.
//
// kInf models a missing arc: it absorbs addition and compares greater than
// every finite value.  kNegInf only appears transiently, as the "gain" of
// replacing a missing arc of the current assignment by a finite one.
using Value = std::int64_t;

inline constexpr Value kInf = std::numeric_limits<std::int64_t>::max() / 4;
inline constexpr Value kNegInf = -kInf;

// Largest cost magnitude accepted from input.  Keeps every path sum of up to
// ~10^4 arcs strictly inside (kNegInf, kInf) so saturation tests stay exact.
inline constexpr Value kMaxCost = 1'000'000'000'000LL;

inline constexpr bool is_finite(Value v) { return v > kNegInf && v < kInf; }

// Saturating addition; kInf dominates kNegInf because a path that crosses a
// missing arc is unusable no matter what else it contains.
inline constexpr Value vadd(Value a, Value b) {
  if (a >= kInf || b >= kInf) return kInf;
  if (a <= kNegInf || b <= kNegInf) return kNegInf;
  return a + b;
}

// a - b read as "candidate minus incumbent": an infinite candidate never
// improves anything, while replacing an infinite incumbent is an unbounded
// improvement.
inline constexpr Value vsub(Value a, Value b) {
  if (a >= kInf) return kInf;
  if (b >= kInf) return kNegInf;
  if (a <= kNegInf) return kNegInf;
  if (b <= kNegInf) return kInf;
  return a - b;
}

inline std::string value_to_string(Value v) {
  if (v >= kInf) return "INF";
  if (v <= kNegInf) return "-INF";
  return std::to_string(v);
}

}  // namespace fwtsp
