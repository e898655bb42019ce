#pragma once

#include <vector>

namespace mhyp {

/// Advances `digits` as a little-significance-last counter in the given
/// base.  Returns false (with all digits reset to 0) after the last tuple.
inline bool next_tuple(std::vector<int>& digits, int base) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < base) return true;
    digits[i] = 0;
  }
  return false;
}

/// True if base^exponent exceeds `cap` (overflow-safe; base >= 1).
inline bool power_exceeds(long base, long exponent, long cap) {
  long value = 1;
  for (long i = 0; i < exponent; ++i) {
    if (value > cap / base) return true;
    value *= base;
    if (value > cap) return true;
  }
  return false;
}

}  // namespace mhyp
