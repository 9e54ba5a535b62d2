#pragma once

#include <cmath>

#include "dsspan/graph.hpp"

namespace dsspan {

// Smallest integer t with t >= x * n, for x in (0, 1e6) and n >= 0, computed
// exactly on the double's true rational value. Plain ceil(x * n) can land on
// the wrong side after the product rounds.
inline int exact_ceil_product(double x, int n) {
  if (n == 0 || x <= 0.0) return 0;
  int exp = 0;
  const double mant = std::frexp(x, &exp);  // x = mant * 2^exp, mant in [0.5, 1)
  const auto m = static_cast<__int128>(std::ldexp(mant, 53));  // x = m * 2^(exp-53)
  const int shift = 53 - exp;
  const __int128 num = m * n;
  if (shift <= 0) {
    const __int128 t = num << -shift;
    return static_cast<int>(t);
  }
  const __int128 one = 1;
  const __int128 t = (num + (one << shift) - 1) >> shift;
  return static_cast<int>(t);
}

}  // namespace dsspan
