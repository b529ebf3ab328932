#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "linerdv/exactnum.hpp"

namespace linerdv::testing {

// Deterministic generators for property tests. uniform_int_distribution is
// avoided because its algorithm is implementation-defined.
inline long long rand_in(std::mt19937_64& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Rational rand_rational(std::mt19937_64& rng, long long max_num = 40,
                              long long max_den = 12) {
  const long long num = rand_in(rng, -max_num, max_num);
  const long long den = rand_in(rng, 1, max_den);
  return Rational(num, den);
}

inline Scalar rand_scalar(std::mt19937_64& rng) {
  return Scalar(rand_rational(rng), rand_rational(rng));
}

inline Scalar rand_nonzero_scalar(std::mt19937_64& rng) {
  for (;;) {
    Scalar s = rand_scalar(rng);
    if (!s.is_zero()) return s;
  }
}

}  // namespace linerdv::testing
