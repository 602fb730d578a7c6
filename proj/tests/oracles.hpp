#pragma once

// Test-only oracles, kept independent of the implementation paths they
// check: direct long-double evaluations of the defining formulas, brute
// force series, and a tiny deterministic generator for property tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracles {

// (q^x - q^-x)/(q - q^-1) straight from the definition, extended precision.
inline long double bracket(long double x, long double q) {
  return (std::pow(q, x) - std::pow(q, -x)) / (q - 1.0L / q);
}

inline long double brace(long double x, long double q) {
  return (std::pow(q, 2.0L * x) - 1.0L) / (q * q - 1.0L);
}

inline long double bracket_factorial(int n, long double q) {
  long double acc = 1.0L;
  for (int k = 1; k <= n; ++k) acc *= bracket(k, q);
  return acc;
}

inline long double brace_factorial(int n, long double q) {
  long double acc = 1.0L;
  for (int k = 1; k <= n; ++k) acc *= brace(k, q);
  return acc;
}

// Term-by-term q-exponential with a fixed large cap; no adaptive logic.
inline std::complex<long double> brute_q_exp(std::complex<long double> x, long double q,
                                             bool brace_flavor, int terms = 400) {
  std::complex<long double> sum = 0.0L, term = 1.0L;
  for (int n = 0; n < terms; ++n) {
    sum += term;
    long double d = brace_flavor ? brace(n + 1, q) : bracket(n + 1, q);
    term *= x / d;
  }
  return sum;
}

// Classical binomial coefficient.
inline long double binomial(int n, int m) {
  long double acc = 1.0L;
  for (int i = 1; i <= m; ++i) acc *= (long double)(n - m + i) / i;
  return acc;
}

// Minimal deterministic PRNG (no <random> seeding variance across libs).
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  // uniform in [lo, hi)
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (double)(next() >> 11) / (double)(1ull << 53);
  }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + (int)(next() % (std::uint64_t)(hi - lo + 1));
  }
};

}  // namespace oracles
