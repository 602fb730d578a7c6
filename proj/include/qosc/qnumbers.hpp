#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qosc/laurent.hpp"

namespace qosc {

using complexd = std::complex<double>;

/// Deformation parameter. Numeric operations require q > 0, q != 1;
/// q = 1 is the classical limit and is served by the limit-scan paths only.
struct QValue {
  double q;
  explicit QValue(double v) : q(v) { validate(); }
  void validate() const {
    if (!(q > 0.0) || q == 1.0)
      throw std::invalid_argument("QValue: require q > 0 and q != 1");
  }
};

inline void check_q(double q) {
  if (!(q > 0.0) || q == 1.0)
    throw std::invalid_argument("q-number: require q > 0 and q != 1");
}

// ---------------------------------------------------------------------------
// numeric q-numbers
// ---------------------------------------------------------------------------

/// [x]_q = (q^x - q^-x) / (q - q^-1).  Symmetric: invariant under q -> 1/q.
inline double q_bracket(double x, double q) {
  check_q(q);
  long double lq = q;
  long double v = (std::pow(lq, (long double)x) - std::pow(lq, (long double)-x)) /
                  (lq - 1.0L / lq);
  return static_cast<double>(v) + 0.0;  // normalize -0
}

/// {x}_q = (q^2x - 1) / (q^2 - 1) = [x]_q q^(x-1).
inline double q_brace(double x, double q) {
  check_q(q);
  long double lq = q;
  return static_cast<double>((std::pow(lq, 2.0L * x) - 1.0L) / (lq * lq - 1.0L)) + 0.0;
}

enum class QNumberFlavor { bracket, brace };

inline double q_number(double x, double q, QNumberFlavor f) {
  return f == QNumberFlavor::bracket ? q_bracket(x, q) : q_brace(x, q);
}

/// [n]_q! or {n}_q! (empty product = 1).
inline double q_factorial(int n, double q, QNumberFlavor f = QNumberFlavor::bracket) {
  if (n < 0) throw std::domain_error("q_factorial: n must be >= 0");
  check_q(q);
  long double acc = 1.0L;
  for (int k = 1; k <= n; ++k) {
    long double lq = q;
    if (f == QNumberFlavor::bracket)
      acc *= (std::pow(lq, (long double)k) - std::pow(lq, (long double)-k)) / (lq - 1.0L / lq);
    else
      acc *= (std::pow(lq, 2.0L * k) - 1.0L) / (lq * lq - 1.0L);
  }
  return static_cast<double>(acc);
}

/// Gaussian binomial [n]_q! / ([m]_q! [n-m]_q!), computed as a product of
/// bracket ratios to keep intermediates tame.
inline double q_binomial(int n, int m, double q) {
  if (m < 0 || m > n) throw std::domain_error("q_binomial: require 0 <= m <= n");
  check_q(q);
  if (m > n - m) m = n - m;
  long double acc = 1.0L;
  for (int i = 1; i <= m; ++i)
    acc *= (long double)q_bracket(n - m + i, q) / (long double)q_bracket(i, q);
  return static_cast<double>(acc);
}

// ---------------------------------------------------------------------------
// exact twins
// ---------------------------------------------------------------------------

/// Exact [n]_q for integer n: q^(n-1) + q^(n-3) + ... + q^(1-n).
/// `base_units` is the q^(1/2)-exponent of one power of the bracket base:
/// 2 for base q (default), 4 for base q^2.
inline LaurentPoly q_bracket_poly(int n, int base_units = 2) {
  LaurentPoly p;
  int sign = 1;
  if (n < 0) {
    n = -n;
    sign = -1;
  }
  for (int j = 0; j < n; ++j) {
    int e = (n - 1 - 2 * j) * base_units;
    p += LaurentPoly::monomial(Rational(sign), HalfInt::from_twice(e));
  }
  return p;
}

/// Exact {n}_q for integer n >= 0: 1 + q^2 + ... + q^(2(n-1)); negative n
/// via {-n}_q = -q^(-2n) {n}_q.
inline LaurentPoly q_brace_poly(int n, int base_units = 2) {
  if (n >= 0) {
    LaurentPoly p;
    for (int j = 0; j < n; ++j)
      p += LaurentPoly::q_power(HalfInt::from_twice(2 * j * base_units));
    return p;
  }
  LaurentPoly p = q_brace_poly(-n, base_units);
  return (-p) * LaurentPoly::q_power(HalfInt::from_twice(2 * n * base_units));
}

/// Exact [x]_q for any half-integer x, as a Laurent fraction
/// (q^x - q^-x) / (q - q^-1).  A Laurent *polynomial* form exists only for
/// integer x; half-odd arguments live in the fraction field.
inline LaurentFrac q_bracket_frac(HalfInt x, int base_units = 2) {
  LaurentPoly num = LaurentPoly::q_power(HalfInt::from_twice(x.twice * base_units / 2)) -
                    LaurentPoly::q_power(HalfInt::from_twice(-x.twice * base_units / 2));
  LaurentPoly den = LaurentPoly::q_power(HalfInt::from_twice(base_units)) -
                    LaurentPoly::q_power(HalfInt::from_twice(-base_units));
  return LaurentFrac(num, den);
}

/// Exact {x}_q = (q^2x - 1)/(q^2 - 1) for any half-integer x.
inline LaurentFrac q_brace_frac(HalfInt x, int base_units = 2) {
  LaurentPoly num = LaurentPoly::q_power(HalfInt::from_twice(x.twice * base_units)) -
                    LaurentPoly::one();
  LaurentPoly den = LaurentPoly::q_power(HalfInt::from_twice(2 * base_units)) -
                    LaurentPoly::one();
  return LaurentFrac(num, den);
}

/// Exact monomial q^x for half-integer x.
inline LaurentPoly q_power_poly(HalfInt x, int base_units = 2) {
  return LaurentPoly::q_power(HalfInt::from_twice(x.twice * base_units / 2));
}

inline LaurentPoly q_factorial_poly(int n, QNumberFlavor f = QNumberFlavor::bracket,
                                    int base_units = 2) {
  if (n < 0) throw std::domain_error("q_factorial_poly: n must be >= 0");
  LaurentPoly acc = LaurentPoly::one();
  for (int k = 1; k <= n; ++k)
    acc *= (f == QNumberFlavor::bracket) ? q_bracket_poly(k, base_units)
                                         : q_brace_poly(k, base_units);
  return acc;
}

/// Exact Gaussian binomial (always a Laurent polynomial, computed by the
/// q-Pascal recursion binom(n,m) = q^m binom(n-1,m) + q^(m-n) binom(n-1,m-1)).
inline LaurentPoly q_binomial_poly(int n, int m) {
  if (m < 0 || m > n) throw std::domain_error("q_binomial_poly: require 0 <= m <= n");
  std::vector<LaurentPoly> row(static_cast<std::size_t>(m) + 1);
  row[0] = LaurentPoly::one();
  for (int i = 1; i <= n; ++i) {
    int top = std::min(i, m);
    for (int j = top; j >= 1; --j) {
      LaurentPoly kept = row[j] * LaurentPoly::q_power(HalfInt(j));
      LaurentPoly carried = row[j - 1] * LaurentPoly::q_power(HalfInt(j - i));
      row[j] = kept + carried;
    }
  }
  return row[m];
}

// ---------------------------------------------------------------------------
// q-exponentials
// ---------------------------------------------------------------------------

struct QSeriesOptions {
  double tail_tol = 1e-16;   // relative to |partial sum|
  int quiet_terms = 5;       // consecutive small terms required to stop
  int max_terms = 500;       // hard cap
  int divergence_window = 10;  // consecutive non-decreasing |term| = divergence
};

struct QSeriesResult {
  complexd value{0.0, 0.0};
  bool converged = false;
  bool diverged = false;
  int terms_used = 0;
  double tail_bound = 0.0;  // magnitude of the first omitted term
};

namespace detail {

// Divergence means the term ratio |x|/denom(n) has stopped contracting for
// good: growing magnitudes alone also happen transiently on the hump of an
// entire series (bracket factorials grow without bound, so e_q always
// converges), so the detector additionally requires the denominator
// sequence to have stagnated, which is the finite-radius signature of the
// brace factorial at q < 1.
template <class NextDenomFactor>
QSeriesResult q_exp_series(complexd x, NextDenomFactor denom_factor,
                           const QSeriesOptions& opt) {
  QSeriesResult res;
  complexd term{1.0, 0.0};
  complexd sum{0.0, 0.0};
  int quiet = 0, growing = 0;
  double prev_mag = 1.0;
  double prev_d = 0.0;
  for (int n = 0; n < opt.max_terms; ++n) {
    sum += term;
    ++res.terms_used;
    double d = denom_factor(n + 1);
    complexd next = term * x / d;
    double mag = std::abs(next);
    bool denom_stagnant = n > 0 && d <= prev_d * (1.0 + 1e-9);
    if (mag >= prev_mag && mag > 0.0 && denom_stagnant) {
      if (++growing >= opt.divergence_window) {
        res.value = sum;
        res.diverged = true;
        res.tail_bound = mag;
        return res;
      }
    } else {
      growing = 0;
    }
    if (!std::isfinite(mag)) {
      res.value = sum;
      res.diverged = true;
      res.tail_bound = prev_mag;
      return res;
    }
    if (mag <= opt.tail_tol * std::max(std::abs(sum), 1e-300)) {
      if (++quiet >= opt.quiet_terms) {
        res.value = sum;
        res.converged = true;
        res.tail_bound = mag;
        return res;
      }
    } else {
      quiet = 0;
    }
    term = next;
    prev_mag = mag;
    prev_d = d;
  }
  res.value = sum;
  res.tail_bound = std::abs(term);
  return res;
}

}  // namespace detail

/// e_q^x = sum x^n / [n]_q!, reported with convergence/divergence status.
inline QSeriesResult q_exp_e_series(complexd x, double q,
                                    const QSeriesOptions& opt = {}) {
  check_q(q);
  return detail::q_exp_series(x, [q](int n) { return q_bracket(n, q); }, opt);
}

/// E_q^x = sum x^n / {n}_q!.  For q < 1 the braces are bounded, so the series
/// has convergence radius 1/(1 - q^2) and genuinely diverges beyond it.
inline QSeriesResult q_exp_E_series(complexd x, double q,
                                    const QSeriesOptions& opt = {}) {
  check_q(q);
  return detail::q_exp_series(x, [q](int n) { return q_brace(n, q); }, opt);
}

/// Value-or-throw wrappers.
inline complexd q_exp_e(complexd x, double q, const QSeriesOptions& opt = {}) {
  QSeriesResult r = q_exp_e_series(x, q, opt);
  if (r.diverged) throw std::domain_error("q_exp_e: series diverges at this argument");
  return r.value;
}
inline complexd q_exp_E(complexd x, double q, const QSeriesOptions& opt = {}) {
  QSeriesResult r = q_exp_E_series(x, q, opt);
  if (r.diverged) throw std::domain_error("q_exp_E: series diverges at this argument");
  return r.value;
}

/// Analytic continuation of E_q^(-x) for x >= 0, q < 1, via the Euler
/// product 1 / prod_k (1 + (1-q^2) q^2k x).  Agrees with the series inside
/// its radius and stays positive and decaying beyond it.  Braces are not
/// q <-> 1/q symmetric, so q > 1 is rejected rather than remapped.
inline double q_exp_E_neg_product(double x, double q) {
  check_q(q);
  if (q > 1.0) throw std::invalid_argument("q_exp_E_neg_product: requires q < 1");
  if (x < 0.0) throw std::domain_error("q_exp_E_neg_product: require x >= 0");
  long double omq2 = 1.0L - (long double)q * q;
  long double factor = omq2 * x;
  long double prod = 1.0L;
  while (factor > 1e-22L) {
    prod *= (1.0L + factor);
    factor *= (long double)q * q;
  }
  return static_cast<double>(1.0L / prod);
}

/// The dual Euler partner prod_{k >= k_start} (1 - (1-q^2) q^(2k) x);
/// the Gamma_{q^2} kernel uses k_start = 1.
inline double q_exp_dual_product(double x, double q, int k_start = 0) {
  check_q(q);
  if (q > 1.0) throw std::invalid_argument("q_exp_dual_product: requires q < 1");
  long double omq2 = 1.0L - (long double)q * q;
  long double factor = omq2 * x * std::pow((long double)q, 2.0L * k_start);
  long double prod = 1.0L;
  while (std::fabs((double)factor) > 1e-22) {
    prod *= (1.0L - factor);
    factor *= (long double)q * q;
  }
  return static_cast<double>(prod);
}

// ---------------------------------------------------------------------------
// q-deformed binomial function (1 -/+ x)^n_q
// ---------------------------------------------------------------------------

enum class BinomSign { minus, plus };

/// Coefficients of (1 -/+ x)^n_q = sum_m qbinom(n,m) (-/+ x)^m, index = power of x.
inline std::vector<double> q_deformed_binom_coeffs(int n, double q, BinomSign sign) {
  if (n < 0) throw std::domain_error("q_deformed_binom: n must be >= 0");
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) {
    double b = q_binomial(n, m, q);
    c[static_cast<std::size_t>(m)] = (sign == BinomSign::minus && (m % 2)) ? -b : b;
  }
  return c;
}

/// (1 -/+ x)^n_q evaluated at x.  Equivalent product form:
/// prod_{k=0..n-1} (1 -/+ q^(2k-n+1) x); the product is used so large n
/// stays stable and the zero set is explicit.
inline double q_deformed_binom(double x, int n, double q, BinomSign sign) {
  if (n < 0) throw std::domain_error("q_deformed_binom: n must be >= 0");
  check_q(q);
  long double acc = 1.0L;
  for (int k = 0; k < n; ++k) {
    long double node = std::pow((long double)q, (long double)(2 * k - n + 1)) * x;
    acc *= (sign == BinomSign::minus) ? (1.0L - node) : (1.0L + node);
  }
  return static_cast<double>(acc);
}

/// 1 / (1 + x)^n_q, as used by the su_q(2) measure. Throws on a zero of the
/// polynomial.
inline double q_deformed_binom_reciprocal(double x, int n, double q, BinomSign sign) {
  double v = q_deformed_binom(x, n, q, sign);
  if (v == 0.0) throw std::domain_error("q_deformed_binom_reciprocal: zero of the polynomial");
  return 1.0 / v;
}

}  // namespace qosc
