#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qosc/qnumbers.hpp"

namespace qosc {

/// The two q-difference derivatives:
///   symmetric   (f(qz) - f(q^-1 z)) / (z (q - q^-1))   -- step pair (q, 1/q)
///   asymmetric  (f(q^2 z) - f(z)) / (z (q^2 - 1))      -- step pair (q^2, 1)
enum class QDifferenceKind { symmetric, asymmetric };

template <class F>
complexd q_derivative(F&& f, complexd z, QDifferenceKind kind, double q) {
  check_q(q);
  if (z == complexd{0.0, 0.0})
    throw std::domain_error("q_derivative: z = 0 needs the polynomial form");
  if (kind == QDifferenceKind::symmetric)
    return (f(q * z) - f(z / q)) / (z * (q - 1.0 / q));
  return (f(q * q * z) - f(z)) / (z * (q * q - 1.0));
}

/// Dense polynomial in one complex variable; index = degree.  This is the
/// exact carrier for the fundamental-theorem checks and the Fock-Bargmann
/// realizations.
using PolyCoeffs = std::vector<complexd>;

inline complexd poly_eval(const PolyCoeffs& c, complexd z) {
  complexd acc{0.0, 0.0};
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

/// Exact monomial rule: d/d_q z^n = [n]_q z^(n-1) (symmetric) or {n}_q z^(n-1).
inline PolyCoeffs q_derivative_poly(const PolyCoeffs& c, QDifferenceKind kind, double q) {
  check_q(q);
  if (c.size() <= 1) return {};
  PolyCoeffs out(c.size() - 1);
  for (std::size_t n = 1; n < c.size(); ++n) {
    double factor = (kind == QDifferenceKind::symmetric) ? q_bracket((double)n, q)
                                                         : q_brace((double)n, q);
    out[n - 1] = c[n] * factor;
  }
  return out;
}

/// Inverse monomial rule: the indefinite Jackson integral of z^n is
/// z^(n+1) / [n+1]_q (resp. {n+1}_q).
inline PolyCoeffs jackson_indefinite_poly(const PolyCoeffs& c, QDifferenceKind kind, double q) {
  check_q(q);
  PolyCoeffs out(c.size() + 1);
  out[0] = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    double factor = (kind == QDifferenceKind::symmetric) ? q_bracket((double)(n + 1), q)
                                                         : q_brace((double)(n + 1), q);
    out[n + 1] = c[n] / factor;
  }
  return out;
}

/// Quadrature rule descriptor.
///
/// Finite symmetric rule on [0,a]:   a (q^-1 - q) sum_{j>=0} q^(2j+1) f(a q^(2j+1))
/// Finite asymmetric rule on [0,a]:  a (1 - q^2)  sum_{j>=0} q^(2j)   f(a q^(2j))
/// On [0,inf) the node lattice extends bilaterally (j < 0) from the anchor a.
/// Symmetric rules canonicalize q > 1 to 1/q; the asymmetric rule rejects q > 1.
struct JacksonRule {
  QDifferenceKind kind = QDifferenceKind::symmetric;
  double q = 0.5;
  double upper = 1.0;      // finite limit, or lattice anchor when infinite
  bool infinite = false;

  int max_nodes = 10000;
  double tail_tol = 1e-14;
  int quiet_nodes = 5;

  static JacksonRule finite(QDifferenceKind k, double q, double a) {
    JacksonRule r;
    r.kind = k;
    r.q = q;
    r.upper = a;
    return r;
  }
  static JacksonRule semi_infinite(QDifferenceKind k, double q, double anchor = 1.0) {
    JacksonRule r;
    r.kind = k;
    r.q = q;
    r.upper = anchor;
    r.infinite = true;
    return r;
  }

  double effective_q() const {
    check_q(q);
    if (kind == QDifferenceKind::asymmetric && q > 1.0)
      throw std::invalid_argument("JacksonRule: asymmetric rule requires q < 1");
    return q > 1.0 ? 1.0 / q : q;
  }
};

struct JacksonResult {
  double value = 0.0;
  bool converged = false;
  bool diverged = false;   // terms failed to decay on the outward lattice
  int nodes_used = 0;
  double tail_bound = 0.0;  // first omitted |term|

  double value_or_throw() const {
    if (diverged) throw std::domain_error("jackson_integral: node terms fail to decay");
    return value;
  }
};

namespace detail {

// One lattice direction.  Each term is prefactor * node * f(node); `ratio`
// advances the node geometrically.  On the outward lattice, terms inside a
// rising streak are held pending and committed only once the terms fall
// again, so a genuinely divergent tail leaves the plateau value in `acc`.
// Divergence = overflow, or still rising when the node cap is reached.
template <class F>
void jackson_sum_direction(F&& f, long double node, long double prefactor, long double ratio,
                           const JacksonRule& rule, bool outward, long double& acc,
                           JacksonResult& res) {
  int quiet = 0;
  bool rising = false;
  long double prev_mag = std::numeric_limits<long double>::max();
  long double pending = 0.0L;  // growth-suspect terms not yet committed
  for (int j = 0; j < rule.max_nodes; ++j) {
    long double term = prefactor * node * (long double)f((double)node);
    long double mag = std::fabs((double)term);
    if (!std::isfinite((double)term) || mag > 1e250L) {
      res.diverged = true;  // plateau stays in acc, pending discarded
      res.tail_bound = (double)prev_mag;
      return;
    }
    ++res.nodes_used;
    if (outward && mag >= prev_mag && mag > 0.0L) {
      pending += term;
      rising = true;
    } else {
      acc += pending + term;
      pending = 0.0L;
      rising = false;
    }
    if (mag <= rule.tail_tol * std::max(std::fabs((double)acc), 1e-300)) {
      if (++quiet >= rule.quiet_nodes) {
        acc += pending;
        res.converged = true;
        res.tail_bound = (double)mag;
        return;
      }
    } else {
      quiet = 0;
    }
    prev_mag = mag;
    node *= ratio;
  }
  res.diverged = rising;  // node cap with terms still not decaying
  res.tail_bound = (double)prev_mag;
}

}  // namespace detail

/// Jackson quadrature of f over [0, a] or [0, inf) under the given rule.
template <class F>
JacksonResult jackson_integral(F&& f, const JacksonRule& rule) {
  double qe = rule.effective_q();
  long double q = qe;
  long double a = rule.upper;
  if (!(a > 0.0L)) throw std::invalid_argument("jackson_integral: upper limit must be > 0");

  JacksonResult res;
  long double acc = 0.0L;

  const bool sym = rule.kind == QDifferenceKind::symmetric;
  const long double step = q * q;                       // node ratio inward
  const long double prefactor = sym ? (1.0L / q - q) : (1.0L - q * q);
  // first inward node and its lattice weight (weight tracks the node itself)
  long double node0 = sym ? a * q : a;

  // inward half: j = 0, 1, 2, ...  (nodes -> 0)
  detail::jackson_sum_direction(f, node0, prefactor, step, rule, /*outward=*/false, acc, res);
  if (res.diverged) return res;

  if (rule.infinite) {
    // outward half: j = -1, -2, ...  (nodes -> inf)
    JacksonResult outer;
    long double node_out = node0 / step;
    detail::jackson_sum_direction(f, node_out, prefactor, 1.0L / step, rule, /*outward=*/true,
                                  acc, outer);
    res.nodes_used += outer.nodes_used;
    res.diverged = outer.diverged;
    res.converged = res.converged && outer.converged;
    res.tail_bound = std::max(res.tail_bound, outer.tail_bound);
  }
  res.value = (double)acc;
  return res;
}

inline JacksonResult jackson_integral(const std::function<double(double)>& f,
                                      const JacksonRule& rule) {
  return jackson_integral<const std::function<double(double)>&>(f, rule);
}

/// Planar q-integration d^2_q z = (1/2) dtheta d_q|z|^2 of z-bar^n z^m W(|z|^2).
/// The angular factor is exact: 2 pi delta_{nm}; only the diagonal radial
/// moment is ever quadratured.
template <class W>
JacksonResult planar_moment(int n, int m, W&& weight, const JacksonRule& rule) {
  if (n != m) {
    JacksonResult zero;
    zero.converged = true;
    return zero;  // exact angular orthogonality
  }
  auto radial = [&](double x) { return std::pow(x, n) * weight(x); };
  JacksonResult r = jackson_integral(radial, rule);
  r.value *= M_PI;
  return r;
}

}  // namespace qosc
