#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "qosc/fock.hpp"

namespace qosc {

enum class OscillatorFlavor { biedenharn, macfarlane, anyon, anyon_B };

/// A deformed annihilation/creation pair in the raw basis.  For flavors
/// B, M, A the pair is adjoint-paired in the HP Hilbert space (<n|n> = n!).
struct OscillatorPair {
  FockOperator minus, plus;
  OscillatorFlavor flavor = OscillatorFlavor::biedenharn;
  double q = 0.0;
  HalfInt k0{};
};

inline NormTable hp_norms(int n_max) {
  std::vector<long double> v(static_cast<std::size_t>(n_max) + 1);
  v[0] = 1.0L;
  for (int n = 1; n <= n_max; ++n) v[static_cast<std::size_t>(n)] = v[n - 1] * n;
  return NormTable(std::move(v));
}

/// Biedenharn pair (a_q)_- = a_- sqrt([N]_q/N), (a_q)_+ = sqrt([N]_q/N) a_+.
/// Raw action (a_q)_-|n> = sqrt(n [n]_q)|n-1>; defining relation
/// (a_q)_- (a_q)_+ - q (a_q)_+ (a_q)_- = q^-N on interior rows.
inline OscillatorPair biedenharn(int n_max, double q) {
  if (n_max < 2) throw std::invalid_argument("biedenharn: n_max must be >= 2");
  check_q(q);
  OscillatorPair p;
  p.flavor = OscillatorFlavor::biedenharn;
  p.q = q;
  p.minus = FockOperator::lowering(
      n_max, [q](int n) { return complexd(std::sqrt(n * q_bracket(n, q)), 0.0); });
  p.plus = FockOperator::raising(
      n_max, [q](int n) { return complexd(std::sqrt(q_bracket(n + 1, q) / (n + 1)), 0.0); });
  return p;
}

/// Macfarlane pair (b_q)_- = (a_q)_- q^((N-1)/2) = a_- sqrt({N}_q/N);
/// relation b_- b_+ - q^2 b_+ b_- = 1.
inline OscillatorPair macfarlane(int n_max, double q) {
  if (n_max < 2) throw std::invalid_argument("macfarlane: n_max must be >= 2");
  check_q(q);
  OscillatorPair p;
  p.flavor = OscillatorFlavor::macfarlane;
  p.q = q;
  p.minus = FockOperator::lowering(
      n_max, [q](int n) { return complexd(std::sqrt(n * q_brace(n, q)), 0.0); });
  p.plus = FockOperator::raising(
      n_max, [q](int n) { return complexd(std::sqrt(q_brace(n + 1, q) / (n + 1)), 0.0); });
  return p;
}

/// Anyonic pair (A_q)_- = a_- sqrt(([N+k0-1/2]_q - [k0-1/2]_q)/N).
/// k0 = 1/2 collapses it to the Biedenharn pair.
inline OscillatorPair anyon_pair(int n_max, double q, HalfInt k0) {
  if (n_max < 2) throw std::invalid_argument("anyon_pair: n_max must be >= 2");
  if (k0.twice < 1) throw std::invalid_argument("anyon_pair: require k0 >= 1/2");
  check_q(q);
  const double shift = k0.value() - 0.5;
  const double base = (shift == 0.0) ? 0.0 : q_bracket(shift, q);
  auto radicand = [q, shift, base](int n) { return q_bracket(n + shift, q) - base; };
  for (int n = 1; n <= n_max; ++n)
    if (!(radicand(n) >= 0.0))
      throw std::invalid_argument("anyon_pair: negative radicand at n = " + std::to_string(n));
  OscillatorPair p;
  p.flavor = OscillatorFlavor::anyon;
  p.q = q;
  p.k0 = k0;
  p.minus = FockOperator::lowering(
      n_max, [&](int n) { return complexd(std::sqrt(n * radicand(n)), 0.0); });
  p.plus = FockOperator::raising(
      n_max, [&](int n) { return complexd(std::sqrt(radicand(n + 1) / (n + 1)), 0.0); });
  return p;
}

/// Anomalous vacuum eigenvalue of B_+ B_-: {k0 - 1/2}_q.
inline double anyon_B_vacuum_eigenvalue(double q, HalfInt k0) {
  double shift = k0.value() - 0.5;
  return shift == 0.0 ? 0.0 : q_brace(shift, q);
}

/// The B_q quadratics of the anyonic realization.  The square roots
/// (B_q)_± themselves are never formed: no branch choice is canonical and
/// the vacuum is not annihilated, so only the diagonal quadratics exist.
struct AnyonBQuadratics {
  FockOperator plus_minus;   // B_+ B_-
  FockOperator minus_plus;   // B_- B_+
};

/// B_- B_+ = q^(N+k0-1/2) [N+k0+1/2]_q,  B_+ B_- = q^(N+k0-3/2) [N+k0-1/2]_q.
/// They satisfy the Macfarlane-form relation B_-B_+ - q^2 B_+B_- = 1 with
/// vacuum anomaly B_+B_-|0> = {k0-1/2}_q |0>.
inline AnyonBQuadratics anyon_B_quadratics(int n_max, double q, HalfInt k0) {
  if (k0.twice < 1) throw std::invalid_argument("anyon_B_quadratics: require k0 >= 1/2");
  check_q(q);
  const double kv = k0.value();
  AnyonBQuadratics b;
  b.minus_plus = FockOperator::diagonal(n_max, [&](int n) {
    return complexd(std::pow(q, n + kv - 0.5) * q_bracket(n + kv + 0.5, q), 0.0);
  });
  b.plus_minus = FockOperator::diagonal(n_max, [&](int n) {
    return complexd(std::pow(q, n + kv - 1.5) * q_bracket(n + kv - 0.5, q), 0.0);
  });
  return b;
}

}  // namespace qosc
