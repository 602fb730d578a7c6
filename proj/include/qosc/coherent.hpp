#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "qosc/qcalc.hpp"

namespace qosc {

enum class CoherentLabel { perelomov11, glauber_e, glauber_ee, perelomov2, finite_glauber2 };

/// Glauber expansions are commonly displayed with coefficients 1/[n]! on
/// unit kets, but the operator definitions e_q^(zbar a+)|0> give
/// 1/sqrt([n]!).  The operator form is primary; the displayed form stays
/// available so the resolution-of-unity verifier can adjudicate.
enum class GlauberConvention { operator_definition, printed };

/// The k0 = 1 row of the disk measure is quoted as |z|^2/pi, which
/// disagrees with the general formula evaluated at k0 = 1 (namely 1/pi).
/// Both are wired in; the moment verifier picks the winner.
enum class K0OneVariant { general_formula, printed_x_over_pi };

/// Radial weight for the infinite-plane E-type resolution: the quoted
/// E_q^(-x)/pi, or the Gamma_{q^2} kernel prod_{k>=1}(1-(1-q^2)q^2k x) on
/// [0, 1/(1-q^2)], which is the weight whose Jackson moments are exactly
/// {n}_q!.
enum class HKernel { printed_E, gamma_kernel };

enum class MeasureName { G, g, h, H };

struct MeasureSpec {
  MeasureName name = MeasureName::G;
  double q = 0.9;
  HalfInt k0 = HalfInt::from_twice(2);  // G
  int J = 1;                            // H
  K0OneVariant k0_one = K0OneVariant::general_formula;
  HKernel h_kernel = HKernel::printed_E;

  void validate() const {
    check_q(q);
    if (name == MeasureName::G) {
      // k0.twice holds 2k0; HalfInt makes 2k0 integral by construction.
      // k0 = 1/2 has no disk measure (only the Bargmann route applies),
      // so require 2k0 > 1; 2k0 = 2 is the anomalous k0 = 1 row.
      if (k0.twice <= 1)
        throw std::invalid_argument("measure G: requires 2k0 integer > 1");
    }
    if (name == MeasureName::H && J < 1)
      throw std::invalid_argument("measure H: requires integer J >= 1");
    if (name == MeasureName::h && q > 1.0)
      throw std::invalid_argument("measure h: base-q^2 world requires q < 1");
  }
};

/// Pointwise evaluation of the radial weight (the full measure,
/// including its 1/pi).
inline double measure_eval(const MeasureSpec& m, double x) {
  m.validate();
  const double pi = M_PI;
  switch (m.name) {
    case MeasureName::G: {
      if (x < 0.0 || x > 1.0) throw std::domain_error("measure G: x outside [0,1]");
      if (m.k0.twice == 2) {
        return m.k0_one == K0OneVariant::general_formula ? 1.0 / pi : x / pi;
      }
      int mm = m.k0.twice - 2;  // 2k0 - 2
      return q_bracket(m.k0.value() * 2.0 - 1.0, m.q) / pi *
             q_deformed_binom(x, mm, m.q, BinomSign::minus);
    }
    case MeasureName::g: {
      if (x < 0.0) throw std::domain_error("measure g: x must be >= 0");
      QSeriesOptions opt;
      opt.max_terms = 4000;
      QSeriesResult r = q_exp_e_series(complexd(-x, 0.0), m.q, opt);
      return r.value.real() / pi;
    }
    case MeasureName::h: {
      if (x < 0.0) throw std::domain_error("measure h: x must be >= 0");
      if (m.h_kernel == HKernel::printed_E) return q_exp_E_neg_product(x, m.q) / pi;
      double edge = 1.0 / (1.0 - m.q * m.q);
      if (x > edge * (1.0 + 1e-12))
        throw std::domain_error("measure h (gamma kernel): x beyond 1/(1-q^2)");
      return q_exp_dual_product(x, m.q, 1) / pi;
    }
    case MeasureName::H: {
      if (x < 0.0) throw std::domain_error("measure H: x must be >= 0");
      double b = m.q * m.q;  // the su_q(2) section carries bracket base q^2
      return q_bracket(m.J + 1.0, b) / pi *
             q_deformed_binom_reciprocal(x, m.J + 2, b, BinomSign::plus);
    }
  }
  throw std::logic_error("measure_eval: unreachable");
}

// ---------------------------------------------------------------------------
// coherent families
// ---------------------------------------------------------------------------

/// Everything resolve_unity needs: unit-basis coefficient magnitudes rho_n
/// (c_n(zbar) = rho_n zbar^n), the radial weight, its domain, and the
/// Jackson rule the pair is integrated with.
struct CoherentFamily {
  CoherentLabel label = CoherentLabel::glauber_e;
  double q = 0.9;
  HalfInt k0 = HalfInt::from_twice(2);
  int J = 1;
  GlauberConvention convention = GlauberConvention::operator_definition;
  K0OneVariant k0_one = K0OneVariant::general_formula;
  HKernel h_kernel = HKernel::printed_E;

  static CoherentFamily perelomov11(HalfInt k0, double q) {
    CoherentFamily f;
    f.label = CoherentLabel::perelomov11;
    f.k0 = k0;
    f.q = q;
    return f;
  }
  static CoherentFamily glauber_e(double q,
                                  GlauberConvention c = GlauberConvention::operator_definition) {
    CoherentFamily f;
    f.label = CoherentLabel::glauber_e;
    f.q = q;
    f.convention = c;
    return f;
  }
  static CoherentFamily glauber_ee(double q,
                                   GlauberConvention c = GlauberConvention::operator_definition,
                                   HKernel k = HKernel::printed_E) {
    CoherentFamily f;
    f.label = CoherentLabel::glauber_ee;
    f.q = q;
    f.convention = c;
    f.h_kernel = k;
    return f;
  }
  static CoherentFamily perelomov2(int J, double q) {
    CoherentFamily f;
    f.label = CoherentLabel::perelomov2;
    f.J = J;
    f.q = q;
    return f;
  }
  // The displayed expansion is the primary convention here (it is the form
  // that coincides with the su_q(2) Perelomov state); the operator
  // definition e_q^(zbar (a_q)_-)|J) stays available for comparison.
  static CoherentFamily finite_glauber2(int J, double q,
                                        GlauberConvention c = GlauberConvention::printed) {
    CoherentFamily f;
    f.label = CoherentLabel::finite_glauber2;
    f.J = J;
    f.q = q;
    f.convention = c;
    return f;
  }

  std::string name() const {
    switch (label) {
      case CoherentLabel::perelomov11: return "Perelomov11";
      case CoherentLabel::glauber_e: return "GlauberE";
      case CoherentLabel::glauber_ee: return "GlauberEE";
      case CoherentLabel::perelomov2: return "Perelomov2";
      case CoherentLabel::finite_glauber2: return "FiniteGlauber2";
    }
    return "?";
  }

  bool finite_dimensional() const {
    return label == CoherentLabel::perelomov2 || label == CoherentLabel::finite_glauber2;
  }

  /// Unit-basis coefficient magnitude rho_n (c_0 = 1 always).
  long double rho(int n) const {
    check_q(q);
    switch (label) {
      case CoherentLabel::perelomov11: {
        long double acc = 1.0L;
        double two_k0 = 2.0 * k0.value();
        for (int i = 1; i <= n; ++i)
          acc *= (long double)q_bracket(i + two_k0 - 1.0, q) / (long double)q_bracket(i, q);
        return std::sqrt(acc);
      }
      case CoherentLabel::glauber_e: {
        long double fac = q_factorial(n, q, QNumberFlavor::bracket);
        return convention == GlauberConvention::operator_definition ? 1.0L / std::sqrt(fac)
                                                                    : 1.0L / fac;
      }
      case CoherentLabel::glauber_ee: {
        long double fac = q_factorial(n, q, QNumberFlavor::brace);
        return convention == GlauberConvention::operator_definition ? 1.0L / std::sqrt(fac)
                                                                    : 1.0L / fac;
      }
      case CoherentLabel::perelomov2: {
        if (n > J) return 0.0L;
        return std::sqrt((long double)q_binomial(J, n, q * q));
      }
      case CoherentLabel::finite_glauber2: {
        if (n > J) return 0.0L;
        // Printed display coincides with the Perelomov su_q(2) state; the
        // operator definition e_q^(zbar (a_q)_-)|J) does not.
        if (convention == GlauberConvention::printed)
          return std::sqrt((long double)q_binomial(J, n, q * q));
        double b = q * q;
        long double acc = 1.0L;  // sqrt([J]!/[n]!) / [J-n]!
        for (int i = n + 1; i <= J; ++i) acc *= (long double)q_bracket(i, b);
        return std::sqrt(acc) / (long double)q_factorial(J - n, b, QNumberFlavor::bracket);
      }
    }
    throw std::logic_error("CoherentFamily::rho: unreachable");
  }

  /// Power of zbar carried by component n.  Everything is zbar^n except the
  /// operator-definition finite Glauber state, which builds downward from
  /// |J) and pairs component n with zbar^(J-n).
  int zbar_power(int n) const {
    if (label == CoherentLabel::finite_glauber2 &&
        convention == GlauberConvention::operator_definition)
      return J - n;
    return n;
  }

  /// Upper bound on x = |z|^2 for state convergence (componentwise the
  /// vector is always finite; beyond this radius the norm series diverges).
  double domain_radius_x() const {
    double qm = std::min(q, 1.0 / q);
    switch (label) {
      case CoherentLabel::perelomov11:
        return std::pow(qm, 2.0 * k0.value() - 1.0);
      case CoherentLabel::glauber_e:
        return std::numeric_limits<double>::infinity();
      case CoherentLabel::glauber_ee: {
        double r = 1.0 / (1.0 - qm * qm);
        return convention == GlauberConvention::operator_definition ? r : r * r;
      }
      default:
        return std::numeric_limits<double>::infinity();  // finite sums
    }
  }

  MeasureSpec measure() const {
    MeasureSpec m;
    m.q = q;
    switch (label) {
      case CoherentLabel::perelomov11:
        m.name = MeasureName::G;
        m.k0 = k0;
        m.k0_one = k0_one;
        break;
      case CoherentLabel::glauber_e:
        m.name = MeasureName::g;
        break;
      case CoherentLabel::glauber_ee:
        m.name = MeasureName::h;
        m.h_kernel = h_kernel;
        break;
      case CoherentLabel::perelomov2:
      case CoherentLabel::finite_glauber2:
        m.name = MeasureName::H;
        m.J = J;
        break;
    }
    return m;
  }

  /// The Jackson rule the family's resolution is integrated with.
  ///
  /// Node-set policy:
  ///  - disk measure G: symmetric rule on [0,1]; the node anchor follows the
  ///    parity of m = 2k0-2 (anchor 1 for even m, 1/q for odd m) so the
  ///    lattice is aligned with the zero set of (1-x)^m_q.  Each q-beta
  ///    moment is then exact.
  ///  - plane measure g: symmetric rule, bilateral lattice through q^(2j+1).
  ///  - plane measure h: base-q^2 (asymmetric) rule; the gamma kernel
  ///    variant integrates over [0, 1/(1-q^2)] where its moments are exact.
  ///  - sphere measure H: symmetric rule at the su_q(2) bracket base q^2.
  JacksonRule rule() const {
    switch (label) {
      case CoherentLabel::perelomov11: {
        int m = k0.twice - 2;
        double anchor = (m % 2 == 0) ? 1.0 : 1.0 / std::min(q, 1.0 / q);
        return JacksonRule::finite(QDifferenceKind::symmetric, q, anchor);
      }
      case CoherentLabel::glauber_e:
        return JacksonRule::semi_infinite(QDifferenceKind::symmetric, q, 1.0);
      case CoherentLabel::glauber_ee:
        if (h_kernel == HKernel::gamma_kernel)
          return JacksonRule::finite(QDifferenceKind::asymmetric, q, 1.0 / (1.0 - q * q));
        return JacksonRule::semi_infinite(QDifferenceKind::asymmetric, q, 1.0);
      case CoherentLabel::perelomov2:
      case CoherentLabel::finite_glauber2:
        return JacksonRule::semi_infinite(QDifferenceKind::symmetric, q * q, 1.0);
    }
    throw std::logic_error("CoherentFamily::rule: unreachable");
  }
};

/// Coherent vector in the unit-normalized basis: component n is
/// c_n(zbar) = rho_n zbar^n.  Throws outside the family's convergence disk.
inline std::vector<complexd> coherent_vector(const CoherentFamily& f, complexd z, int n_max) {
  double x = std::norm(z);
  if (!(x < f.domain_radius_x()))
    throw std::domain_error("coherent_vector: |z| outside the convergence domain");
  std::vector<complexd> v(static_cast<std::size_t>(n_max) + 1);
  complexd zb = std::conj(z);
  for (int n = 0; n <= n_max; ++n) {
    complexd p{1.0, 0.0};
    for (int i = 0; i < f.zbar_power(n); ++i) p *= zb;
    v[static_cast<std::size_t>(n)] = p * complexd((double)f.rho(n), 0.0);
  }
  return v;
}

/// Reproducing-kernel diagnostic sum_n c_n(zbar) conj(c_n(wbar)).
inline complexd overlap(const CoherentFamily& f, complexd z, complexd w, int n_max) {
  if (!(std::norm(z) < f.domain_radius_x()) || !(std::norm(w) < f.domain_radius_x()))
    throw std::domain_error("overlap: point outside the convergence domain");
  complexd zw = std::conj(z) * w;
  complexd acc{0.0, 0.0};
  for (int n = 0; n <= n_max; ++n) {
    long double r = f.rho(n);
    complexd p{1.0, 0.0};
    for (int i = 0; i < f.zbar_power(n); ++i) p *= zw;
    acc += p * complexd((double)(r * r), 0.0);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// resolution of unity
// ---------------------------------------------------------------------------

struct MomentEntry {
  int n;
  double value;       // M_n
  bool converged;
  bool diverged;
  double tail_bound;
};

struct UnityReport {
  std::string family;
  double q = 0.0;
  std::vector<MomentEntry> moments;
  double max_deviation = 0.0;  // max |M_n - 1| over reported n
  bool any_divergence = false;
  bool pass = false;
  double tolerance = 0.0;
  std::string rule_description;
};

/// Diagonal moments M_n = pi rho_n^2 * Jackson(x^n W(x)); off-diagonal
/// moments vanish exactly by angular orthogonality and are not quadratured.
inline UnityReport resolve_unity(const CoherentFamily& f, int n_upper, double tol = 1e-6) {
  MeasureSpec m = f.measure();
  m.validate();
  JacksonRule rule = f.rule();
  UnityReport rep;
  rep.family = f.name();
  rep.q = f.q;
  rep.tolerance = tol;
  rep.rule_description =
      std::string(rule.kind == QDifferenceKind::symmetric ? "symmetric" : "base-q^2") +
      (rule.infinite ? " bilateral" : " finite") + " lattice, rule q = " +
      std::to_string(rule.q) + ", anchor = " + std::to_string(rule.upper);

  int top = f.finite_dimensional() ? std::min(n_upper, f.J) : n_upper;
  for (int n = 0; n <= top; ++n) {
    int p = f.zbar_power(n);
    auto integrand = [&](double x) { return std::pow(x, p) * measure_eval(m, x); };
    JacksonResult r = jackson_integral(integrand, rule);
    long double rho = f.rho(n);
    MomentEntry e{n, M_PI * (double)(rho * rho) * r.value, r.converged, r.diverged,
                  r.tail_bound};
    rep.moments.push_back(e);
    rep.any_divergence = rep.any_divergence || r.diverged;
    rep.max_deviation = std::max(rep.max_deviation, std::fabs(e.value - 1.0));
  }
  rep.pass = !rep.any_divergence && rep.max_deviation < tol;
  return rep;
}

// ---------------------------------------------------------------------------
// the two convention adjudications
// ---------------------------------------------------------------------------

struct AdjudicationReport {
  // Glauber coefficient convention, judged on the e_q / measure-g pair.
  double glauber_operator_dev = 0.0;
  double glauber_printed_dev = 0.0;
  bool glauber_operator_diverged = false;
  bool glauber_printed_diverged = false;
  std::string glauber_verdict;

  // k0 = 1 disk measure row.
  double k0_one_general_dev = 0.0;
  double k0_one_printed_dev = 0.0;
  std::string k0_one_verdict;
};

inline AdjudicationReport adjudicate_conventions(double q, int n_upper, double tol = 1e-6) {
  AdjudicationReport rep;

  UnityReport op = resolve_unity(
      CoherentFamily::glauber_e(q, GlauberConvention::operator_definition), n_upper, tol);
  UnityReport pr =
      resolve_unity(CoherentFamily::glauber_e(q, GlauberConvention::printed), n_upper, tol);
  rep.glauber_operator_dev = op.max_deviation;
  rep.glauber_printed_dev = pr.max_deviation;
  rep.glauber_operator_diverged = op.any_divergence;
  rep.glauber_printed_diverged = pr.any_divergence;
  if (op.pass && !pr.pass)
    rep.glauber_verdict = "operator definition canonical";
  else if (pr.pass && !op.pass)
    rep.glauber_verdict = "displayed expansion canonical";
  else if (op.pass && pr.pass)
    rep.glauber_verdict = "both conventions pass";
  else
    rep.glauber_verdict =
        "neither convention resolves unity with the plane measure as stated "
        "(operator definition kept as primary)";

  CoherentFamily gen = CoherentFamily::perelomov11(HalfInt::from_twice(2), q);
  gen.k0_one = K0OneVariant::general_formula;
  CoherentFamily prn = gen;
  prn.k0_one = K0OneVariant::printed_x_over_pi;
  UnityReport g = resolve_unity(gen, n_upper, tol);
  UnityReport p = resolve_unity(prn, n_upper, tol);
  rep.k0_one_general_dev = g.max_deviation;
  rep.k0_one_printed_dev = p.max_deviation;
  if (g.pass && !p.pass)
    rep.k0_one_verdict = "general formula [1]_q/pi canonical; |z|^2/pi row rejected";
  else if (p.pass && !g.pass)
    rep.k0_one_verdict = "|z|^2/pi row canonical";
  else
    rep.k0_one_verdict = "inconclusive";
  return rep;
}

}  // namespace qosc
