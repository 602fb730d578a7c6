#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qosc/fock.hpp"
#include "oracles.hpp"

using namespace qosc;

TEST_CASE("raw ladder: actions and the truncated commutator") {
  RawLadder l = raw_ladder(6);
  // a_-|3> = 3|2>, a_+|3> = |4>, N|3> = 3|3>
  std::vector<complexd> e3(7, {0, 0});
  e3[3] = 1.0;
  auto lowered = l.a_minus.apply(e3);
  CHECK(lowered[2] == complexd(3.0, 0.0));
  auto raised = l.a_plus.apply(e3);
  CHECK(raised[4] == complexd(1.0, 0.0));
  auto counted = l.number.apply(e3);
  CHECK(counted[3] == complexd(3.0, 0.0));

  // a_+ a_-|n> = n|n> everywhere
  FockOperator napm = l.a_plus * l.a_minus;
  for (int n = 0; n <= 6; ++n) CHECK(napm(n, n) == complexd(n, 0.0));

  // [a_-, a_+] = I on all rows except the last, any n_max >= 2
  for (int n_max : {2, 3, 5, 9}) {
    RawLadder k = raw_ladder(n_max);
    FockOperator c = commutator(k.a_minus, k.a_plus) - FockOperator::identity(n_max);
    CHECK(c.interior_max_abs(1) == 0.0);
    // the top row is the truncation artifact
    CHECK(std::abs(commutator(k.a_minus, k.a_plus)(n_max, n_max) - complexd(1, 0)) > 0.5);
  }
}

TEST_CASE("apply_diag: identity, zero policy, and the [N]_q/N prefactor") {
  int n_max = 8;
  double q = 0.9;
  FockOperator n_op = apply_diag(n_max, [](int n) { return (double)n; });
  for (int n = 0; n <= n_max; ++n) CHECK(n_op(n, n) == complexd(n, 0.0));

  // K0 = N + k0
  FockOperator k0_op = apply_diag(n_max, [](int n) { return n + 1.5; });
  CHECK(k0_op(2, 2).real() == doctest::Approx(3.5));

  // f(n) = [n]_q/n has a removable 0/0 at n = 0; with the zero policy the
  // product a_- sqrt([N]/N) matches direct construction of the deformed pair
  RawLadder l = raw_ladder(n_max);
  FockOperator prefactor = apply_diag(
      n_max, [q](int n) { return std::sqrt(q_bracket(n, q) / n); }, ZeroPolicy::zero);
  FockOperator aq_minus = l.a_minus * prefactor;
  for (int n = 1; n <= n_max; ++n)
    CHECK(aq_minus(n - 1, n).real() ==
          doctest::Approx(std::sqrt(n * q_bracket(n, q))).epsilon(1e-14));

  // the continuity limit of [x]_q/x at 0 is 2 ln q / (q - 1/q)
  double lim = 2.0 * std::log(q) / (q - 1.0 / q);
  FockOperator with_limit = apply_diag(
      n_max, [q](int n) { return q_bracket(n, q) / n; }, ZeroPolicy::limit, lim);
  CHECK(with_limit(0, 0).real() == doctest::Approx(lim));
  CHECK(lim == doctest::Approx(1.0).epsilon(1e-2));  // near 1 for q near 1

  CHECK_THROWS_AS(apply_diag(n_max, [](int n) { return 1.0 / n; }, ZeroPolicy::error),
                  std::domain_error);
}

TEST_CASE("adjoint_wrt: unit norms reduce to the conjugate transpose") {
  int n_max = 5;
  NormTable ones = NormTable::ones(n_max);
  FockOperator m(n_max);
  m(0, 1) = complexd(1.0, 2.0);
  m(3, 2) = complexd(-0.5, 0.25);
  FockOperator a = adjoint_wrt(m, ones);
  CHECK(a(1, 0) == std::conj(m(0, 1)));
  CHECK(a(2, 3) == std::conj(m(3, 2)));
  FockOperator id = FockOperator::identity(n_max);
  CHECK((adjoint_wrt(id, ones) - id).max_abs() == 0.0);
}

TEST_CASE("adjoint_wrt is an involution and reverses products") {
  int n_max = 10;
  oracles::Rng rng(123);
  std::vector<long double> norms(n_max + 1);
  norms[0] = 1.0L;
  for (int n = 1; n <= n_max; ++n) norms[n] = norms[n - 1] * rng.uniform(0.2, 3.0);
  NormTable table(norms);

  auto random_band = [&](int width) {
    FockOperator m(n_max);
    for (int i = 0; i <= n_max; ++i)
      for (int j = std::max(0, i - width); j <= std::min(n_max, i + width); ++j)
        m(i, j) = complexd(rng.uniform(-1, 1), rng.uniform(-1, 1));
    return m;
  };
  for (int trial = 0; trial < 10; ++trial) {
    FockOperator a = random_band(2), b = random_band(3);
    CHECK((adjoint_wrt(adjoint_wrt(a, table), table) - a).max_abs() < 1e-13);
    FockOperator lhs = adjoint_wrt(a * b, table);
    FockOperator rhs = adjoint_wrt(b, table) * adjoint_wrt(a, table);
    CHECK((lhs - rhs).max_abs() < 1e-12);
  }
}

TEST_CASE("to_unit_basis: diagonal invariance and commuting with adjoint") {
  int n_max = 20;
  double q = 0.9;
  std::vector<long double> norms(n_max + 1);
  norms[0] = 1.0L;
  for (int n = 1; n <= n_max; ++n) norms[n] = norms[n - 1] * (0.3L + 0.1L * n);
  NormTable table(norms);

  FockOperator d = apply_diag(n_max, [](int n) { return 1.7 * n - 3.0; });
  CHECK((to_unit_basis(d, table) - d).max_abs() < 1e-14);

  oracles::Rng rng(5);
  FockOperator m(n_max);
  for (int n = 1; n <= n_max; ++n) m(n - 1, n) = complexd(rng.uniform(0.1, 2.0), 0.0);
  // unit-basis tag
  CHECK(to_unit_basis(m, table).basis() == FockBasis::unit_normalized);
  // adjoint-then-convert == convert-then-conjugate-transpose
  FockOperator lhs = to_unit_basis(adjoint_wrt(m, table), table);
  FockOperator rhs = adjoint_wrt(to_unit_basis(m, table), NormTable::ones(n_max));
  CHECK((lhs - rhs).max_abs() < 1e-13);
  (void)q;
}

TEST_CASE("similarity preserves spectra of diagonal operators and residuals") {
  int n_max = 12;
  std::vector<long double> norms(n_max + 1);
  norms[0] = 1.0L;
  for (int n = 1; n <= n_max; ++n) norms[n] = norms[n - 1] * 0.5L;
  NormTable table(norms);
  FockOperator d = apply_diag(n_max, [](int n) { return n * n - 2.0; });
  FockOperator u = to_unit_basis(d, table);
  for (int n = 0; n <= n_max; ++n) CHECK(u(n, n) == d(n, n));
  // commutation residuals transform by similarity: zero stays zero
  RawLadder l = raw_ladder(n_max);
  FockOperator c = commutator(l.a_minus, l.a_plus);
  FockOperator cu = commutator(to_unit_basis(l.a_minus, table), to_unit_basis(l.a_plus, table));
  CHECK((to_unit_basis(c, table) - cu).max_abs() < 1e-12);
}

TEST_CASE("norm table validation") {
  CHECK_THROWS_AS(NormTable({2.0L, 1.0L}), std::invalid_argument);  // entry(0) != 1
  CHECK_THROWS_AS(NormTable({1.0L, -1.0L}), std::invalid_argument);
  CHECK_THROWS_AS(NormTable(std::vector<long double>{}), std::invalid_argument);
}

TEST_CASE("serialization carries the header and dense payload") {
  FockOperator m(2);
  m(0, 1) = complexd(1.5, -0.5);
  SerializedOperator s = serialize(m);
  CHECK(s.n_max == 2);
  CHECK(s.basis == "raw");
  CHECK(s.re.size() == 9);
  CHECK(s.re[1] == 1.5);
  CHECK(s.im[1] == -0.5);
}
