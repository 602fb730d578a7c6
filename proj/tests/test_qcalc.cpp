#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qosc/qcalc.hpp"
#include "oracles.hpp"

using namespace qosc;

TEST_CASE("q_derivative on monomials: [n] and {n} rules") {
  double q = 0.8;
  auto sq = [](complexd z) { return z * z; };
  auto cube = [](complexd z) { return z * z * z; };
  complexd z{0.7, 0.3};
  // symmetric: d/d_q z^2 = [2] z
  CHECK(std::abs(q_derivative(sq, z, QDifferenceKind::symmetric, q) -
                 q_bracket(2, q) * z) < 1e-13);
  // asymmetric: D/D_q z^3 = {3} z^2 = (q^4 + q^2 + 1) z^2
  complexd expect = (std::pow(q, 4) + q * q + 1.0) * z * z;
  CHECK(std::abs(q_derivative(cube, z, QDifferenceKind::asymmetric, q) - expect) < 1e-13);
  CHECK_THROWS_AS(
      q_derivative([](complexd w) { return std::exp(w); }, complexd(0, 0),
                   QDifferenceKind::symmetric, q),
      std::domain_error);
}

TEST_CASE("q_derivative of e_q^(lambda z) = lambda e_q^(lambda z)") {
  double q = 0.9, lambda = 0.6;
  auto f = [&](complexd z) { return q_exp_e(lambda * z, q); };
  complexd z{0.5, 0.2};
  complexd lhs = q_derivative(f, z, QDifferenceKind::symmetric, q);
  complexd rhs = lambda * q_exp_e(lambda * z, q);
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("fundamental theorem on polynomial coefficients, both rules") {
  double q = 0.75;
  for (auto kind : {QDifferenceKind::symmetric, QDifferenceKind::asymmetric}) {
    for (int n = 0; n <= 12; ++n) {
      PolyCoeffs mono(static_cast<std::size_t>(n) + 1, complexd{0, 0});
      mono[static_cast<std::size_t>(n)] = 1.0;
      PolyCoeffs back = q_derivative_poly(jackson_indefinite_poly(mono, kind, q), kind, q);
      REQUIRE(back.size() == mono.size());
      for (std::size_t i = 0; i < back.size(); ++i)
        CHECK(std::abs(back[i] - mono[i]) < 1e-15);
    }
  }
}

TEST_CASE("jackson integral of 1 on [0,1] telescopes to 1") {
  for (double q : {0.3, 0.5, 0.9, 1.3}) {
    auto r = jackson_integral([](double) { return 1.0; },
                              JacksonRule::finite(QDifferenceKind::symmetric, q, 1.0));
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("jackson integral of x^n on [0,1]: 1/[n+1] (sym) and 1/{n+1} (asym)") {
  for (double q : {0.4, 0.9}) {
    for (int n = 0; n <= 12; ++n) {
      auto f = [n](double x) { return std::pow(x, n); };
      auto sym = jackson_integral(f, JacksonRule::finite(QDifferenceKind::symmetric, q, 1.0));
      CHECK(sym.value == doctest::Approx(1.0 / q_bracket(n + 1, q)).epsilon(1e-13));
      auto asym = jackson_integral(f, JacksonRule::finite(QDifferenceKind::asymmetric, q, 1.0));
      CHECK(asym.value == doctest::Approx(1.0 / q_brace(n + 1, q)).epsilon(1e-13));
    }
  }
}

TEST_CASE("q > 1 canonicalizes for the symmetric rule, rejects for asymmetric") {
  auto f = [](double x) { return x * x; };
  auto a = jackson_integral(f, JacksonRule::finite(QDifferenceKind::symmetric, 2.0, 1.0));
  auto b = jackson_integral(f, JacksonRule::finite(QDifferenceKind::symmetric, 0.5, 1.0));
  CHECK(a.value == doctest::Approx(b.value));
  CHECK_THROWS_AS(
      jackson_integral(f, JacksonRule::finite(QDifferenceKind::asymmetric, 2.0, 1.0)),
      std::invalid_argument);
}

TEST_CASE("inverse pair: integral of the q-derivative recovers f(a) - f(0)") {
  oracles::Rng rng(11);
  double q = 0.85;
  for (int trial = 0; trial < 20; ++trial) {
    PolyCoeffs c(static_cast<std::size_t>(rng.uniform_int(1, 12)) + 1);
    for (auto& v : c) v = complexd(rng.uniform(-2.0, 2.0), 0.0);
    double a = rng.uniform(0.2, 1.8);
    for (auto kind : {QDifferenceKind::symmetric, QDifferenceKind::asymmetric}) {
      PolyCoeffs der = q_derivative_poly(c, kind, q);
      auto fd = [&](double x) { return poly_eval(der, complexd(x, 0.0)).real(); };
      auto r = jackson_integral(fd, JacksonRule::finite(kind, q, a));
      double expect = poly_eval(c, complexd(a, 0.0)).real() -
                      poly_eval(c, complexd(0.0, 0.0)).real();
      CHECK(r.value == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("base-q^2 moments of E_q^(-x): the exact telescoping value") {
  // The polynomial-times-E antiderivative closes exactly under the
  // asymmetric derivative, giving int x^n E_q^(-x) D_q x = q^(-n(n+1)) {n}!,
  // independent of the lattice anchor.  This is the identity that decides
  // what the plane measure h can and cannot do.
  for (double q : {0.5, 0.9}) {
    for (int n = 0; n <= 8; ++n) {
      auto f = [&](double x) { return std::pow(x, n) * q_exp_E_neg_product(x, q); };
      for (double anchor : {1.0, 1.7}) {
        auto rule = JacksonRule::semi_infinite(QDifferenceKind::asymmetric, q, anchor);
        auto r = jackson_integral(f, rule);
        double expect = std::pow(q, -n * (n + 1.0)) *
                        (double)oracles::brace_factorial(n, (long double)q);
        CHECK(!r.diverged);
        CHECK(r.value == doctest::Approx(expect).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("Gamma_{q^2} kernel: moments exactly {n}! on [0, 1/(1-q^2)]") {
  for (double q : {0.5, 0.9}) {
    double edge = 1.0 / (1.0 - q * q);
    for (int n = 0; n <= 10; ++n) {
      auto f = [&](double x) { return std::pow(x, n) * q_exp_dual_product(x, q, 1); };
      auto r = jackson_integral(f, JacksonRule::finite(QDifferenceKind::asymmetric, q, edge));
      CHECK(r.value == doctest::Approx((double)oracles::brace_factorial(n, (long double)q))
                           .epsilon(1e-12));
    }
  }
}

TEST_CASE("symmetric q-gamma sum against e_q^(-x) does not converge") {
  // e_q (symmetric flavor) is entire with theta-type growth on the negative
  // axis, so the bilateral lattice sum has growing outward terms; the
  // quadrature must say so rather than return a silently wrong number.
  double q = 0.5;
  auto f = [&](double x) {
    QSeriesOptions o;
    o.max_terms = 2000;
    return q_exp_e_series(complexd(-x, 0.0), q, o).value.real();
  };
  auto r = jackson_integral(f, JacksonRule::semi_infinite(QDifferenceKind::symmetric, q, 1.0));
  CHECK(r.diverged);
  CHECK_THROWS_AS(r.value_or_throw(), std::domain_error);
}

TEST_CASE("jackson integrals of polynomials approach Riemann values as q -> 1") {
  auto f = [](double x) { return 3.0 * x * x - x + 0.5; };  // integral on [0,1] = 1.0
  double prev_err = 1.0;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    auto r = jackson_integral(f, JacksonRule::finite(QDifferenceKind::symmetric, 1.0 - eps, 1.0));
    double err = std::fabs(r.value - 1.0);
    CHECK(err < prev_err);
    prev_err = err;
  }
  CHECK(prev_err < 1e-3);
}

TEST_CASE("planar moments: exact angular orthogonality, diagonal radial collapse") {
  double q = 0.9;
  auto w = [](double) { return 1.0; };
  auto off = planar_moment(0, 1, w, JacksonRule::finite(QDifferenceKind::symmetric, q, 1.0));
  CHECK(off.value == 0.0);
  CHECK(off.converged);
  auto diag = planar_moment(0, 0, w, JacksonRule::finite(QDifferenceKind::symmetric, q, 1.0));
  CHECK(diag.value == doctest::Approx(M_PI).epsilon(1e-13));
  // n = 1 with the Gamma_{q^2} kernel: pi {1}! = pi
  auto w2 = [&](double x) { return q_exp_dual_product(x, q, 1); };
  auto m1 = planar_moment(1, 1, w2,
                          JacksonRule::finite(QDifferenceKind::asymmetric, q,
                                              1.0 / (1.0 - q * q)));
  CHECK(m1.value == doctest::Approx(M_PI).epsilon(1e-12));
}
