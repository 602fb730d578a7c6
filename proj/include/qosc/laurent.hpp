#pragma once

#include <cmath>
#include <map>
#include <sstream>
#include <string>

#include "qosc/rational.hpp"

namespace qosc {

/// Exact Laurent polynomial in s = q^(1/2) with rational coefficients.
///
/// Exponents are stored in units of q^(1/2): the monomial q^(e/2) sits at
/// key e.  Half-odd-integer powers of q (q^(k0 - 1/2) and friends) are then
/// ordinary integer keys.  The zero polynomial is the empty map; no zero
/// coefficient is ever stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(const Rational& c) {
    if (!c.is_zero()) coeffs_[0] = c;
  }

  /// c * q^(h), h a half-integer: key = 2h.
  static LaurentPoly monomial(const Rational& c, HalfInt h) {
    LaurentPoly p;
    if (!c.is_zero()) p.coeffs_[h.twice] = c;
    return p;
  }
  static LaurentPoly one() { return LaurentPoly(Rational(1)); }
  static LaurentPoly q_power(HalfInt h) { return monomial(Rational(1), h); }

  bool is_zero() const { return coeffs_.empty(); }
  std::size_t term_count() const { return coeffs_.size(); }

  /// Coefficient of q^(e/2).
  Rational coeff(int half_exponent_units) const {
    auto it = coeffs_.find(half_exponent_units);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  const std::map<int, Rational>& terms() const { return coeffs_; }

  LaurentPoly operator-() const {
    LaurentPoly p;
    for (const auto& [e, c] : coeffs_) p.coeffs_[e] = -c;
    return p;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.coeffs_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.coeffs_) add_term(e, -c);
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p;
    for (const auto& [ea, ca] : a.coeffs_)
      for (const auto& [eb, cb] : b.coeffs_) p.add_term(ea + eb, ca * cb);
    return p;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly scaled(const Rational& c) const {
    LaurentPoly p;
    if (c.is_zero()) return p;
    for (const auto& [e, s] : coeffs_) p.coeffs_[e] = s * c;
    return p;
  }

  /// q -> 1/q, i.e. exponent negation.
  LaurentPoly inverted_q() const {
    LaurentPoly p;
    for (const auto& [e, c] : coeffs_) p.coeffs_[-e] = c;
    return p;
  }

  bool palindromic_under_q_inversion() const { return *this == inverted_q(); }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  long double eval(long double q) const {
    long double s = std::sqrt(q);
    long double acc = 0;
    for (const auto& [e, c] : coeffs_) acc += c.to_long_double() * std::pow(s, (long double)e);
    return acc;
  }
  double eval(double q) const { return static_cast<double>(eval((long double)q)); }

  /// Canonical string, exponents descending: "c*q^{e/2} + ...".
  std::string str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      Rational c = it->second;
      if (!first) {
        os << (c < Rational(0) ? " - " : " + ");
        if (c < Rational(0)) c = -c;
      }
      int e = it->first;
      if (e == 0) {
        os << c.str();
      } else {
        if (!c.is_one()) os << c.str() << "*";
        os << "q^";
        if (e % 2 == 0)
          os << (e / 2);
        else
          os << "{" << e << "/2}";
      }
      first = false;
    }
    return os.str();
  }

 private:
  void add_term(int e, const Rational& c) {
    auto it = coeffs_.find(e);
    if (it == coeffs_.end()) {
      if (!c.is_zero()) coeffs_[e] = c;
      return;
    }
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }

  std::map<int, Rational> coeffs_;
};

/// Exact quotient of Laurent polynomials.
///
/// [x]_q for half-odd-integer x is not itself a Laurent polynomial in
/// q^(1/2) (the defining ratio does not divide), so exact identity checking
/// works in this fraction field instead: equality is cross-multiplication,
/// which never needs polynomial gcd or division.
class LaurentFrac {
 public:
  LaurentFrac() : num_(), den_(LaurentPoly::one()) {}
  LaurentFrac(const LaurentPoly& p) : num_(p), den_(LaurentPoly::one()) {}
  LaurentFrac(const Rational& r) : num_(LaurentPoly(r)), den_(LaurentPoly::one()) {}
  LaurentFrac(LaurentPoly n, LaurentPoly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw std::domain_error("LaurentFrac: zero denominator");
  }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  LaurentFrac operator-() const { return LaurentFrac(-num_, den_); }

  friend LaurentFrac operator+(const LaurentFrac& a, const LaurentFrac& b) {
    return LaurentFrac(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend LaurentFrac operator-(const LaurentFrac& a, const LaurentFrac& b) {
    return LaurentFrac(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend LaurentFrac operator*(const LaurentFrac& a, const LaurentFrac& b) {
    return LaurentFrac(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend LaurentFrac operator/(const LaurentFrac& a, const LaurentFrac& b) {
    if (b.num_.is_zero()) throw std::domain_error("LaurentFrac: division by zero");
    return LaurentFrac(a.num_ * b.den_, a.den_ * b.num_);
  }

  /// Exact equality via cross-multiplication.
  friend bool operator==(const LaurentFrac& a, const LaurentFrac& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  friend bool operator!=(const LaurentFrac& a, const LaurentFrac& b) { return !(a == b); }

  /// True iff the fraction reduces to the given polynomial.
  bool equals_poly(const LaurentPoly& p) const { return num_ == p * den_; }

  long double eval(long double q) const {
    long double d = den_.eval(q);
    if (d == 0.0L) throw std::domain_error("LaurentFrac: denominator vanishes at q");
    return num_.eval(q) / d;
  }

  std::string str() const {
    if (den_ == LaurentPoly::one()) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
  }

 private:
  LaurentPoly num_;
  LaurentPoly den_;
};

}  // namespace qosc
