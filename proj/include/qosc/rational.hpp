#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qosc {

/// Exact rational number on 64-bit words.
///
/// Kept always normalized: gcd(num, den) == 1, den > 0.  Intermediate
/// products run through 128-bit arithmetic; a result that does not fit back
/// into 64 bits throws std::overflow_error instead of wrapping.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  Rational& operator+=(const Rational& o) {
    __int128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
    __int128 d = i128(den_) * o.den_;
    assign(n, d);
    return *this;
  }
  Rational& operator-=(const Rational& o) { return *this += -o; }
  Rational& operator*=(const Rational& o) {
    assign(i128(num_) * o.num_, i128(den_) * o.den_);
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
    assign(i128(num_) * o.den_, i128(den_) * o.num_);
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }

  long double to_long_double() const {
    return static_cast<long double>(num_) / static_cast<long double>(den_);
  }
  double to_double() const { return static_cast<double>(to_long_double()); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  static __int128 i128(long long v) { return static_cast<__int128>(v); }

  void normalize() {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  void assign(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 an = n < 0 ? -n : n;
    // gcd on 128-bit values, Euclid
    __int128 a = an, b = d;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    constexpr __int128 lo = static_cast<__int128>(INT64_MIN);
    constexpr __int128 hi = static_cast<__int128>(INT64_MAX);
    if (n < lo || n > hi || d > hi)
      throw std::overflow_error("Rational: 64-bit overflow");
    num_ = static_cast<long long>(n);
    den_ = static_cast<long long>(d);
  }

  long long num_ = 0;
  long long den_ = 1;
};

/// Half-integers index everything in this library that the deformation
/// parameter exponentiates: k0 may be a half odd integer, so exponents of
/// q^(1/2) stay integral where exponents of q would not.
struct HalfInt {
  int twice = 0;  // the value is twice/2

  constexpr HalfInt() = default;
  constexpr HalfInt(int whole) : twice(2 * whole) {}
  static constexpr HalfInt from_twice(int t) {
    HalfInt h;
    h.twice = t;
    return h;
  }

  bool is_integer() const { return twice % 2 == 0; }
  int whole() const {
    if (!is_integer()) throw std::domain_error("HalfInt: not an integer");
    return twice / 2;
  }
  double value() const { return 0.5 * twice; }

  friend HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice + b.twice); }
  friend HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice - b.twice); }
  friend HalfInt operator-(HalfInt a) { return from_twice(-a.twice); }
  friend bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
  friend bool operator!=(HalfInt a, HalfInt b) { return a.twice != b.twice; }
  friend bool operator<(HalfInt a, HalfInt b) { return a.twice < b.twice; }
  friend bool operator<=(HalfInt a, HalfInt b) { return a.twice <= b.twice; }
  friend bool operator>(HalfInt a, HalfInt b) { return a.twice > b.twice; }
  friend bool operator>=(HalfInt a, HalfInt b) { return a.twice >= b.twice; }

  std::string str() const {
    if (is_integer()) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
  }
};

inline HalfInt half(int twice) { return HalfInt::from_twice(twice); }

}  // namespace qosc
