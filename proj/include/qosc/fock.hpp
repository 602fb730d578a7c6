#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qosc/qnumbers.hpp"

namespace qosc {

enum class FockBasis { raw, unit_normalized };

/// n |-> <n|n> for a raw-basis realization.  Entries held in long double:
/// strongly deformed norm tables underflow double well before n_max = 30.
class NormTable {
 public:
  NormTable() = default;
  explicit NormTable(std::vector<long double> v) : entries_(std::move(v)) {
    if (entries_.empty() || entries_[0] != 1.0L)
      throw std::invalid_argument("NormTable: entry(0) must equal 1");
    for (long double e : entries_)
      if (!(e > 0.0L) || std::isinf(e))
        throw std::invalid_argument("NormTable: entries must be positive and finite");
  }

  static NormTable ones(int n_max) {
    return NormTable(std::vector<long double>(static_cast<std::size_t>(n_max) + 1, 1.0L));
  }

  int n_max() const { return static_cast<int>(entries_.size()) - 1; }
  long double operator()(int n) const { return entries_.at(static_cast<std::size_t>(n)); }

 private:
  std::vector<long double> entries_;
};

/// Dense operator on the (n_max+1)-dimensional truncated Fock space.
/// Column n holds the image of |n>: A|n> = sum_m A(m,n) |m>.
class FockOperator {
 public:
  FockOperator() = default;
  FockOperator(int n_max, FockBasis basis = FockBasis::raw)
      : n_max_(n_max), basis_(basis),
        a_(static_cast<std::size_t>(n_max + 1) * static_cast<std::size_t>(n_max + 1)) {
    if (n_max < 1) throw std::invalid_argument("FockOperator: n_max must be >= 1");
  }

  int n_max() const { return n_max_; }
  int dim() const { return n_max_ + 1; }
  FockBasis basis() const { return basis_; }
  void set_basis(FockBasis b) { basis_ = b; }

  complexd& operator()(int row, int col) {
    return a_[static_cast<std::size_t>(row) * dim() + col];
  }
  complexd operator()(int row, int col) const {
    return a_[static_cast<std::size_t>(row) * dim() + col];
  }

  static FockOperator identity(int n_max, FockBasis basis = FockBasis::raw) {
    FockOperator m(n_max, basis);
    for (int i = 0; i <= n_max; ++i) m(i, i) = 1.0;
    return m;
  }

  /// diag(f(0), ..., f(n_max)).
  static FockOperator diagonal(int n_max, const std::function<complexd(int)>& f,
                               FockBasis basis = FockBasis::raw) {
    FockOperator m(n_max, basis);
    for (int i = 0; i <= n_max; ++i) m(i, i) = f(i);
    return m;
  }

  /// Single lower band: op|n> = entry(n) |n-1>.
  static FockOperator lowering(int n_max, const std::function<complexd(int)>& entry,
                               FockBasis basis = FockBasis::raw) {
    FockOperator m(n_max, basis);
    for (int n = 1; n <= n_max; ++n) m(n - 1, n) = entry(n);
    return m;
  }

  /// Single upper band: op|n> = entry(n) |n+1>.
  static FockOperator raising(int n_max, const std::function<complexd(int)>& entry,
                              FockBasis basis = FockBasis::raw) {
    FockOperator m(n_max, basis);
    for (int n = 0; n < n_max; ++n) m(n + 1, n) = entry(n);
    return m;
  }

  FockOperator operator-() const {
    FockOperator m = *this;
    for (auto& v : m.a_) v = -v;
    return m;
  }
  FockOperator& operator+=(const FockOperator& o) {
    check_same(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  FockOperator& operator-=(const FockOperator& o) {
    check_same(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  FockOperator& operator*=(complexd s) {
    for (auto& v : a_) v *= s;
    return *this;
  }

  friend FockOperator operator+(FockOperator a, const FockOperator& b) { return a += b; }
  friend FockOperator operator-(FockOperator a, const FockOperator& b) { return a -= b; }
  friend FockOperator operator*(complexd s, FockOperator a) { return a *= s; }

  friend FockOperator operator*(const FockOperator& a, const FockOperator& b) {
    a.check_same(b);
    FockOperator m(a.n_max_, a.basis_);
    int d = a.dim();
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) {
        complexd aik = a(i, k);
        if (aik == complexd{0.0, 0.0}) continue;
        for (int j = 0; j < d; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  std::vector<complexd> apply(const std::vector<complexd>& v) const {
    if (static_cast<int>(v.size()) != dim())
      throw std::invalid_argument("FockOperator::apply: dimension mismatch");
    std::vector<complexd> out(v.size());
    for (int i = 0; i < dim(); ++i) {
      complexd acc{0.0, 0.0};
      for (int j = 0; j < dim(); ++j) acc += (*this)(i, j) * v[j];
      out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
  }

  /// Max |entry| over rows/columns 0..n_max-margin (the "interior" contract:
  /// ladder truncation corrupts only the boundary).
  double interior_max_abs(int margin = 1) const {
    int top = n_max_ - margin;
    double mx = 0.0;
    for (int i = 0; i <= top; ++i)
      for (int j = 0; j <= top; ++j) mx = std::max(mx, std::abs((*this)(i, j)));
    return mx;
  }

  double max_abs() const { return interior_max_abs(0); }

 private:
  void check_same(const FockOperator& o) const {
    if (o.n_max_ != n_max_) throw std::invalid_argument("FockOperator: dimension mismatch");
  }

  int n_max_ = 0;
  FockBasis basis_ = FockBasis::raw;
  std::vector<complexd> a_;
};

inline FockOperator commutator(const FockOperator& a, const FockOperator& b) {
  return a * b - b * a;
}

/// Entrywise |A - B| / (1 + |A| + |B|) over the interior block.  Raw-basis
/// entries span many orders of magnitude across the parameter grid (D-type
/// bands reach 1e17 at q = 1/2, n_max = 30), so identity residuals are only
/// meaningful relative to the local entry scale.
inline double relative_deviation(const FockOperator& a, const FockOperator& b,
                                 int margin = 0) {
  if (a.n_max() != b.n_max())
    throw std::invalid_argument("relative_deviation: dimension mismatch");
  int top = a.n_max() - margin;
  double mx = 0.0;
  for (int i = 0; i <= top; ++i)
    for (int j = 0; j <= top; ++j) {
      double denom = 1.0 + std::abs(a(i, j)) + std::abs(b(i, j));
      double d = std::abs(a(i, j) - b(i, j)) / denom;
      if (!(d <= mx)) mx = d;  // NaN-propagating max
    }
  return mx;
}

/// Undeformed ladder triple in the raw (non-unit-normalized) basis:
/// a_-|n> = n |n-1>,  a_+|n> = |n+1>,  N = diag(0..n_max).
struct RawLadder {
  FockOperator a_minus, a_plus, number;
};

inline RawLadder raw_ladder(int n_max) {
  RawLadder l;
  l.a_minus = FockOperator::lowering(n_max, [](int n) { return complexd(n, 0.0); });
  l.a_plus = FockOperator::raising(n_max, [](int) { return complexd(1.0, 0.0); });
  l.number = FockOperator::diagonal(n_max, [](int n) { return complexd(n, 0.0); });
  return l;
}

/// Policy for diagonal prefactors with a removable 0/0 at n = 0, e.g.
/// sqrt([N]_q / N).  `zero` is right whenever the prefactor multiplies a
/// vanishing ladder entry; `limit` substitutes a caller-supplied value.
enum class ZeroPolicy { error, zero, limit };

inline FockOperator apply_diag(int n_max, const std::function<double(int)>& f,
                               ZeroPolicy at_zero = ZeroPolicy::error,
                               double limit_value = 0.0, FockBasis basis = FockBasis::raw) {
  FockOperator m(n_max, basis);
  for (int n = 0; n <= n_max; ++n) {
    double v;
    if (n == 0 && at_zero != ZeroPolicy::error) {
      v = (at_zero == ZeroPolicy::zero) ? 0.0 : limit_value;
    } else {
      v = f(n);
      if (!std::isfinite(v))
        throw std::domain_error("apply_diag: non-removable singularity at n = " +
                                std::to_string(n));
    }
    m(n, n) = v;
  }
  return m;
}

/// Adjoint with respect to a raw-basis norm table:
/// (A^dag)_{mn} = conj(A_{nm}) <n|n> / <m|m>.  Involutive; reduces to the
/// conjugate transpose for unit norms.
inline FockOperator adjoint_wrt(const FockOperator& op, const NormTable& norms) {
  if (norms.n_max() != op.n_max())
    throw std::invalid_argument("adjoint_wrt: norm table dimension mismatch");
  FockOperator out(op.n_max(), op.basis());
  for (int m = 0; m <= op.n_max(); ++m)
    for (int n = 0; n <= op.n_max(); ++n)
      out(m, n) = std::conj(op(n, m)) * (double)(norms(n) / norms(m));
  return out;
}

/// Similarity transform to the unit-normalized basis |n) = |n> / sqrt(<n|n>):
/// A' = D A D^-1 with D = diag(sqrt <n|n>).
inline FockOperator to_unit_basis(const FockOperator& op, const NormTable& norms) {
  if (norms.n_max() != op.n_max())
    throw std::invalid_argument("to_unit_basis: norm table dimension mismatch");
  FockOperator out(op.n_max(), FockBasis::unit_normalized);
  for (int m = 0; m <= op.n_max(); ++m)
    for (int n = 0; n <= op.n_max(); ++n) {
      long double factor = std::sqrt(norms(m) / norms(n));
      out(m, n) = op(m, n) * (double)factor;
    }
  return out;
}

/// Dense row-major serialization header + payload for report artifacts.
struct SerializedOperator {
  int n_max;
  std::string basis;
  std::vector<double> re, im;
};

inline SerializedOperator serialize(const FockOperator& op) {
  SerializedOperator s;
  s.n_max = op.n_max();
  s.basis = op.basis() == FockBasis::raw ? "raw" : "unit";
  int d = op.dim();
  s.re.reserve(static_cast<std::size_t>(d) * d);
  s.im.reserve(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      s.re.push_back(op(i, j).real());
      s.im.push_back(op(i, j).imag());
    }
  return s;
}

}  // namespace qosc
