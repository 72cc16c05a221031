#pragma once

#include <array>
#include <cmath>
#include <span>

#include "metrize/errors.hpp"

namespace metrize {

/// Second-order jet: value, gradient and Hessian of a scalar with respect
/// to up to four base variables, propagated exactly through arithmetic.
///
/// The Hessian is stored as a packed upper triangle, so hess(i,j) and
/// hess(j,i) are the same storage cell and symmetry holds exactly by
/// construction. All operations are pure; a Jet2 is a plain value type.
class Jet2 {
 public:
  static constexpr int kMaxDim = 4;
  static constexpr int kMaxTri = kMaxDim * (kMaxDim + 1) / 2;

  Jet2() = default;

  static Jet2 constant(double value, int dim) {
    Jet2 j;
    j.v_ = value;
    j.n_ = dim;
    return j;
  }

  static Jet2 variable(double value, int index, int dim) {
    Jet2 j;
    j.v_ = value;
    j.n_ = dim;
    j.g_[index] = 1.0;
    return j;
  }

  double value() const { return v_; }
  int dim() const { return n_; }
  double d(int i) const { return g_[i]; }
  double dd(int i, int j) const { return h_[tri_index(i, j)]; }

  double& mutable_d(int i) { return g_[i]; }
  double& mutable_dd(int i, int j) { return h_[tri_index(i, j)]; }
  void set_value(double v) { v_ = v; }

  /// True when this jet is the seed of base variable `index`
  /// (unit gradient entry, zero Hessian).
  bool is_seed(int index) const {
    for (int i = 0; i < n_; ++i)
      if (g_[i] != (i == index ? 1.0 : 0.0)) return false;
    for (int t = 0; t < tri_count(n_); ++t)
      if (h_[t] != 0.0) return false;
    return true;
  }

  static int tri_index(int i, int j) {
    if (i > j) std::swap(i, j);
    return i + j * (j + 1) / 2;
  }
  static int tri_count(int n) { return n * (n + 1) / 2; }

  // packed index -> (row, col) with row <= col
  static constexpr std::array<std::array<int, 2>, kMaxTri> kTriPairs{{
      {0, 0}, {0, 1}, {1, 1}, {0, 2}, {1, 2}, {2, 2}, {0, 3}, {1, 3}, {2, 3}, {3, 3}}};

  friend Jet2 operator-(const Jet2& a) {
    Jet2 r = a;
    r.v_ = -a.v_;
    for (int i = 0; i < a.n_; ++i) r.g_[i] = -a.g_[i];
    for (int t = 0; t < tri_count(a.n_); ++t) r.h_[t] = -a.h_[t];
    return r;
  }

  friend Jet2 operator+(const Jet2& a, const Jet2& b) {
    Jet2 r = a;
    r.v_ += b.v_;
    for (int i = 0; i < a.n_; ++i) r.g_[i] += b.g_[i];
    for (int t = 0; t < tri_count(a.n_); ++t) r.h_[t] += b.h_[t];
    return r;
  }

  friend Jet2 operator-(const Jet2& a, const Jet2& b) {
    Jet2 r = a;
    r.v_ -= b.v_;
    for (int i = 0; i < a.n_; ++i) r.g_[i] -= b.g_[i];
    for (int t = 0; t < tri_count(a.n_); ++t) r.h_[t] -= b.h_[t];
    return r;
  }

  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.n_ = a.n_;
    r.v_ = a.v_ * b.v_;
    for (int i = 0; i < a.n_; ++i) r.g_[i] = a.g_[i] * b.v_ + a.v_ * b.g_[i];
    for (int t = 0; t < tri_count(a.n_); ++t) {
      const int i = kTriPairs[t][0], j = kTriPairs[t][1];
      r.h_[t] = a.h_[t] * b.v_ + a.v_ * b.h_[t] + a.g_[i] * b.g_[j] + a.g_[j] * b.g_[i];
    }
    return r;
  }

  friend Jet2 operator/(const Jet2& a, const Jet2& b) {
    if (b.v_ == 0.0) throw DomainError("div", 0.0);
    Jet2 r;
    r.n_ = a.n_;
    r.v_ = a.v_ / b.v_;
    for (int i = 0; i < a.n_; ++i) r.g_[i] = (a.g_[i] - r.v_ * b.g_[i]) / b.v_;
    for (int t = 0; t < tri_count(a.n_); ++t) {
      const int i = kTriPairs[t][0], j = kTriPairs[t][1];
      r.h_[t] =
          (a.h_[t] - r.v_ * b.h_[t] - r.g_[i] * b.g_[j] - r.g_[j] * b.g_[i]) / b.v_;
    }
    return r;
  }

  friend Jet2 operator+(const Jet2& a, double c) { return a + constant(c, a.n_); }
  friend Jet2 operator+(double c, const Jet2& a) { return constant(c, a.n_) + a; }
  friend Jet2 operator-(const Jet2& a, double c) { return a - constant(c, a.n_); }
  friend Jet2 operator-(double c, const Jet2& a) { return constant(c, a.n_) - a; }
  friend Jet2 operator*(const Jet2& a, double c) { return a * constant(c, a.n_); }
  friend Jet2 operator*(double c, const Jet2& a) { return constant(c, a.n_) * a; }
  friend Jet2 operator/(const Jet2& a, double c) { return a / constant(c, a.n_); }
  friend Jet2 operator/(double c, const Jet2& a) { return constant(c, a.n_) / a; }

  /// Univariate chain rule: given f(u), f'(u), f''(u) at u = this->value(),
  /// returns the jet of f composed with this jet.
  Jet2 chain(double f, double fp, double fpp) const {
    Jet2 r;
    r.n_ = n_;
    r.v_ = f;
    for (int i = 0; i < n_; ++i) r.g_[i] = fp * g_[i];
    for (int t = 0; t < tri_count(n_); ++t) {
      const int i = kTriPairs[t][0], j = kTriPairs[t][1];
      r.h_[t] = fp * h_[t] + fpp * g_[i] * g_[j];
    }
    return r;
  }

 private:
  double v_ = 0;
  std::array<double, kMaxDim> g_{};
  std::array<double, kMaxTri> h_{};
  int n_ = 0;
};

inline Jet2 sin(const Jet2& u) {
  const double s = std::sin(u.value()), c = std::cos(u.value());
  return u.chain(s, c, -s);
}

inline Jet2 cos(const Jet2& u) {
  const double s = std::sin(u.value()), c = std::cos(u.value());
  return u.chain(c, -s, -c);
}

inline Jet2 tan(const Jet2& u) {
  if (std::cos(u.value()) == 0.0) throw DomainError("tan", u.value());
  const double t = std::tan(u.value());
  const double d = 1.0 + t * t;
  return u.chain(t, d, 2.0 * t * d);
}

inline Jet2 cot(const Jet2& u) {
  const double s = std::sin(u.value());
  if (s == 0.0) throw DomainError("cot", u.value());
  const double c = std::cos(u.value()) / s;
  const double d = -(1.0 + c * c);
  return u.chain(c, d, -2.0 * c * d);
}

inline Jet2 exp(const Jet2& u) {
  const double e = std::exp(u.value());
  return u.chain(e, e, e);
}

inline Jet2 log(const Jet2& u) {
  if (!(u.value() > 0.0)) throw DomainError("log", u.value());
  const double inv = 1.0 / u.value();
  return u.chain(std::log(u.value()), inv, -inv * inv);
}

inline Jet2 sqrt(const Jet2& u) {
  if (u.value() < 0.0) throw DomainError("sqrt", u.value());
  const double s = std::sqrt(u.value());
  const double fp = 0.5 / s;
  return u.chain(s, fp, -0.5 * fp / u.value());
}

inline Jet2 atan(const Jet2& u) {
  const double q = 1.0 + u.value() * u.value();
  return u.chain(std::atan(u.value()), 1.0 / q, -2.0 * u.value() / (q * q));
}

/// Integer power by binary exponentiation; valid for any base. The same
/// multiplication order is used for plain values elsewhere, keeping value
/// and jet evaluation bit-for-bit identical.
inline Jet2 pow_int(const Jet2& base, long long n) {
  if (n == 0) return Jet2::constant(1.0, base.dim());
  const bool neg = n < 0;
  unsigned long long e = neg ? static_cast<unsigned long long>(-n) : static_cast<unsigned long long>(n);
  Jet2 acc = Jet2::constant(1.0, base.dim());
  Jet2 sq = base;
  while (e > 0) {
    if (e & 1ull) acc = acc * sq;
    e >>= 1;
    if (e > 0) sq = sq * sq;
  }
  if (neg) return Jet2::constant(1.0, base.dim()) / acc;
  return acc;
}

/// General power via exp(e*log(b)); requires b > 0.
inline Jet2 pow(const Jet2& base, const Jet2& expo) {
  if (!(base.value() > 0.0)) throw DomainError("pow", base.value());
  return exp(expo * log(base));
}

/// atan2 with full jet propagation; the result is the angle in (-pi, pi].
/// Branch constants do not affect derivatives.
inline Jet2 atan2(const Jet2& y, const Jet2& x) {
  const double pi = 3.14159265358979323846;
  if (x.value() == 0.0 && y.value() == 0.0) throw DomainError("atan2", 0.0);
  if (std::abs(x.value()) >= std::abs(y.value())) {
    Jet2 w = atan(y / x);
    if (x.value() < 0.0) {
      if (y.value() >= 0.0)
        w = w + pi;
      else
        w = w - pi;
    }
    return w;
  }
  Jet2 w = -atan(x / y);
  if (y.value() > 0.0)
    w = w + pi / 2;
  else
    w = w - pi / 2;
  return w;
}

}  // namespace metrize
