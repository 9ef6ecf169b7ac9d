#pragma once

// Double-double arithmetic: a value is the unevaluated sum hi + lo with
// |lo| <= ulp(hi)/2, giving roughly 106 bits (~32 decimal digits) of
// significand. Built on the error-free transformations two_sum and
// two_prod; requires strict IEEE evaluation (no fast-math, no contraction).

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>

namespace orthofit {

/// s + e == a + b exactly, s = fl(a + b).
inline void two_sum(double a, double b, double& s, double& e) noexcept {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

/// Requires |a| >= |b| (or a == 0).
inline void quick_two_sum(double a, double b, double& s, double& e) noexcept {
  s = a + b;
  e = b - (s - a);
}

/// p + e == a * b exactly.
inline void two_prod(double a, double b, double& p, double& e) noexcept {
  p = a * b;
  e = std::fma(a, b, -p);
}

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double v) : hi(v), lo(0.0) {}  // NOLINT: implicit widening is lossless
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  explicit operator double() const noexcept { return hi + lo; }

  DoubleDouble& operator+=(const DoubleDouble& b) noexcept {
    double s, e, t, f;
    two_sum(hi, b.hi, s, e);
    two_sum(lo, b.lo, t, f);
    e += t;
    quick_two_sum(s, e, s, e);
    e += f;
    quick_two_sum(s, e, hi, lo);
    return *this;
  }

  DoubleDouble& operator+=(double b) noexcept {
    double s, e;
    two_sum(hi, b, s, e);
    e += lo;
    quick_two_sum(s, e, hi, lo);
    return *this;
  }

  DoubleDouble& operator-=(const DoubleDouble& b) noexcept { return *this += DoubleDouble{-b.hi, -b.lo}; }
  DoubleDouble& operator-=(double b) noexcept { return *this += -b; }

  DoubleDouble& operator*=(const DoubleDouble& b) noexcept {
    double p, e;
    two_prod(hi, b.hi, p, e);
    e += hi * b.lo + lo * b.hi;
    quick_two_sum(p, e, hi, lo);
    return *this;
  }

  DoubleDouble& operator*=(double b) noexcept {
    double p, e;
    two_prod(hi, b, p, e);
    e += lo * b;
    quick_two_sum(p, e, hi, lo);
    return *this;
  }

  DoubleDouble& operator/=(const DoubleDouble& b) noexcept {
    // Long division: two correction steps.
    const double q1 = hi / b.hi;
    DoubleDouble r = *this;
    r -= DoubleDouble{b} *= q1;
    const double q2 = r.hi / b.hi;
    r -= DoubleDouble{b} *= q2;
    const double q3 = r.hi / b.hi;
    double s, e;
    quick_two_sum(q1, q2, s, e);
    DoubleDouble q{s, e};
    q += q3;
    *this = q;
    return *this;
  }

  DoubleDouble& operator/=(double b) noexcept { return *this /= DoubleDouble{b}; }

  DoubleDouble operator-() const noexcept { return {-hi, -lo}; }

  friend DoubleDouble operator+(DoubleDouble a, const DoubleDouble& b) noexcept { return a += b; }
  friend DoubleDouble operator-(DoubleDouble a, const DoubleDouble& b) noexcept { return a -= b; }
  friend DoubleDouble operator*(DoubleDouble a, const DoubleDouble& b) noexcept { return a *= b; }
  friend DoubleDouble operator/(DoubleDouble a, const DoubleDouble& b) noexcept { return a /= b; }
  friend DoubleDouble operator+(DoubleDouble a, double b) noexcept { return a += b; }
  friend DoubleDouble operator-(DoubleDouble a, double b) noexcept { return a -= b; }
  friend DoubleDouble operator*(DoubleDouble a, double b) noexcept { return a *= b; }
  friend DoubleDouble operator/(DoubleDouble a, double b) noexcept { return a /= b; }
  friend DoubleDouble operator+(double a, const DoubleDouble& b) noexcept { return DoubleDouble{b} += a; }
  friend DoubleDouble operator-(double a, const DoubleDouble& b) noexcept { return DoubleDouble{a} -= b; }
  friend DoubleDouble operator*(double a, const DoubleDouble& b) noexcept { return DoubleDouble{b} *= a; }
  friend DoubleDouble operator/(double a, const DoubleDouble& b) noexcept { return DoubleDouble{a} /= b; }

  friend bool operator==(const DoubleDouble& a, const DoubleDouble& b) noexcept {
    return a.hi == b.hi && a.lo == b.lo;
  }
  friend std::partial_ordering operator<=>(const DoubleDouble& a, const DoubleDouble& b) noexcept {
    if (auto c = a.hi <=> b.hi; c != 0) return c;
    return a.lo <=> b.lo;
  }

  friend std::ostream& operator<<(std::ostream& os, const DoubleDouble& v) {
    return os << v.hi << (v.lo < 0 ? " - " : " + ") << std::abs(v.lo);
  }
};

inline DoubleDouble abs(const DoubleDouble& a) noexcept { return a.hi < 0 ? -a : a; }

inline DoubleDouble sqrt(const DoubleDouble& a) noexcept {
  if (a.hi <= 0.0) return DoubleDouble{a.hi == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN()};
  // One Newton step on the double estimate doubles the precision.
  const double x = std::sqrt(a.hi);
  double p, e;
  two_prod(x, x, p, e);
  DoubleDouble residual = a;
  residual -= DoubleDouble{p, e};
  return DoubleDouble{x} + residual.hi / (2.0 * x);
}

inline bool isfinite(const DoubleDouble& a) noexcept { return std::isfinite(a.hi); }

/// Uniform access for code templated on the working scalar.
template <class Real>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr double epsilon = 0x1p-53;
  static double to_double(double v) noexcept { return v; }
  static DoubleDouble widen(double v) noexcept { return DoubleDouble{v}; }
};

template <>
struct ScalarTraits<DoubleDouble> {
  static constexpr double epsilon = 0x1p-104;
  static double to_double(const DoubleDouble& v) noexcept { return v.hi + v.lo; }
  static DoubleDouble widen(const DoubleDouble& v) noexcept { return v; }
};

template <class Real>
double to_double(const Real& v) noexcept {
  return ScalarTraits<Real>::to_double(v);
}

}  // namespace orthofit
