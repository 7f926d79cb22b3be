#pragma once
// Exact scalar type and the small amount of scalar-dispatch glue the
// templated algebra needs to run in both exact and floating mode.

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

namespace hypo {

using Rational = boost::multiprecision::cpp_rational;
using Integer  = boost::multiprecision::cpp_int;

inline double to_double(const Rational& x) { return x.convert_to<double>(); }
inline double to_double(double x) { return x; }

template <class K> struct scalar_traits;

template <> struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x) { return x == 0; }
  // Exact mode ignores the scale hint.
  static bool negligible(const Rational& x, double = 1.0) { return x == 0; }
  static double abs_value(const Rational& x) { return std::fabs(to_double(x)); }
  static Rational from_int(long n) { return Rational(n); }
};

template <> struct scalar_traits<double> {
  static constexpr bool exact = false;
  static bool is_zero(double x) { return x == 0.0; }
  static bool negligible(double x, double scale = 1.0) {
    return std::fabs(x) <= 1e-12 * std::max(1.0, scale);
  }
  static double abs_value(double x) { return std::fabs(x); }
  static double from_int(long n) { return double(n); }
};

// Exact square root test: succeeds iff x is a square in Q.
inline std::optional<Rational> exact_sqrt(const Rational& x) {
  if (x < 0) return std::nullopt;
  if (x == 0) return Rational(0);
  Integer num = numerator(x), den = denominator(x);
  Integer rn = boost::multiprecision::sqrt(num), rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

// Nearest rational with denominator <= max_den (continued fractions).
// Returns it only when within tol of x; used to promote numeric minima
// back into the exact pipeline.
inline std::optional<Rational> snap_to_rational(double x, long max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  // Stern-Brocot style best-approximation walk.
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(v);
    long long a = (long long)fl;
    long long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double frac = v - fl;
    if (frac < 1e-15) break;
    v = 1.0 / frac;
  }
  if (q1 == 0) return std::nullopt;
  Rational cand(p1, q1);
  if (std::fabs(to_double(cand) - x) <= tol) return cand;
  return std::nullopt;
}

inline std::string to_string(const Rational& x) { return x.str(); }

}  // namespace hypo
