#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace beacon {

using Rational = mpq_class;

/// Parses "p/q" or an integer literal into a canonical rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

/// Element a + b*sqrt(3) of the quadratic field Q(sqrt 3).
///
/// Plain rational inputs have b == 0; the spiral generators need the
/// irrational part because their vertices sit at multiples of 120 degrees.
/// Both parts are kept canonical by GMP, so equality is structural.
class QSqrt3 {
 public:
  QSqrt3() = default;
  QSqrt3(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  QSqrt3(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QSqrt3(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt3_part() const { return b_; }
  bool is_rational() const { return sgn(b_) == 0; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }

  double to_double() const;

  QSqrt3& operator+=(const QSqrt3& o);
  QSqrt3& operator-=(const QSqrt3& o);
  QSqrt3& operator*=(const QSqrt3& o);
  QSqrt3& operator/=(const QSqrt3& o);

  friend QSqrt3 operator+(QSqrt3 l, const QSqrt3& r) { return l += r; }
  friend QSqrt3 operator-(QSqrt3 l, const QSqrt3& r) { return l -= r; }
  friend QSqrt3 operator*(QSqrt3 l, const QSqrt3& r) { return l *= r; }
  friend QSqrt3 operator/(QSqrt3 l, const QSqrt3& r) { return l /= r; }
  friend QSqrt3 operator-(const QSqrt3& v) { return QSqrt3(-v.a_, -v.b_); }

  friend bool operator==(const QSqrt3& l, const QSqrt3& r) { return l.a_ == r.a_ && l.b_ == r.b_; }
  friend bool operator!=(const QSqrt3& l, const QSqrt3& r) { return !(l == r); }

 private:
  Rational a_;
  Rational b_;
};

/// Exact sign of a + b*sqrt(3).
int sign(const QSqrt3& v);
int compare(const QSqrt3& l, const QSqrt3& r);
inline bool operator<(const QSqrt3& l, const QSqrt3& r) { return compare(l, r) < 0; }
inline bool operator<=(const QSqrt3& l, const QSqrt3& r) { return compare(l, r) <= 0; }
inline bool operator>(const QSqrt3& l, const QSqrt3& r) { return compare(l, r) > 0; }
inline bool operator>=(const QSqrt3& l, const QSqrt3& r) { return compare(l, r) >= 0; }

std::string to_string(const QSqrt3& v);

struct RationalPoint3 {
  QSqrt3 x, y, z;

  friend bool operator==(const RationalPoint3&, const RationalPoint3&) = default;
};

struct RationalPoint2 {
  QSqrt3 x, y;

  friend bool operator==(const RationalPoint2&, const RationalPoint2&) = default;
};

RationalPoint3 operator-(const RationalPoint3& a, const RationalPoint3& b);
RationalPoint3 operator+(const RationalPoint3& a, const RationalPoint3& b);
RationalPoint3 operator*(const QSqrt3& s, const RationalPoint3& p);
QSqrt3 dot(const RationalPoint3& a, const RationalPoint3& b);
RationalPoint3 cross(const RationalPoint3& a, const RationalPoint3& b);

/// Lexicographic order on (x, y, z); used to detect duplicate coordinates.
bool lex_less(const RationalPoint3& a, const RationalPoint3& b);

/// Sign of det[b-a, c-a, d-a]. Exact.
int orient3d(const RationalPoint3& a, const RationalPoint3& b, const RationalPoint3& c,
             const RationalPoint3& d);

/// Sign of det[b-a, c-a]. Exact.
int orient2d(const RationalPoint2& a, const RationalPoint2& b, const RationalPoint2& c);

template <int Dim>
using VecD = std::array<double, Dim>;

using FloatPoint3 = VecD<3>;
using FloatPoint2 = VecD<2>;

FloatPoint3 to_float(const RationalPoint3& p);
FloatPoint2 to_float(const RationalPoint2& p);

/// Nearest rational with the given power-of-two denominator.
Rational quantize(double v, long denominator = 4096);

}  // namespace beacon
