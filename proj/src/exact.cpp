#include "beacon/exact.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace beacon {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  };
  trim(s);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    }
    return true;
  };
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw std::invalid_argument("malformed rational literal '" + s + "'");
    return Rational(mpz_class(s));
  }
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) {
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  }
  mpz_class d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rational r(mpz_class(num), d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str() + "/1";
  return r.get_str();
}

namespace {
const double kSqrt3 = std::sqrt(3.0);
}

double QSqrt3::to_double() const {
  if (sgn(b_) == 0) return a_.get_d();
  return a_.get_d() + b_.get_d() * kSqrt3;
}

QSqrt3& QSqrt3::operator+=(const QSqrt3& o) {
  a_ += o.a_;
  if (sgn(o.b_) != 0) b_ += o.b_;
  return *this;
}

QSqrt3& QSqrt3::operator-=(const QSqrt3& o) {
  a_ -= o.a_;
  if (sgn(o.b_) != 0) b_ -= o.b_;
  return *this;
}

QSqrt3& QSqrt3::operator*=(const QSqrt3& o) {
  if (sgn(b_) == 0 && sgn(o.b_) == 0) {
    a_ *= o.a_;
    return *this;
  }
  Rational na = a_ * o.a_ + 3 * b_ * o.b_;
  Rational nb = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

QSqrt3& QSqrt3::operator/=(const QSqrt3& o) {
  if (o.is_zero()) throw std::domain_error("division by zero in Q(sqrt3)");
  if (sgn(o.b_) == 0) {
    a_ /= o.a_;
    if (sgn(b_) != 0) b_ /= o.a_;
    return *this;
  }
  // (a + b r)/(c + d r) = (a + b r)(c - d r)/(c^2 - 3 d^2)
  const Rational norm = o.a_ * o.a_ - 3 * o.b_ * o.b_;
  QSqrt3 conj(o.a_, -o.b_);
  *this *= conj;
  a_ /= norm;
  b_ /= norm;
  return *this;
}

int sign(const QSqrt3& v) {
  const int sa = sgn(v.rational_part());
  const int sb = sgn(v.sqrt3_part());
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 with 3 b^2
  const Rational a2 = v.rational_part() * v.rational_part();
  const Rational b2 = 3 * v.sqrt3_part() * v.sqrt3_part();
  return a2 > b2 ? sa : sb;
}

int compare(const QSqrt3& l, const QSqrt3& r) { return sign(l - r); }

std::string to_string(const QSqrt3& v) {
  if (v.is_rational()) return to_string(v.rational_part());
  return to_string(v.rational_part()) + "+" + to_string(v.sqrt3_part()) + "*sqrt3";
}

RationalPoint3 operator-(const RationalPoint3& a, const RationalPoint3& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}

RationalPoint3 operator+(const RationalPoint3& a, const RationalPoint3& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}

RationalPoint3 operator*(const QSqrt3& s, const RationalPoint3& p) {
  return {s * p.x, s * p.y, s * p.z};
}

QSqrt3 dot(const RationalPoint3& a, const RationalPoint3& b) {
  QSqrt3 r = a.x * b.x;
  r += a.y * b.y;
  r += a.z * b.z;
  return r;
}

RationalPoint3 cross(const RationalPoint3& a, const RationalPoint3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

bool lex_less(const RationalPoint3& a, const RationalPoint3& b) {
  if (int c = compare(a.x, b.x); c != 0) return c < 0;
  if (int c = compare(a.y, b.y); c != 0) return c < 0;
  return compare(a.z, b.z) < 0;
}

int orient3d(const RationalPoint3& a, const RationalPoint3& b, const RationalPoint3& c,
             const RationalPoint3& d) {
  const RationalPoint3 u = b - a;
  const RationalPoint3 v = c - a;
  const RationalPoint3 w = d - a;
  return sign(dot(u, cross(v, w)));
}

int orient2d(const RationalPoint2& a, const RationalPoint2& b, const RationalPoint2& c) {
  const QSqrt3 det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return sign(det);
}

FloatPoint3 to_float(const RationalPoint3& p) {
  FloatPoint3 f{p.x.to_double(), p.y.to_double(), p.z.to_double()};
  for (double c : f) {
    if (!std::isfinite(c)) throw std::overflow_error("coordinate not representable as a finite double");
  }
  return f;
}

FloatPoint2 to_float(const RationalPoint2& p) {
  FloatPoint2 f{p.x.to_double(), p.y.to_double()};
  for (double c : f) {
    if (!std::isfinite(c)) throw std::overflow_error("coordinate not representable as a finite double");
  }
  return f;
}

Rational quantize(double v, long denominator) {
  Rational r(static_cast<long>(std::llround(v * static_cast<double>(denominator))), denominator);
  r.canonicalize();
  return r;
}

}  // namespace beacon
