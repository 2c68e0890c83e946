#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace sciwb {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Parses "3", "-7/4", "0.125" or "1e-3" into an exact rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);
Rational abs_of(const Rational& q);
/// 2^e for any integer e (negative exponents give dyadic fractions).
Rational pow2(int e);
double to_double(const Rational& q);

/// A real number that is either an exact rational or a double approximation.
/// Arithmetic stays exact while both operands are exact.
class Real {
 public:
  Real() : v_(Rational(0)) {}
  Real(const Rational& q) : v_(q) {}  // NOLINT(implicit)
  Real(int n) : v_(Rational(n)) {}    // NOLINT(implicit)
  static Real approx(double d) { return Real(d, 0); }

  bool is_exact() const { return std::holds_alternative<Rational>(v_); }
  const Rational& exact() const;
  double to_double() const;

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  Real operator-() const;
  Real& operator+=(const Real& o) { return *this = *this + o; }

  /// Bit-exact identity: same representation and same value.
  friend bool identical(const Real& a, const Real& b);
  std::string to_string() const;

 private:
  Real(double d, int) : v_(d) {}
  std::variant<Rational, double> v_;
};

/// |a - b|; exact zero whenever both are exact and equal.
double abs_diff(const Real& a, const Real& b);

/// A complex query answer. Catalog answers are real, so im defaults to exact 0.
struct Value {
  Real re;
  Real im = Real(0);

  Value() = default;
  Value(Real r) : re(std::move(r)) {}  // NOLINT(implicit)
  Value(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Value(const Rational& q) : re(q) {}  // NOLINT(implicit)
  Value(int n) : re(n) {}              // NOLINT(implicit)

  bool is_exact() const { return re.is_exact() && im.is_exact(); }
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
  std::string to_string() const;
};

bool identical(const Value& a, const Value& b);
double abs_diff(const Value& a, const Value& b);

/// Finite sample of a nonempty compact subset of C. resolution is 0 for
/// exactly computed sets and the grid spacing for grid samples.
struct PointSet {
  std::vector<std::complex<double>> points;
  double resolution = 0.0;
};

struct Point;

struct TaggedPoint {
  int tag = 0;
  std::shared_ptr<const Point> inner;
};

/// A point of some metric output space.
struct Point {
  std::variant<Real, PointSet, TaggedPoint> value;

  Point() = default;
  Point(Real r) : value(std::move(r)) {}          // NOLINT(implicit)
  Point(const Rational& q) : value(Real(q)) {}    // NOLINT(implicit)
  Point(int n) : value(Real(n)) {}                // NOLINT(implicit)
  Point(PointSet s) : value(std::move(s)) {}      // NOLINT(implicit)
  Point(TaggedPoint t) : value(std::move(t)) {}   // NOLINT(implicit)

  static Point tagged(int tag, Point inner);

  bool is_real() const { return std::holds_alternative<Real>(value); }
  bool is_set() const { return std::holds_alternative<PointSet>(value); }
  bool is_tagged() const { return std::holds_alternative<TaggedPoint>(value); }
  const Real& real() const;
  const PointSet& set() const;
  const TaggedPoint& tagged_point() const;

  /// True when the point carries no floating-point data.
  bool is_exact() const;
  std::string to_string() const;
};

/// Structural, bit-exact equality.
bool identical(const Point& a, const Point& b);

}  // namespace sciwb
