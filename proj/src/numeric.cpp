#include "sciwb/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include "sciwb/errors.hpp"

namespace sciwb {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw Error(Errc::InvalidArgument, "not an integer: '" + std::string(s) + "'");
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);  // a leading 0 would select octal
  Integer v{std::string(s)};
  return neg ? Integer(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw Error(Errc::InvalidArgument, "empty rational");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Integer num = parse_integer(std::string_view(s).substr(0, slash));
    Integer den = parse_integer(std::string_view(s).substr(slash + 1));
    if (den == 0) throw Error(Errc::InvalidArgument, "zero denominator in '" + s + "'");
    return Rational(num, den);
  }

  // Decimal with optional exponent, read exactly.
  int exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    exponent = static_cast<int>(parse_integer(std::string_view(s).substr(e + 1)).convert_to<long>());
    s.erase(e);
  }
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string::npos) {
    digits = s.substr(0, dot) + s.substr(dot + 1);
    exponent -= static_cast<int>(s.size() - dot - 1);
  } else {
    digits = s;
  }
  if (!all_digits(digits)) throw Error(Errc::InvalidArgument, "not a rational: '" + std::string(text) + "'");
  Rational q{parse_integer(digits)};
  Rational scale = 1;
  for (int i = 0; i < std::abs(exponent); ++i) scale *= 10;
  if (exponent >= 0)
    q *= scale;
  else
    q /= scale;
  return neg ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(q);
  if (boost::multiprecision::denominator(q) != 1) os << '/' << boost::multiprecision::denominator(q);
  return os.str();
}

Integer floor_of(const Rational& q) {
  const Integer n = boost::multiprecision::numerator(q);
  const Integer d = boost::multiprecision::denominator(q);
  Integer quot = n / d;  // truncates toward zero
  if (n < 0 && quot * d != n) quot -= 1;
  return quot;
}

Integer ceil_of(const Rational& q) {
  Integer f = floor_of(q);
  return Rational(f) == q ? f : Integer(f + 1);
}

Rational abs_of(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational pow2(int e) {
  Integer p = 1;
  p <<= std::abs(e);
  return e >= 0 ? Rational(p) : Rational(Integer(1), p);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

// --- Real -------------------------------------------------------------------

const Rational& Real::exact() const {
  if (const auto* q = std::get_if<Rational>(&v_)) return *q;
  throw Error(Errc::InvalidArgument, "real value is not exact");
}

double Real::to_double() const {
  if (const auto* q = std::get_if<Rational>(&v_)) return sciwb::to_double(*q);
  return std::get<double>(v_);
}

Real operator+(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return Real(Rational(a.exact() + b.exact()));
  return Real::approx(a.to_double() + b.to_double());
}

Real operator-(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return Real(Rational(a.exact() - b.exact()));
  return Real::approx(a.to_double() - b.to_double());
}

Real operator*(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return Real(Rational(a.exact() * b.exact()));
  return Real::approx(a.to_double() * b.to_double());
}

Real operator/(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) {
    if (b.exact() == 0) throw Error(Errc::InvalidArgument, "division by zero");
    return Real(Rational(a.exact() / b.exact()));
  }
  return Real::approx(a.to_double() / b.to_double());
}

Real Real::operator-() const {
  if (is_exact()) return Real(Rational(-exact()));
  return Real::approx(-to_double());
}

bool identical(const Real& a, const Real& b) {
  if (a.is_exact() != b.is_exact()) return false;
  if (a.is_exact()) return a.exact() == b.exact();
  const double x = a.to_double(), y = b.to_double();
  return std::memcmp(&x, &y, sizeof x) == 0;
}

std::string Real::to_string() const {
  if (is_exact()) return sciwb::to_string(exact());
  std::ostringstream os;
  os.precision(17);
  os << std::get<double>(v_);
  return os.str();
}

double abs_diff(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return sciwb::to_double(abs_of(Rational(a.exact() - b.exact())));
  return std::abs(a.to_double() - b.to_double());
}

// --- Value ------------------------------------------------------------------

std::string Value::to_string() const {
  if (im.is_exact() && im.exact() == 0) return re.to_string();
  return re.to_string() + "+" + im.to_string() + "i";
}

bool identical(const Value& a, const Value& b) { return identical(a.re, b.re) && identical(a.im, b.im); }

double abs_diff(const Value& a, const Value& b) { return std::hypot(abs_diff(a.re, b.re), abs_diff(a.im, b.im)); }

// --- Point ------------------------------------------------------------------

Point Point::tagged(int tag, Point inner) {
  return Point(TaggedPoint{tag, std::make_shared<const Point>(std::move(inner))});
}

const Real& Point::real() const {
  if (const auto* r = std::get_if<Real>(&value)) return *r;
  throw Error(Errc::InvalidArgument, "point is not real-valued: " + to_string());
}

const PointSet& Point::set() const {
  if (const auto* s = std::get_if<PointSet>(&value)) return *s;
  throw Error(Errc::InvalidArgument, "point is not a compact-set sample: " + to_string());
}

const TaggedPoint& Point::tagged_point() const {
  if (const auto* t = std::get_if<TaggedPoint>(&value)) return *t;
  throw Error(Errc::InvalidArgument, "point is not tagged: " + to_string());
}

bool Point::is_exact() const {
  if (const auto* r = std::get_if<Real>(&value)) return r->is_exact();
  if (const auto* t = std::get_if<TaggedPoint>(&value)) return t->inner->is_exact();
  return false;
}

std::string Point::to_string() const {
  if (const auto* r = std::get_if<Real>(&value)) return r->to_string();
  if (const auto* t = std::get_if<TaggedPoint>(&value))
    return "(" + std::to_string(t->tag) + ", " + t->inner->to_string() + ")";
  const auto& s = std::get<PointSet>(value);
  std::ostringstream os;
  os.precision(12);
  os << '{';
  const std::size_t shown = std::min<std::size_t>(s.points.size(), 16);
  for (std::size_t i = 0; i < shown; ++i) {
    if (i) os << ", ";
    os << s.points[i].real();
    if (s.points[i].imag() != 0.0) os << (s.points[i].imag() < 0 ? "-" : "+") << std::abs(s.points[i].imag()) << "i";
  }
  if (shown < s.points.size()) os << ", ... (" << s.points.size() << " points)";
  os << '}';
  return os.str();
}

bool identical(const Point& a, const Point& b) {
  if (a.value.index() != b.value.index()) return false;
  if (a.is_real()) return identical(a.real(), b.real());
  if (a.is_tagged())
    return a.tagged_point().tag == b.tagged_point().tag &&
           identical(*a.tagged_point().inner, *b.tagged_point().inner);
  const auto& x = a.set();
  const auto& y = b.set();
  return x.resolution == y.resolution && x.points == y.points;
}

}  // namespace sciwb
