#include "vgit/rational.hpp"

#include <cctype>

#include "vgit/errors.hpp"

namespace vgit {

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den) || den[0] == '-' || den[0] == '+') {
    throw InputError("malformed rational: '" + std::string(text) + "'");
  }
  Integer n(std::string(num[0] == '+' ? num.substr(1) : num));
  Integer d{std::string(den)};
  if (d == 0) throw InputError("zero denominator: '" + std::string(text) + "'");
  return Rational(n, d);
}

std::string to_string(const Rational& value) { return value.str(); }

QVector zeros(std::size_t dim) { return QVector(dim, Rational(0)); }

bool is_zero(const QVector& v) {
  for (const auto& x : v) {
    if (x != 0) return false;
  }
  return true;
}

Rational dot(const QVector& a, const QVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

QVector add(const QVector& a, const QVector& b) {
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVector sub(const QVector& a, const QVector& b) {
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVector scaled(const QVector& v, const Rational& factor) {
  QVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] * factor;
  return r;
}

QVector barycenter(const std::vector<QVector>& points) {
  QVector c = zeros(points.front().size());
  for (const auto& p : points) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += p[i];
  }
  const Rational k(static_cast<long>(points.size()));
  for (auto& x : c) x /= k;
  return c;
}

QVector primitive_direction(const QVector& v) {
  Integer lcm_den = 1;
  for (const auto& x : v) lcm_den = boost::multiprecision::lcm(lcm_den, Integer(denominator(x)));
  Integer g = 0;
  std::vector<Integer> ints;
  ints.reserve(v.size());
  for (const auto& x : v) {
    Integer k = numerator(x) * (lcm_den / denominator(x));
    g = boost::multiprecision::gcd(g, k);
    ints.push_back(std::move(k));
  }
  if (g == 0) throw InputError("primitive_direction of the zero vector");
  QVector out;
  out.reserve(v.size());
  for (auto& k : ints) out.emplace_back(k / g);
  return out;
}

bool lex_less(const QVector& a, const QVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

std::string to_string(const QVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

}  // namespace vgit
