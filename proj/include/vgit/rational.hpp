#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace vgit {

/// Exact rational scalar. GMP keeps values in lowest terms with a positive
/// denominator after every operation.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// A point or direction in Q^n.
using QVector = std::vector<Rational>;

/// Parses "a", "-a", "a/b". Throws InputError on malformed text or b == 0.
Rational parse_rational(std::string_view text);

/// "a" when the denominator is 1, otherwise "a/b".
std::string to_string(const Rational& value);

inline int sign(const Rational& value) { return value.sign(); }

QVector zeros(std::size_t dim);
bool is_zero(const QVector& v);

Rational dot(const QVector& a, const QVector& b);
QVector add(const QVector& a, const QVector& b);
QVector sub(const QVector& a, const QVector& b);
QVector scaled(const QVector& v, const Rational& factor);

/// Arithmetic mean of a nonempty set of points.
QVector barycenter(const std::vector<QVector>& points);

/// Positive multiple of v with coprime integer entries. v must be nonzero.
QVector primitive_direction(const QVector& v);

/// Lexicographic comparison; vectors must have equal length.
bool lex_less(const QVector& a, const QVector& b);

std::string to_string(const QVector& v);

}  // namespace vgit
