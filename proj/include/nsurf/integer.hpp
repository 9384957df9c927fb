#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace nsurf {

// Exact arbitrary-precision integer used throughout; no fixed-width fast path.
using Integer = boost::multiprecision::cpp_int;

// A point of Z^{7n} in normal coordinates.  For tetrahedron i, positions
// 7i..7i+3 count the triangle types at vertices 0..3, and positions 7i+4,
// 7i+5, 7i+6 count the quadrilateral types separating vertex pairs
// {0,1}|{2,3}, {0,2}|{1,3} and {0,3}|{1,2} respectively.  This indexing is
// fixed once here; everything else derives from it.
using NormalVector = std::vector<Integer>;

inline Integer dot(const NormalVector& a, const NormalVector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dot: dimension mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline NormalVector add(const NormalVector& a, const NormalVector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("add: dimension mismatch");
  NormalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline NormalVector sub(const NormalVector& a, const NormalVector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("sub: dimension mismatch");
  NormalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline bool is_zero_vector(const NormalVector& a) {
  for (const Integer& x : a)
    if (x != 0) return false;
  return true;
}

inline bool is_nonnegative(const NormalVector& a) {
  for (const Integer& x : a)
    if (x < 0) return false;
  return true;
}

// a - b >= 0 componentwise.
inline bool dominates(const NormalVector& a, const NormalVector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dominates: dimension mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

inline Integer coordinate_sum(const NormalVector& a) {
  Integer s = 0;
  for (const Integer& x : a) s += x;
  return s;
}

// gcd of absolute values; 0 for the zero vector.
inline Integer vector_gcd(const NormalVector& a) {
  Integer g = 0;
  for (const Integer& x : a) {
    if (x != 0) g = boost::multiprecision::gcd(g, boost::multiprecision::abs(x));
    if (g == 1) break;
  }
  return g;
}

// Scale to the smallest integer vector on the same ray; no-op on zero.
inline void divide_by_gcd(NormalVector& a) {
  Integer g = vector_gcd(a);
  if (g > 1)
    for (Integer& x : a) x /= g;
}

inline NormalVector unit_vector(std::size_t dim, std::size_t k) {
  NormalVector r(dim);
  r[k] = 1;
  return r;
}

// Floor division (toward minus infinity); den must be nonzero.
inline Integer floor_div(const Integer& num, const Integer& den) {
  Integer q = num / den;  // truncates toward zero
  if ((num % den) != 0 && ((num < 0) != (den < 0))) --q;
  return q;
}

}  // namespace nsurf
