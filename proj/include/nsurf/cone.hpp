#pragma once

#include <cstddef>
#include <stdexcept>

#include "nsurf/integer.hpp"
#include "nsurf/linalg.hpp"
#include "nsurf/zeroset.hpp"

namespace nsurf {

/// Zero set of a vector: bit k set iff coords[k] == 0.
inline ZeroSet zero_set(const NormalVector& x) {
  ZeroSet z(x.size());
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k] == 0) z.set(k);
  return z;
}

/// Quadrilateral constraints on a vector: for every tetrahedron i, at most
/// one of coordinates 7i+4, 7i+5, 7i+6 is nonzero.
inline bool is_admissible_vector(const NormalVector& x) {
  if (x.size() % 7 != 0)
    throw std::invalid_argument("is_admissible_vector: length not 7n");
  for (std::size_t t = 0; t * 7 < x.size(); ++t) {
    int nz = 0;
    for (std::size_t q = 4; q < 7; ++q)
      if (x[7 * t + q] != 0) ++nz;
    if (nz > 1) return false;
  }
  return true;
}

/// Quadrilateral constraints on a zero/non-zero pattern: for every
/// tetrahedron, at least two of the three quadrilateral bits are set.
inline bool is_admissible_zeroset(const ZeroSet& z) {
  if (z.size() % 7 != 0)
    throw std::invalid_argument("is_admissible_zeroset: length not 7n");
  for (std::size_t t = 0; t * 7 < z.size(); ++t) {
    int zero = 0;
    for (std::size_t q = 4; q < 7; ++q)
      if (z.test(7 * t + q)) ++zero;
    if (zero < 2) return false;
  }
  return true;
}

/// A x == 0, exactly.
inline bool satisfies_matching(const IntMatrix& a, const NormalVector& x) {
  if (a.cols != x.size())
    throw std::invalid_argument("satisfies_matching: dimension mismatch");
  for (std::size_t r = 0; r < a.rows; ++r) {
    Integer s = 0;
    for (std::size_t c = 0; c < a.cols; ++c) s += a.at(r, c) * x[c];
    if (s != 0) return false;
  }
  return true;
}

}  // namespace nsurf
