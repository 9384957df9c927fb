#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "nsurf/cone.hpp"
#include "nsurf/errors.hpp"
#include "nsurf/hilbert_primal.hpp"  // BasisSet
#include "nsurf/integer.hpp"
#include "nsurf/linalg.hpp"
#include "nsurf/vertex_enum.hpp"

// Brute-force reference implementations.  These are the independent ground
// truth for the enumeration algorithms and are only meant for test-scale
// instances; every entry point is protected by an explicit work guard.

namespace nsurf {

struct OracleLimits {
  std::uint64_t max_box_points = 1000000;   // is_fundamental_oracle
  std::uint64_t max_nodes = 200000000;      // kernel-point search
};

// x is fundamental iff no y with 0 <= y <= x, y != 0, y != x lies in the
// kernel of A (then x - y would too, and both summands stay admissible since
// their supports sit inside the support of x).
inline bool is_fundamental_oracle(const IntMatrix& a, const NormalVector& x,
                                  const OracleLimits& limits = {}) {
  if (a.cols != x.size())
    throw std::invalid_argument("is_fundamental_oracle: dimension mismatch");
  if (is_zero_vector(x) || !is_nonnegative(x) || !satisfies_matching(a, x))
    throw std::invalid_argument("is_fundamental_oracle: x not a nonzero kernel point");
  if (x.size() % 7 == 0 && !is_admissible_vector(x))
    throw std::invalid_argument("is_fundamental_oracle: x not admissible");

  Integer box = 1;
  for (const Integer& c : x) {
    box *= c + 1;
    if (box > limits.max_box_points)
      throw ScaleGuardError("is_fundamental_oracle: box exceeds point limit");
  }

  NormalVector y(x.size());
  for (;;) {
    // advance mixed-radix counter over [0, x]
    std::size_t i = x.size();
    while (i-- > 0) {
      if (y[i] < x[i]) {
        ++y[i];
        break;
      }
      y[i] = 0;
      if (i == 0) return true;  // wrapped: every y checked
    }
    if (y == x || is_zero_vector(y)) continue;
    if (satisfies_matching(a, y)) return false;
  }
}

namespace detail {

struct KernelSearch {
  const IntMatrix& a;
  unsigned bound;
  bool quad_filter;
  const OracleLimits& limits;

  // Columns are searched in an order that finishes rows as early as
  // possible (greedily: the unfinished row with the fewest unplaced support
  // columns goes next), so the completion and feasibility cuts fire high in
  // the tree.  x and the results stay in original coordinates.
  std::vector<std::size_t> order;
  std::vector<Integer> x;
  std::vector<Integer> row_sum;
  std::vector<std::vector<std::size_t>> rows_ending_at;  // by search position
  // Largest positive / largest-magnitude negative coefficient a row can
  // still see strictly after a search position: the feasibility bounds.
  std::vector<std::vector<Integer>> max_pos_after, max_neg_after;
  std::vector<int> quads_used;  // per tetrahedron, when quad_filter
  std::uint64_t nodes = 0;
  std::vector<NormalVector> found;

  explicit KernelSearch(const IntMatrix& a_, unsigned bound_, bool qf,
                        const OracleLimits& lim)
      : a(a_), bound(bound_), quad_filter(qf), limits(lim) {
    pick_order();
    x.assign(a.cols, 0);
    row_sum.assign(a.rows, 0);
    rows_ending_at.assign(a.cols, {});
    max_pos_after.assign(a.rows, std::vector<Integer>(a.cols + 1, 0));
    max_neg_after.assign(a.rows, std::vector<Integer>(a.cols + 1, 0));
    for (std::size_t r = 0; r < a.rows; ++r) {
      std::size_t last = a.cols;
      for (std::size_t pos = 0; pos < a.cols; ++pos)
        if (a.at(r, order[pos]) != 0) last = pos;
      if (last != a.cols) rows_ending_at[last].push_back(r);
      // all-zero rows hold trivially
      for (std::size_t pos = a.cols; pos-- > 0;) {
        Integer mp = max_pos_after[r][pos + 1], mn = max_neg_after[r][pos + 1];
        const Integer& v = a.at(r, order[pos]);
        if (v > mp) mp = v;
        if (-v > mn) mn = -v;
        max_pos_after[r][pos] = mp;
        max_neg_after[r][pos] = mn;
      }
    }
    if (qf) quads_used.assign(a.cols / 7, 0);
  }

  void pick_order() {
    std::vector<bool> placed(a.cols, false);
    std::vector<bool> done(a.rows, false);
    order.reserve(a.cols);
    for (;;) {
      std::size_t best_row = a.rows, best_missing = a.cols + 1;
      for (std::size_t r = 0; r < a.rows; ++r) {
        if (done[r]) continue;
        std::size_t missing = 0;
        for (std::size_t c = 0; c < a.cols; ++c)
          if (a.at(r, c) != 0 && !placed[c]) ++missing;
        if (missing == 0) {
          done[r] = true;
          continue;
        }
        if (missing < best_missing) {
          best_missing = missing;
          best_row = r;
        }
      }
      if (best_row == a.rows) break;
      for (std::size_t c = 0; c < a.cols; ++c)
        if (a.at(best_row, c) != 0 && !placed[c]) {
          placed[c] = true;
          order.push_back(c);
        }
      done[best_row] = true;
    }
    for (std::size_t c = 0; c < a.cols; ++c)
      if (!placed[c]) order.push_back(c);
  }

  // After fixing search positions 0..pos, every row must still be able to
  // reach zero with the remaining budget: a positive partial sum needs
  // enough negative capacity ahead, and vice versa.
  bool feasible(std::size_t pos, unsigned remaining) const {
    for (std::size_t r : rows_ending_at[pos])
      if (row_sum[r] != 0) return false;
    for (std::size_t r = 0; r < a.rows; ++r) {
      const Integer& s = row_sum[r];
      if (s > 0 && s > Integer(remaining) * max_neg_after[r][pos + 1])
        return false;
      if (s < 0 && -s > Integer(remaining) * max_pos_after[r][pos + 1])
        return false;
    }
    return true;
  }

  void run(std::size_t pos, unsigned remaining) {
    if (++nodes > limits.max_nodes)
      throw ScaleGuardError("kernel search: node budget exceeded");
    if (pos == a.cols) {
      if (!is_zero_vector(x)) found.push_back(x);
      return;
    }
    const std::size_t c = order[pos];
    const bool quad_blocked =
        quad_filter && (c % 7 >= 4) && quads_used[c / 7] >= 1;
    const unsigned top = quad_blocked ? 0 : remaining;
    for (unsigned val = 0; val <= top; ++val) {
      x[c] = val;
      if (val > 0) {
        for (std::size_t r = 0; r < a.rows; ++r)
          if (a.at(r, c) != 0) row_sum[r] += a.at(r, c);
        if (val == 1 && quad_filter && c % 7 >= 4) ++quads_used[c / 7];
      }
      if (feasible(pos, remaining - val)) run(pos + 1, remaining - val);
    }
    // undo the accumulated top * column contribution
    if (top > 0)
      for (std::size_t r = 0; r < a.rows; ++r)
        if (a.at(r, c) != 0) row_sum[r] -= Integer(top) * a.at(r, c);
    if (top > 0 && quad_filter && c % 7 >= 4) --quads_used[c / 7];
    x[c] = 0;
  }
};

}  // namespace detail

// Every admissible kernel point with coordinate sum <= bound that is not a
// sum of two smaller ones.  Bound adequacy is the caller's job (double the
// bound and compare).  When the column count is a multiple of 7 the
// quadrilateral constraints apply; otherwise no admissibility filter exists.
inline BasisSet brute_force_admissible_hilbert(const IntMatrix& a,
                                               unsigned bound,
                                               const OracleLimits& limits = {}) {
  const bool quads = a.cols % 7 == 0;
  detail::KernelSearch search(a, bound, quads, limits);
  search.run(0, bound);

  // Among all admissible kernel points up to the bound, x is reducible
  // exactly when a kept smaller point is dominated by it (the complement is
  // itself a kernel point below the bound).
  std::vector<NormalVector> pts = std::move(search.found);
  std::vector<std::size_t> order(pts.size());
  std::vector<Integer> sums(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    order[i] = i;
    sums[i] = coordinate_sum(pts[i]);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (sums[i] != sums[j]) return sums[i] < sums[j];
    return pts[i] < pts[j];
  });
  BasisSet basis;
  std::vector<const NormalVector*> kept;
  for (std::size_t oi : order) {
    bool reducible = false;
    for (const NormalVector* b : kept)
      if (dominates(pts[oi], *b)) {
        reducible = true;
        break;
      }
    if (!reducible) {
      auto [it, inserted] = basis.insert(pts[oi]);
      if (inserted) kept.push_back(&*it);
    }
  }
  return basis;
}

// Doubles the bound until two consecutive runs agree; the agreed set is the
// oracle's answer.  `start` must be at least 1.
inline BasisSet stable_hilbert_oracle(const IntMatrix& a, unsigned start = 4,
                                      const OracleLimits& limits = {}) {
  unsigned bound = start < 1 ? 1 : start;
  BasisSet prev = brute_force_admissible_hilbert(a, bound, limits);
  for (;;) {
    if (bound > 1u << 20)
      throw ScaleGuardError("stable_hilbert_oracle: bound runaway");
    bound *= 2;
    BasisSet next = brute_force_admissible_hilbert(a, bound, limits);
    if (next == prev) return next;
    prev = std::move(next);
  }
}

// Unfiltered double description with combinatorial adjacency: a pair is
// adjacent iff no third ray's zero set contains their common zeros, which is
// valid here because the ray list stays complete.  Independent of the
// production enumerator, which filters inline and decides adjacency by rank.
inline RaySet all_extremal_rays(const IntMatrix& a) {
  if (a.cols > 14)
    throw ScaleGuardError("all_extremal_rays: instance above test scale (7n > 14)");
  const std::size_t d = a.cols;

  struct Ray {
    NormalVector v;
    ZeroSet z;
  };
  std::vector<Ray> rays;
  for (std::size_t k = 0; k < d; ++k) {
    Ray r{unit_vector(d, k), ZeroSet(d, true)};
    r.z.reset(k);
    rays.push_back(std::move(r));
  }

  for (std::size_t row = 0; row < a.rows; ++row) {
    const NormalVector h = a.row_vec(row);
    std::vector<Integer> dots(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      dots[i] = dot(h, rays[i].v);
      if (dots[i] > 0)
        pos.push_back(i);
      else if (dots[i] < 0)
        neg.push_back(i);
      else
        next.push_back(rays[i]);
    }
    if (pos.empty() && neg.empty()) continue;
    std::set<NormalVector> combos;
    for (std::size_t ip : pos)
      for (std::size_t in : neg) {
        ZeroSet common = rays[ip].z.intersect(rays[in].z);
        bool adjacent = true;
        for (std::size_t iw = 0; iw < rays.size() && adjacent; ++iw)
          if (iw != ip && iw != in && common.subset_of(rays[iw].z))
            adjacent = false;
        if (!adjacent) continue;
        NormalVector w(d);
        for (std::size_t c = 0; c < d; ++c)
          w[c] = dots[ip] * rays[in].v[c] - dots[in] * rays[ip].v[c];
        divide_by_gcd(w);
        combos.insert(std::move(w));
      }
    for (const NormalVector& w : combos) next.push_back({w, zero_set(w)});
    rays = std::move(next);
  }

  std::sort(rays.begin(), rays.end(),
            [](const Ray& x, const Ray& y) { return x.v < y.v; });
  RaySet out;
  for (Ray& r : rays) {
    out.rays.push_back(std::move(r.v));
    out.zero_sets.push_back(std::move(r.z));
  }
  return out;
}

// Unfiltered double description followed by an admissibility post-filter;
// the reference for enumerate_admissible_rays.
inline RaySet brute_force_rays(const IntMatrix& a) {
  RaySet all = all_extremal_rays(a);
  const bool quads = a.cols % 7 == 0;
  RaySet out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (quads && !is_admissible_vector(all.rays[i])) continue;
    out.rays.push_back(std::move(all.rays[i]));
    out.zero_sets.push_back(std::move(all.zero_sets[i]));
  }
  return out;
}

// All admissible kernel points with coordinate sum between 1 and bound, in
// lexicographic order; the raw material behind the Hilbert oracle.
inline std::vector<NormalVector> enumerate_admissible_kernel_points(
    const IntMatrix& a, unsigned bound, const OracleLimits& limits = {}) {
  detail::KernelSearch search(a, bound, a.cols % 7 == 0, limits);
  search.run(0, bound);
  std::sort(search.found.begin(), search.found.end());
  return std::move(search.found);
}

}  // namespace nsurf
