#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

#include "nsurf/cone.hpp"
#include "nsurf/deadline.hpp"
#include "nsurf/integer.hpp"
#include "nsurf/linalg.hpp"
#include "nsurf/triangulation.hpp"
#include "nsurf/zeroset.hpp"

namespace nsurf {

// Admissible extremal rays of {Ax=0, x>=0}: the vertex normal surfaces.
// Each ray is the smallest integer vector on its ray (coordinate gcd 1);
// rays are lexicographically sorted with zero sets in parallel.
struct RaySet {
  std::vector<NormalVector> rays;
  std::vector<ZeroSet> zero_sets;

  std::size_t size() const { return rays.size(); }
  bool empty() const { return rays.empty(); }
};

// Position-vector row ordering: rows whose first nonzero coordinate comes
// later are processed first; ties prefer the lexicographically smaller
// nonzero-support pattern, and the sort is stable.
inline std::vector<std::size_t> sort_rows_position(const IntMatrix& a) {
  struct Key {
    std::size_t first_nz;
    std::vector<bool> support;
  };
  std::vector<Key> keys(a.rows);
  for (std::size_t r = 0; r < a.rows; ++r) {
    keys[r].first_nz = a.cols;
    keys[r].support.resize(a.cols);
    for (std::size_t c = 0; c < a.cols; ++c) {
      if (a.at(r, c) != 0) {
        keys[r].support[c] = true;
        if (keys[r].first_nz == a.cols) keys[r].first_nz = c;
      }
    }
  }
  std::vector<std::size_t> order(a.rows);
  for (std::size_t r = 0; r < a.rows; ++r) order[r] = r;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) {
                     if (keys[x].first_nz != keys[y].first_nz)
                       return keys[x].first_nz > keys[y].first_nz;
                     return keys[x].support < keys[y].support;
                   });
  return order;
}

inline std::vector<std::size_t> sort_rows_position(const MatchingMatrix& a) {
  return sort_rows_position(a.to_matrix());
}

namespace detail {

struct DDRay {
  NormalVector v;
  ZeroSet z;
};

// Adjacency of two extremal rays in the cone cut out by `eq_rows` within the
// orthant: the minimal face containing both must be 2-dimensional, i.e.
// rank([rows; unit rows of the common zero set]) == d - 2.  The unit rows
// eliminate their columns outright, so only the equation rows restricted to
// the surviving columns need elimination.
inline bool rank_adjacent(const IntMatrix& eq_rows, const ZeroSet& common,
                          std::size_t dim) {
  std::vector<std::size_t> live;
  for (std::size_t k = 0; k < dim; ++k)
    if (!common.test(k)) live.push_back(k);
  const std::size_t zeros = dim - live.size();
  if (dim - 2 < zeros) return false;
  const std::size_t want = dim - 2 - zeros;
  if (want > eq_rows.rows || want > live.size()) return false;
  IntMatrix m(eq_rows.rows, live.size());
  for (std::size_t r = 0; r < eq_rows.rows; ++r)
    for (std::size_t c = 0; c < live.size(); ++c)
      m.at(r, c) = eq_rows.at(r, live[c]);
  return rank(m) == want;
}

}  // namespace detail

// Quadrilateral-filtered double description over {Ax=0, x>=0}: starts from
// the orthant's extremal rays, intersects with each matching hyperplane in
// position-vector order, and drops any combination whose zero set breaks the
// quadrilateral constraints.  Dropping is sound because admissibility is
// inherited downward along supports, so no admissible extremal ray can ever
// arise from an inadmissible parent.
inline RaySet enumerate_admissible_rays(const IntMatrix& a,
                                        const Deadline& deadline = {}) {
  if (a.cols % 7 != 0)
    throw std::invalid_argument("enumerate_admissible_rays: columns not 7n");
  const std::size_t d = a.cols;

  std::vector<detail::DDRay> rays;
  rays.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    detail::DDRay r{unit_vector(d, k), ZeroSet(d, true)};
    r.z.reset(k);
    rays.push_back(std::move(r));
  }

  IntMatrix processed(0, d);
  for (std::size_t idx : sort_rows_position(a)) {
    deadline.check();
    const NormalVector h = a.row_vec(idx);

    std::vector<Integer> dots(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<detail::DDRay> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      dots[i] = dot(h, rays[i].v);
      if (dots[i] > 0)
        pos.push_back(i);
      else if (dots[i] < 0)
        neg.push_back(i);
      else
        next.push_back(rays[i]);
    }
    if (pos.empty() && neg.empty()) continue;  // hyperplane contains the cone

    std::set<NormalVector> combos;
    std::size_t pair_tick = 0;
    for (std::size_t ip : pos) {
      for (std::size_t in : neg) {
        if ((++pair_tick & 1023u) == 0) deadline.check();
        ZeroSet common = rays[ip].z.intersect(rays[in].z);
        if (!is_admissible_zeroset(common)) continue;
        // Cheap combinatorial rejection: a third ray inside the common face
        // rules the pair out regardless of the filtering.
        bool witness = false;
        for (std::size_t iw = 0; iw < rays.size() && !witness; ++iw)
          if (iw != ip && iw != in && common.subset_of(rays[iw].z))
            witness = true;
        if (witness) continue;
        if (!detail::rank_adjacent(processed, common, d)) continue;
        NormalVector w(d);
        for (std::size_t c = 0; c < d; ++c)
          w[c] = dots[ip] * rays[in].v[c] - dots[in] * rays[ip].v[c];
        divide_by_gcd(w);
        combos.insert(std::move(w));
      }
    }
    for (const NormalVector& w : combos)
      next.push_back({w, zero_set(w)});

    rays = std::move(next);
    processed.append_row(h);
  }

  std::sort(rays.begin(), rays.end(),
            [](const detail::DDRay& x, const detail::DDRay& y) {
              return x.v < y.v;
            });
  RaySet out;
  out.rays.reserve(rays.size());
  out.zero_sets.reserve(rays.size());
  for (detail::DDRay& r : rays) {
    out.rays.push_back(std::move(r.v));
    out.zero_sets.push_back(std::move(r.z));
  }
  return out;
}

inline RaySet enumerate_admissible_rays(const MatchingMatrix& a,
                                        const Deadline& deadline = {}) {
  return enumerate_admissible_rays(a.to_matrix(), deadline);
}

}  // namespace nsurf
