#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "nsurf/cone.hpp"
#include "nsurf/deadline.hpp"
#include "nsurf/face_decomposition.hpp"
#include "nsurf/integer.hpp"
#include "nsurf/linalg.hpp"
#include "nsurf/parallel.hpp"
#include "nsurf/triangulation.hpp"
#include "nsurf/vertex_enum.hpp"

namespace nsurf {

// Deduplicated set of normal vectors, ordered lexicographically.
using BasisSet = std::set<NormalVector>;

// A cone whose generators are linearly independent; each generator is the
// smallest integer vector on its ray.
struct SimplicialCone {
  std::vector<NormalVector> generators;
};

namespace detail {

// Linear functional on the span that vanishes on the facet generators,
// evaluated through a fixed set of projection columns.  phi(x) is the
// determinant of the facet rows and x, all restricted to those columns.
struct FacetFunctional {
  std::vector<Integer> cof;            // cofactors, one per projection column
  std::vector<std::size_t> proj_cols;

  Integer eval(const NormalVector& x) const {
    Integer s = 0;
    for (std::size_t j = 0; j < proj_cols.size(); ++j)
      s += cof[j] * x[proj_cols[j]];
    return s;
  }
};

inline FacetFunctional facet_functional(
    const std::vector<NormalVector>& facet_rays,
    const std::vector<std::size_t>& proj_cols) {
  const std::size_t k = proj_cols.size();  // facet_rays has k-1 rows
  FacetFunctional f;
  f.proj_cols = proj_cols;
  f.cof.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    IntMatrix minor(k - 1, k - 1);
    for (std::size_t r = 0; r + 1 < k; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < k; ++c) {
        if (c == j) continue;
        minor.at(r, cc++) = facet_rays[r][proj_cols[c]];
      }
    }
    Integer d = determinant(minor);
    f.cof[j] = ((k - 1 + j) % 2 == 0) ? d : -d;
  }
  return f;
}

}  // namespace detail

// Placing (incremental) triangulation of a pointed cone given by its
// extremal rays, processed in input order.  While a new ray enlarges the
// linear span, it is joined to every current simplex; once it falls inside
// the span it is joined to the boundary facets visible from it.
inline std::vector<SimplicialCone> triangulate_cone(
    const std::vector<NormalVector>& rays) {
  std::vector<SimplicialCone> out;
  if (rays.empty()) return out;
  const std::size_t d = rays.front().size();
  for (const NormalVector& r : rays) {
    if (r.size() != d)
      throw std::invalid_argument("triangulate_cone: mixed dimensions");
    if (is_zero_vector(r))
      throw std::invalid_argument("triangulate_cone: zero ray");
  }

  std::vector<std::vector<std::size_t>> simplices;
  std::vector<std::size_t> basis;      // ray indices spanning the current span
  std::vector<std::size_t> proj_cols;  // pivot columns of the span echelon
  std::vector<NormalVector> echelon;   // cross-multiplied echelon rows

  // Reduces v against the echelon; empties v exactly when v is in the span.
  auto eliminate = [&](NormalVector v) {
    for (std::size_t i = 0; i < echelon.size(); ++i) {
      const Integer& piv = echelon[i][proj_cols[i]];
      const Integer coef = v[proj_cols[i]];
      if (coef == 0) continue;
      for (std::size_t c = 0; c < d; ++c)
        v[c] = piv * v[c] - coef * echelon[i][c];
    }
    return v;
  };

  for (std::size_t j = 0; j < rays.size(); ++j) {
    const NormalVector& r = rays[j];
    NormalVector rest = eliminate(r);
    const bool grows = !is_zero_vector(rest);

    if (grows) {
      for (auto& s : simplices) s.push_back(j);
      if (simplices.empty()) simplices.push_back({j});
      basis.push_back(j);
      divide_by_gcd(rest);
      std::size_t pc = 0;
      while (rest[pc] == 0) ++pc;
      proj_cols.push_back(pc);
      echelon.push_back(std::move(rest));
      continue;
    }

    const std::size_t k = basis.size();
    if (k == 1) {
      // r is a multiple of the single existing direction.
      const NormalVector& b0 = rays[basis[0]];
      const std::size_t c = proj_cols[0];
      const bool same_side = (r[c] > 0) == (b0[c] > 0);
      if (!same_side)
        throw std::invalid_argument("triangulate_cone: cone is not pointed");
      throw std::invalid_argument("triangulate_cone: redundant ray");
    }

    // Boundary facets: (k-1)-subsets owned by exactly one simplex.
    std::map<std::vector<std::size_t>, std::vector<std::pair<std::size_t, std::size_t>>>
        facets;  // facet -> (simplex index, omitted ray)
    for (std::size_t si = 0; si < simplices.size(); ++si) {
      const auto& s = simplices[si];
      for (std::size_t omit = 0; omit < s.size(); ++omit) {
        std::vector<std::size_t> facet;
        facet.reserve(s.size() - 1);
        for (std::size_t i = 0; i < s.size(); ++i)
          if (i != omit) facet.push_back(s[i]);
        facets[facet].emplace_back(si, s[omit]);
      }
    }

    bool visible_any = false;
    std::vector<std::vector<std::size_t>> added;
    for (const auto& [facet, owners] : facets) {
      if (owners.size() != 1) continue;
      std::vector<NormalVector> facet_rays;
      facet_rays.reserve(facet.size());
      for (std::size_t fi : facet) facet_rays.push_back(rays[fi]);
      detail::FacetFunctional phi = detail::facet_functional(facet_rays, proj_cols);
      Integer apex = phi.eval(rays[owners[0].second]);
      if (apex == 0)
        throw std::logic_error("triangulate_cone: degenerate facet");
      Integer val = phi.eval(r);
      const bool visible = apex > 0 ? val < 0 : val > 0;
      if (!visible) continue;
      visible_any = true;
      std::vector<std::size_t> s = facet;
      s.push_back(j);
      std::sort(s.begin(), s.end());
      added.push_back(std::move(s));
    }
    if (!visible_any)
      throw std::invalid_argument(
          "triangulate_cone: ray lies inside the current cone (not extremal)");
    for (auto& s : added) simplices.push_back(std::move(s));
  }

  out.reserve(simplices.size());
  for (const auto& s : simplices) {
    SimplicialCone c;
    c.generators.reserve(s.size());
    for (std::size_t i : s) {
      NormalVector g = rays[i];
      divide_by_gcd(g);
      c.generators.push_back(std::move(g));
    }
    out.push_back(std::move(c));
  }
  return out;
}

// All integer points of the semi-open parallelotope spanned by the
// generators (0 <= lambda_i < 1), the origin included.  The generators are
// written in a basis L of (integer lattice intersect their span); the
// quotient by the generator lattice has one representative per mixed-radix
// index below the Smith diagonal, and each representative is folded back
// into the parallelotope by subtracting integer parts.
inline std::vector<NormalVector> parallelotope_points(const SimplicialCone& s) {
  const std::size_t k = s.generators.size();
  if (k == 0)
    throw std::invalid_argument("parallelotope_points: no generators");
  const std::size_t d = s.generators.front().size();

  IntMatrix b(k, d);
  for (std::size_t i = 0; i < k; ++i) b.set_row(i, s.generators[i]);

  std::vector<NormalVector> points;
  points.push_back(NormalVector(d));
  {
    // Unit lattice index is the common case; detect it without transform
    // bookkeeping before paying for the full form.
    SmithResult probe = smith_normal_form(b, false);
    Integer idx = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (probe.d.at(i, i) == 0)
        throw std::invalid_argument("parallelotope_points: generators dependent");
      idx *= probe.d.at(i, i);
    }
    if (idx == 1) return points;
  }

  SmithResult snf = smith_normal_form(b);
  std::vector<Integer> diag(k);
  Integer index = 1;
  for (std::size_t i = 0; i < k; ++i) {
    diag[i] = snf.d.at(i, i);
    index *= diag[i];
  }

  // L: first k rows of W^-1; M expresses the generators over L.
  IntMatrix lat(k, d);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < d; ++c) lat.at(i, c) = snf.right_inv.at(i, c);
  IntMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      m.at(i, j) = snf.left_inv.at(i, j) * diag[j];
  IntMatrix mt = m.transposed();
  const Integer den_signed = determinant(mt);

  std::vector<Integer> t(k);
  // Mixed-radix counter over the Smith diagonal; t = 0 is the origin above.
  auto advance = [&]() {
    for (std::size_t i = k; i-- > 0;) {
      if (++t[i] < diag[i]) return true;
      t[i] = 0;
    }
    return false;
  };
  while (advance()) {
    // lambda solves M^T lambda = t; fold each coordinate into [0,1).
    CramerSolution sol;
    sol.den = den_signed;
    sol.num.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
      IntMatrix mi = mt;
      for (std::size_t r = 0; r < k; ++r) mi.at(r, i) = t[r];
      sol.num[i] = determinant(mi);
    }
    std::vector<Integer> fl(k);
    for (std::size_t i = 0; i < k; ++i) {
      Integer num = sol.num[i], dn = sol.den;
      if (dn < 0) {
        num = -num;
        dn = -dn;
      }
      fl[i] = floor_div(num, dn);
    }
    std::vector<Integer> xr(k);
    for (std::size_t i = 0; i < k; ++i) {
      xr[i] = t[i];
      for (std::size_t j = 0; j < k; ++j) xr[i] -= mt.at(i, j) * fl[j];
    }
    NormalVector p(d);
    for (std::size_t i = 0; i < k; ++i) {
      if (xr[i] == 0) continue;
      for (std::size_t c = 0; c < d; ++c) p[c] += xr[i] * lat.at(i, c);
    }
    points.push_back(std::move(p));
  }

  if (Integer(points.size()) != index)
    throw std::logic_error("parallelotope_points: residue count mismatch");
  std::sort(points.begin(), points.end());
  return points;
}

// Exact membership test against a union of simplicial pieces, with the
// per-piece solve (pivot columns, determinant, adjugate) computed once.
class ConeMembership {
 public:
  explicit ConeMembership(const std::vector<SimplicialCone>& pieces) {
    for (const SimplicialCone& s : pieces) {
      Piece p;
      p.k = s.generators.size();
      p.d = s.generators.front().size();
      p.gens = IntMatrix(p.k, p.d);
      for (std::size_t i = 0; i < p.k; ++i) p.gens.set_row(i, s.generators[i]);
      p.cols = independent_columns(p.gens);
      IntMatrix sq(p.k, p.k);
      for (std::size_t i = 0; i < p.k; ++i)
        for (std::size_t j = 0; j < p.k; ++j)
          sq.at(i, j) = p.gens.at(j, p.cols[i]);
      p.det = determinant(sq);
      // adj * sq == det * I, entries as transposed cofactors
      p.adj = IntMatrix(p.k, p.k);
      for (std::size_t i = 0; i < p.k; ++i)
        for (std::size_t j = 0; j < p.k; ++j) {
          IntMatrix minor(p.k - 1, p.k - 1);
          std::size_t rr = 0;
          for (std::size_t r = 0; r < p.k; ++r) {
            if (r == j) continue;
            std::size_t cc = 0;
            for (std::size_t c = 0; c < p.k; ++c) {
              if (c == i) continue;
              minor.at(rr, cc++) = sq.at(r, c);
            }
            ++rr;
          }
          Integer m = p.k == 1 ? Integer(1) : determinant(minor);
          p.adj.at(i, j) = ((i + j) % 2 == 0) ? m : -m;
        }
      pieces_.push_back(std::move(p));
    }
  }

  bool contains(const NormalVector& v) const {
    for (const Piece& p : pieces_) {
      if (v.size() != p.d)
        throw std::invalid_argument("ConeMembership: dimension mismatch");
      std::vector<Integer> num(p.k);
      for (std::size_t i = 0; i < p.k; ++i) {
        for (std::size_t j = 0; j < p.k; ++j)
          num[i] += p.adj.at(i, j) * v[p.cols[j]];
      }
      const bool den_pos = p.det > 0;
      bool ok = true;
      for (std::size_t i = 0; i < p.k && ok; ++i)
        if (den_pos ? num[i] < 0 : num[i] > 0) ok = false;
      if (!ok) continue;
      // Verify the combination over all coordinates, not just the pivots.
      for (std::size_t c = 0; c < p.d && ok; ++c) {
        Integer lhs = 0;
        for (std::size_t i = 0; i < p.k; ++i)
          lhs += num[i] * p.gens.at(i, c);
        if (lhs != p.det * v[c]) ok = false;
      }
      if (ok) return true;
    }
    return false;
  }

  bool empty() const { return pieces_.empty(); }

 private:
  struct Piece {
    std::size_t k = 0, d = 0;
    IntMatrix gens;
    std::vector<std::size_t> cols;
    Integer det;
    IntMatrix adj;
  };
  std::vector<Piece> pieces_;
};

inline bool cone_contains(const std::vector<SimplicialCone>& pieces,
                          const NormalVector& v) {
  return ConeMembership(pieces).contains(v);
}

// Removes reducible generators: x goes if some kept b satisfies x - b >= 0
// componentwise (and, when pieces are supplied, x - b lies in the cone).
// Candidates are processed in increasing coordinate-sum order, so a single
// pass leaves exactly the irreducible elements.  The componentwise-only form
// is exact for faces of the matching cone, where x - b >= 0 already implies
// membership; for a cone given by arbitrary extremal rays pass its pieces.
inline BasisSet reduce_generators(const BasisSet& candidates,
                                  const std::vector<SimplicialCone>& pieces) {
  std::vector<NormalVector> ordered(candidates.begin(), candidates.end());
  for (const NormalVector& x : ordered)
    if (is_zero_vector(x))
      throw std::invalid_argument("reduce_generators: zero vector candidate");
  std::vector<Integer> sums(ordered.size());
  std::vector<std::size_t> order(ordered.size());
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    sums[i] = coordinate_sum(ordered[i]);
    order[i] = i;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sums[a] != sums[b]) return sums[a] < sums[b];
    return ordered[a] < ordered[b];
  });

  // The membership solver is only needed once a dominance pair shows up.
  std::optional<ConeMembership> membership;
  auto in_cone = [&](const NormalVector& v) {
    if (pieces.empty()) return true;
    if (!membership) membership.emplace(pieces);
    return membership->contains(v);
  };

  BasisSet kept;
  std::vector<const NormalVector*> kept_list;
  for (std::size_t oi : order) {
    const NormalVector& x = ordered[oi];
    bool reducible = false;
    for (const NormalVector* b : kept_list) {
      if (!dominates(x, *b)) continue;
      if (in_cone(sub(x, *b))) {
        reducible = true;
        break;
      }
    }
    if (!reducible) {
      auto [it, inserted] = kept.insert(x);
      if (inserted) kept_list.push_back(&*it);
    }
  }
  return kept;
}

inline BasisSet reduce_generators(const BasisSet& candidates) {
  return reduce_generators(candidates, {});
}

// Bruns-Ichim-Koch over one cone: triangulate, collect every parallelotope
// point of every piece plus the rays themselves, and reduce.
inline BasisSet hilbert_basis_simplicial_union(
    const std::vector<NormalVector>& rays, const Deadline& deadline = {}) {
  if (rays.empty()) return {};
  std::vector<SimplicialCone> pieces = triangulate_cone(rays);
  BasisSet candidates;
  for (const SimplicialCone& s : pieces) {
    deadline.check();
    for (NormalVector& p : parallelotope_points(s))
      if (!is_zero_vector(p)) candidates.insert(std::move(p));
  }
  for (const NormalVector& r : rays) candidates.insert(r);
  return reduce_generators(candidates, pieces);
}

struct PrimalStats {
  std::int64_t vertex_ms = 0;
  std::int64_t faces_ms = 0;
  std::int64_t hilbert_ms = 0;
  std::size_t vertex_count = 0;
  std::size_t face_count = 0;
};

struct PrimalOptions {
  std::size_t workers = 1;
  Deadline deadline;
};

// Primal pipeline for fundamental normal surfaces: admissible extremal rays,
// maximal admissible faces, then one Hilbert basis per face; the union over
// faces is the answer.  Per-face computations are independent, so they may
// be spread across workers; the merged set does not depend on the schedule.
inline BasisSet fundamental_primal(const Triangulation& tri,
                                   const PrimalOptions& opts = {},
                                   PrimalStats* stats = nullptr) {
  using clock = std::chrono::steady_clock;
  const MatchingMatrix a = matching_matrix(tri);

  auto t0 = clock::now();
  const RaySet v = enumerate_admissible_rays(a, opts.deadline);
  auto t1 = clock::now();
  const MaximalFaceSet faces = maximal_admissible_faces(v, {}, opts.deadline);
  auto t2 = clock::now();

  std::vector<BasisSet> per_face(faces.size());
  parallel_for(faces.size(), opts.workers, [&](std::size_t i) {
    RaySet face_rays = rays_in_face(v, faces.faces[i]);
    per_face[i] = hilbert_basis_simplicial_union(face_rays.rays, opts.deadline);
  });
  BasisSet out;
  for (BasisSet& f : per_face) out.merge(f);
  auto t3 = clock::now();

  if (stats) {
    auto ms = [](auto a, auto b) {
      return std::chrono::duration_cast<std::chrono::milliseconds>(b - a).count();
    };
    stats->vertex_ms = ms(t0, t1);
    stats->faces_ms = ms(t1, t2);
    stats->hilbert_ms = ms(t2, t3);
    stats->vertex_count = v.size();
    stats->face_count = faces.size();
  }
  return out;
}

}  // namespace nsurf
