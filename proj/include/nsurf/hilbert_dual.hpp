#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "nsurf/cone.hpp"
#include "nsurf/deadline.hpp"
#include "nsurf/hilbert_primal.hpp"  // BasisSet
#include "nsurf/integer.hpp"
#include "nsurf/linalg.hpp"
#include "nsurf/triangulation.hpp"
#include "nsurf/vertex_enum.hpp"

namespace nsurf {

// Optional constraint filter applied to every expansion sum; an empty
// function means no filtering.
using VecFilter = std::function<bool(const NormalVector&)>;

struct StepLimits {
  std::size_t round_cap = 100000;  // exceeding this is a bug, not an input
  Deadline deadline;
};

struct InductiveResult {
  BasisSet plus;   // Hilbert basis of the h >= 0 side
  BasisSet minus;  // Hilbert basis of the h <= 0 side
  BasisSet zero;   // their intersection: basis of the hyperplane slice
  std::size_t peak_candidates = 0;
  std::size_t rounds = 0;
};

namespace detail {

struct DualEntry {
  NormalVector v;
  Integer hdot;
  Integer sum;
  std::size_t stamp;
  bool alive = true;
};

// b is redundant against the h >= 0 candidate set if some other member b'
// has b - b' >= 0 componentwise and h.(b - b') >= 0 (mirrored for <= 0).
// Members of the working sets already satisfy the rows processed so far, so
// the difference lies in the carrier cone exactly when these two checks pass.
inline bool reducible_against(const NormalVector& v, const Integer& hdot,
                              const Integer& vsum,
                              int side,  // +1 for B+, -1 for B-
                              const std::vector<DualEntry>& strict,
                              const std::vector<DualEntry>& on_plane,
                              const DualEntry* self) {
  for (const DualEntry& b : on_plane) {
    if (!b.alive || &b == self) continue;
    if (b.sum > vsum) continue;
    if (dominates(v, b.v)) return true;  // h.(v - b) = h.v, sign matches side
  }
  for (const DualEntry& b : strict) {
    if (!b.alive || &b == self) continue;
    if (b.sum > vsum) continue;
    if (side > 0 ? hdot < b.hdot : hdot > b.hdot) continue;
    if (dominates(v, b.v)) return true;
  }
  return false;
}

}  // namespace detail

// One Bruns-Ichim-Pottier inductive step.  The candidate bases are kept as a
// three-way split by the sign of h.x to avoid duplicating the hyperplane.
// Each round expands with sums x + y over strictly-positive/strictly-negative
// pairs (filter applied first, reduction tested before insertion per the
// merged optimisation) and then runs a full reduction pass; only pairs with
// a member from the previous round are revisited.  A round with no change is
// the fixed point.
inline InductiveResult inductive_step(const BasisSet& basis,
                                      const NormalVector& h,
                                      const VecFilter& filter = {},
                                      const StepLimits& limits = {}) {
  using detail::DualEntry;
  std::vector<DualEntry> pos, neg, zer;
  for (const NormalVector& x : basis) {
    Integer hd = dot(h, x);
    DualEntry e{x, hd, coordinate_sum(x), 0, true};
    if (hd > 0)
      pos.push_back(std::move(e));
    else if (hd < 0)
      neg.push_back(std::move(e));
    else
      zer.push_back(std::move(e));
  }

  InductiveResult res;
  res.peak_candidates = pos.size() + neg.size() + zer.size();

  for (std::size_t round = 1;; ++round) {
    if (round > limits.round_cap)
      throw std::logic_error("inductive_step: round cap exceeded");
    limits.deadline.check();
    bool changed = false;

    // Expansion: only pairs involving an element stamped in the last round.
    const std::size_t np = pos.size(), nn = neg.size();
    std::size_t tick = 0;
    for (std::size_t ip = 0; ip < np; ++ip) {
      if (!pos[ip].alive) continue;
      for (std::size_t in = 0; in < nn; ++in) {
        if (!neg[in].alive) continue;
        const std::size_t newest = std::max(pos[ip].stamp, neg[in].stamp);
        if (newest + 1 != round) continue;
        if ((++tick & 1023u) == 0) limits.deadline.check();

        NormalVector s = add(pos[ip].v, neg[in].v);
        if (filter && !filter(s)) continue;
        Integer hs = pos[ip].hdot + neg[in].hdot;
        DualEntry e{std::move(s), hs, pos[ip].sum + neg[in].sum, round, true};
        if (hs > 0) {
          if (!detail::reducible_against(e.v, e.hdot, e.sum, +1, pos, zer,
                                         nullptr)) {
            pos.push_back(std::move(e));
            changed = true;
          }
        } else if (hs < 0) {
          if (!detail::reducible_against(e.v, e.hdot, e.sum, -1, neg, zer,
                                         nullptr)) {
            neg.push_back(std::move(e));
            changed = true;
          }
        } else {
          if (!detail::reducible_against(e.v, e.hdot, e.sum, +1, {}, zer,
                                         nullptr)) {
            zer.push_back(std::move(e));
            changed = true;
          }
        }
      }
    }

    res.peak_candidates = std::max(
        res.peak_candidates, pos.size() + neg.size() + zer.size());

    // Full reduction pass over each candidate set.
    for (DualEntry& b : pos)
      if (b.alive &&
          detail::reducible_against(b.v, b.hdot, b.sum, +1, pos, zer, &b)) {
        b.alive = false;
        changed = true;
      }
    for (DualEntry& b : neg)
      if (b.alive &&
          detail::reducible_against(b.v, b.hdot, b.sum, -1, neg, zer, &b)) {
        b.alive = false;
        changed = true;
      }
    for (DualEntry& b : zer)
      if (b.alive &&
          detail::reducible_against(b.v, b.hdot, b.sum, +1, {}, zer, &b)) {
        b.alive = false;
        changed = true;
      }

    res.rounds = round;
    if (!changed) break;
  }

  for (const auto& e : zer)
    if (e.alive) {
      res.plus.insert(e.v);
      res.minus.insert(e.v);
      res.zero.insert(e.v);
    }
  for (const auto& e : pos)
    if (e.alive) res.plus.insert(e.v);
  for (const auto& e : neg)
    if (e.alive) res.minus.insert(e.v);
  return res;
}

struct RowProgress {
  std::size_t row = 0;  // 1-based position in processing order
  std::size_t plus_size = 0;
  std::size_t minus_size = 0;
  std::size_t zero_size = 0;
  std::int64_t ms = 0;
};

struct DualOptions {
  StepLimits limits;
  std::function<void(const RowProgress&)> progress;
  std::vector<BasisSet>* snapshots = nullptr;  // B^(i) per row, for testing
};

struct DualRun {
  BasisSet basis;
  std::size_t peak_candidates = 0;
  std::vector<RowProgress> rows;
};

// Shared dual pipeline: start from the unit vectors of R^d and slice with
// each row of A in the given order, carrying only the h = 0 side forward.
inline DualRun hilbert_dual_pipeline(const IntMatrix& a,
                                     const std::vector<std::size_t>& row_order,
                                     const VecFilter& filter,
                                     const DualOptions& opts = {}) {
  using clock = std::chrono::steady_clock;
  DualRun run;
  BasisSet basis;
  for (std::size_t k = 0; k < a.cols; ++k) basis.insert(unit_vector(a.cols, k));
  run.peak_candidates = basis.size();

  std::size_t pos = 0;
  for (std::size_t idx : row_order) {
    auto t0 = clock::now();
    InductiveResult step = inductive_step(basis, a.row_vec(idx), filter, opts.limits);
    basis = std::move(step.zero);
    run.peak_candidates = std::max(run.peak_candidates, step.peak_candidates);

    RowProgress p;
    p.row = ++pos;
    p.plus_size = step.plus.size();
    p.minus_size = step.minus.size();
    p.zero_size = basis.size();
    p.ms = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0)
               .count();
    run.rows.push_back(p);
    if (opts.progress) opts.progress(p);
    if (opts.snapshots) opts.snapshots->push_back(basis);
  }
  run.basis = std::move(basis);
  return run;
}

// Generic dual Hilbert basis of {Ax=0, x>=0}, no constraint filtering; the
// cross-check comparator for the filtered pipeline.
inline BasisSet hilbert_basis_dual_unfiltered(const IntMatrix& a,
                                              const DualOptions& opts = {}) {
  return hilbert_dual_pipeline(a, sort_rows_position(a), {}, opts).basis;
}

// Quadrilateral-filtered dual pipeline over the matching matrix, rows in
// position-vector order: the fundamental normal surfaces.
inline DualRun fundamental_dual_run(const Triangulation& tri,
                                    const DualOptions& opts = {}) {
  IntMatrix a = matching_matrix(tri).to_matrix();
  return hilbert_dual_pipeline(
      a, sort_rows_position(a),
      [](const NormalVector& v) { return is_admissible_vector(v); }, opts);
}

inline BasisSet fundamental_dual(const Triangulation& tri,
                                 const DualOptions& opts = {}) {
  return fundamental_dual_run(tri, opts).basis;
}

}  // namespace nsurf
