#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "nsurf/cone.hpp"
#include "nsurf/deadline.hpp"
#include "nsurf/vertex_enum.hpp"
#include "nsurf/zeroset.hpp"

namespace nsurf {

// Zero sets of the maximal admissible faces, with the layer index at which
// each face was emitted (equal to the face's dimension).
struct MaximalFaceSet {
  std::vector<ZeroSet> faces;
  std::vector<std::size_t> dims;

  std::size_t size() const { return faces.size(); }
};

// Observer for the completed (deduplicated, maximality-reduced) layer S_k.
using LayerObserver =
    std::function<void(std::size_t k, const std::vector<ZeroSet>&)>;

// Maximal admissible face decomposition from the admissible extremal rays.
// Layer S_1 holds the ray zero sets; S_k is built by intersecting each
// z in S_{k-1} with every ray zero set v with z not a subset of v and the
// intersection admissible.  A z with no usable v is maximal.  Each layer is
// then reduced to its maximal elements by inclusion, and the previous layer
// is discarded.
inline MaximalFaceSet maximal_admissible_faces(const RaySet& v,
                                               const LayerObserver& observer = {},
                                               const Deadline& deadline = {}) {
  MaximalFaceSet out;
  if (v.empty()) return out;
  const std::size_t dim = v.zero_sets.front().size();

  std::vector<ZeroSet> s1 = v.zero_sets;
  std::sort(s1.begin(), s1.end());
  s1.erase(std::unique(s1.begin(), s1.end()), s1.end());
  if (observer) observer(1, s1);

  std::vector<ZeroSet> prev = s1;
  for (std::size_t k = 2; !prev.empty(); ++k) {
    if (k > dim + 1)
      throw std::logic_error("maximal_admissible_faces: layer index exceeded 7n");
    deadline.check();

    std::unordered_set<ZeroSet, ZeroSetHash> layer;
    for (const ZeroSet& z : prev) {
      bool extended = false;
      for (const ZeroSet& ray : s1) {
        if (z.subset_of(ray)) continue;
        ZeroSet joined = z.intersect(ray);
        if (!is_admissible_zeroset(joined)) continue;
        layer.insert(std::move(joined));
        extended = true;
      }
      if (!extended) {
        out.faces.push_back(z);
        out.dims.push_back(k - 1);
      }
    }

    std::vector<ZeroSet> next(layer.begin(), layer.end());
    std::sort(next.begin(), next.end());
    // Maximal elements by set inclusion.
    std::vector<bool> drop(next.size(), false);
    for (std::size_t i = 0; i < next.size(); ++i) {
      for (std::size_t j = 0; j < next.size() && !drop[i]; ++j) {
        if (i == j || drop[j]) continue;
        if (next[i] != next[j] && next[i].subset_of(next[j])) drop[i] = true;
      }
    }
    std::vector<ZeroSet> reduced;
    for (std::size_t i = 0; i < next.size(); ++i)
      if (!drop[i]) reduced.push_back(next[i]);

    if (observer && !reduced.empty()) observer(k, reduced);
    prev = std::move(reduced);
  }

  // Deterministic face order.
  std::vector<std::size_t> order(out.faces.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return out.faces[a] < out.faces[b];
  });
  MaximalFaceSet sorted;
  for (std::size_t i : order) {
    sorted.faces.push_back(out.faces[i]);
    sorted.dims.push_back(out.dims[i]);
  }
  return sorted;
}

// Debug dump: one line per maximal face, zero-set bitmask as hex plus the
// face dimension.
inline std::string format_faces(const MaximalFaceSet& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += m.faces[i].to_hex();
    out += ' ';
    out += std::to_string(m.dims[i]);
    out += '\n';
  }
  return out;
}

// The extremal rays of the face with zero set f: exactly the rays whose own
// zero set contains f.
inline RaySet rays_in_face(const RaySet& v, const ZeroSet& f) {
  RaySet out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (f.subset_of(v.zero_sets[i])) {
      out.rays.push_back(v.rays[i]);
      out.zero_sets.push_back(v.zero_sets[i]);
    }
  }
  return out;
}

}  // namespace nsurf
