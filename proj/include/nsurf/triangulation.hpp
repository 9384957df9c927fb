#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nsurf/cone.hpp"
#include "nsurf/errors.hpp"
#include "nsurf/integer.hpp"
#include "nsurf/linalg.hpp"

namespace nsurf {

// A generalized triangulation: n tetrahedra with faces affinely identified
// in pairs.  Face f of a tetrahedron is the face opposite vertex f.  A
// gluing permutation maps the source tetrahedron's vertex labels to the
// target's, and must send vertex f to the target face index.
struct FaceGluing {
  int tet = -1;   // target tetrahedron, or -1 for a boundary face
  int face = -1;  // target face
  std::array<int, 4> perm{0, 1, 2, 3};

  bool boundary() const { return tet < 0; }

  bool operator==(const FaceGluing& o) const {
    return tet == o.tet && face == o.face && (boundary() || perm == o.perm);
  }
};

struct Triangulation {
  std::size_t tets = 0;
  std::vector<std::array<FaceGluing, 4>> glue;  // [tet][face]

  bool operator==(const Triangulation& o) const {
    return tets == o.tets && glue == o.glue;
  }
};

namespace detail {

inline std::array<int, 4> invert_perm(const std::array<int, 4>& p) {
  std::array<int, 4> q{};
  for (int i = 0; i < 4; ++i) q[p[i]] = i;
  return q;
}

inline bool is_identity(const std::array<int, 4>& p) {
  return p[0] == 0 && p[1] == 1 && p[2] == 2 && p[3] == 3;
}

}  // namespace detail

// Quadrilateral type separating vertex pair {a,b} from the other two:
// {0,1}|{2,3} -> 0, {0,2}|{1,3} -> 1, {0,3}|{1,2} -> 2.
inline int quad_index(int a, int b) {
  if (a == b || a < 0 || b < 0 || a > 3 || b > 3)
    throw std::invalid_argument("quad_index: bad vertex pair");
  if (a == 0) return b - 1;
  if (b == 0) return a - 1;
  return 5 - a - b;  // complement pair contains 0
}

/// Checks all triangulation invariants; throws ValidationError on failure.
inline void validate(const Triangulation& tri) {
  if (tri.tets == 0) throw ValidationError("triangulation has no tetrahedra");
  if (tri.glue.size() != tri.tets)
    throw ValidationError("gluing table size does not match tetrahedron count");
  for (std::size_t t = 0; t < tri.tets; ++t) {
    for (int f = 0; f < 4; ++f) {
      const FaceGluing& g = tri.glue[t][f];
      if (g.boundary()) continue;
      if (g.tet < 0 || static_cast<std::size_t>(g.tet) >= tri.tets)
        throw ValidationError("tetrahedron index out of range in gluing of tet " +
                              std::to_string(t) + " face " + std::to_string(f));
      if (g.face < 0 || g.face > 3)
        throw ValidationError("face index out of range in gluing of tet " +
                              std::to_string(t) + " face " + std::to_string(f));
      if (g.perm[f] != g.face)
        throw ValidationError("permutation does not map face " +
                              std::to_string(f) + " of tet " + std::to_string(t) +
                              " onto target face " + std::to_string(g.face));
      const FaceGluing& back = tri.glue[g.tet][g.face];
      if (back.boundary() || back.tet != static_cast<int>(t) || back.face != f ||
          back.perm != detail::invert_perm(g.perm))
        throw ValidationError("gluing of tet " + std::to_string(t) + " face " +
                              std::to_string(f) +
                              " is not matched by its inverse on the far side");
      if (g.tet == static_cast<int>(t) && g.face == f &&
          detail::is_identity(g.perm))
        throw ValidationError("face " + std::to_string(f) + " of tet " +
                              std::to_string(t) +
                              " is glued to itself by the identity");
    }
  }
}

// --- file format ------------------------------------------------------------
//
// UTF-8 text.  First non-comment line: the tetrahedron count n.  Then n
// lines, each with 4 whitespace-separated tokens for faces 0..3; a token is
// either `bdry` or `t:f:p` with t the target tetrahedron (0-based), f the
// target face (0-3) and p a 4-character permutation string whose i-th
// character is the image of vertex i (e.g. `1:2:0132`).  Lines starting
// with `#` are comments.

/// Parses and fully validates a triangulation.
inline Triangulation parse_triangulation(std::string_view text) {
  struct Tok {
    std::string s;
    std::size_t line, col;
  };
  std::vector<std::vector<Tok>> lines;
  {
    std::size_t lineno = 0, pos = 0;
    while (pos <= text.size()) {
      std::size_t eol = text.find('\n', pos);
      if (eol == std::string_view::npos) eol = text.size();
      std::string_view line = text.substr(pos, eol - pos);
      ++lineno;
      std::size_t first = line.find_first_not_of(" \t\r");
      if (first != std::string_view::npos && line[first] != '#') {
        std::vector<Tok> toks;
        std::size_t i = 0;
        while (i < line.size()) {
          while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
          if (i >= line.size()) break;
          std::size_t start = i;
          while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
            ++i;
          toks.push_back({std::string(line.substr(start, i - start)), lineno, start + 1});
        }
        if (!toks.empty()) lines.push_back(std::move(toks));
      }
      if (eol == text.size()) break;
      pos = eol + 1;
    }
  }

  if (lines.empty()) throw ParseError(1, 1, "empty input");
  const Tok& head = lines[0][0];
  if (lines[0].size() != 1)
    throw ParseError(lines[0][1].line, lines[0][1].col,
                     "unexpected token after tetrahedron count");
  std::size_t n = 0;
  for (char ch : head.s) {
    if (ch < '0' || ch > '9')
      throw ParseError(head.line, head.col, "tetrahedron count must be a positive integer");
    n = n * 10 + static_cast<std::size_t>(ch - '0');
    if (n > 100000) throw ParseError(head.line, head.col, "tetrahedron count too large");
  }
  if (n == 0)
    throw ParseError(head.line, head.col, "tetrahedron count must be a positive integer");
  if (lines.size() != n + 1)
    throw ParseError(head.line, head.col,
                     "expected " + std::to_string(n) + " gluing lines, found " +
                         std::to_string(lines.size() - 1));

  Triangulation tri;
  tri.tets = n;
  tri.glue.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    const auto& toks = lines[t + 1];
    if (toks.size() != 4)
      throw ParseError(toks[0].line, toks[0].col,
                       "expected 4 face tokens, found " + std::to_string(toks.size()));
    for (int f = 0; f < 4; ++f) {
      const Tok& tok = toks[static_cast<std::size_t>(f)];
      if (tok.s == "bdry") continue;
      FaceGluing g;
      std::size_t c1 = tok.s.find(':');
      std::size_t c2 = c1 == std::string::npos ? std::string::npos
                                               : tok.s.find(':', c1 + 1);
      if (c1 == std::string::npos || c2 == std::string::npos)
        throw ParseError(tok.line, tok.col, "expected `bdry` or `t:f:p`");
      std::string ts = tok.s.substr(0, c1);
      std::string fs = tok.s.substr(c1 + 1, c2 - c1 - 1);
      std::string ps = tok.s.substr(c2 + 1);
      auto parse_int = [&](const std::string& s, const char* what) {
        if (s.empty()) throw ParseError(tok.line, tok.col, std::string("missing ") + what);
        long v = 0;
        for (char ch : s) {
          if (ch < '0' || ch > '9')
            throw ParseError(tok.line, tok.col, std::string("bad ") + what);
          v = v * 10 + (ch - '0');
          if (v > 1000000) throw ParseError(tok.line, tok.col, std::string("bad ") + what);
        }
        return static_cast<int>(v);
      };
      g.tet = parse_int(ts, "target tetrahedron");
      g.face = parse_int(fs, "target face");
      if (static_cast<std::size_t>(g.tet) >= n)
        throw ParseError(tok.line, tok.col, "tetrahedron index out of range");
      if (g.face > 3)
        throw ParseError(tok.line, tok.col, "face index out of range");
      if (ps.size() != 4)
        throw ParseError(tok.line, tok.col, "permutation must have 4 characters");
      std::array<bool, 4> seen{};
      for (int i = 0; i < 4; ++i) {
        char ch = ps[static_cast<std::size_t>(i)];
        if (ch < '0' || ch > '3')
          throw ParseError(tok.line, tok.col, "permutation characters must be 0-3");
        int v = ch - '0';
        if (seen[static_cast<std::size_t>(v)])
          throw ParseError(tok.line, tok.col, "permutation repeats a vertex");
        seen[static_cast<std::size_t>(v)] = true;
        g.perm[static_cast<std::size_t>(i)] = v;
      }
      tri.glue[t][static_cast<std::size_t>(f)] = g;
    }
  }

  validate(tri);
  return tri;
}

/// Canonical text form; parse_triangulation(serialize_triangulation(t)) == t.
inline std::string serialize_triangulation(const Triangulation& tri) {
  std::ostringstream out;
  out << tri.tets << '\n';
  for (std::size_t t = 0; t < tri.tets; ++t) {
    for (int f = 0; f < 4; ++f) {
      const FaceGluing& g = tri.glue[t][static_cast<std::size_t>(f)];
      if (f) out << ' ';
      if (g.boundary()) {
        out << "bdry";
      } else {
        out << g.tet << ':' << g.face << ':';
        for (int i = 0; i < 4; ++i) out << g.perm[static_cast<std::size_t>(i)];
      }
    }
    out << '\n';
  }
  return out.str();
}

inline std::size_t glued_face_pairs(const Triangulation& tri) {
  std::size_t pairs = 0;
  for (std::size_t t = 0; t < tri.tets; ++t)
    for (int f = 0; f < 4; ++f) {
      const FaceGluing& g = tri.glue[t][static_cast<std::size_t>(f)];
      if (g.boundary()) continue;
      bool canonical = std::make_pair(static_cast<int>(t), f) <=
                       std::make_pair(g.tet, g.face);
      if (canonical) ++pairs;
    }
  return pairs;
}

// --- matching matrix ---------------------------------------------------------

struct MatchingEntry {
  std::size_t col;
  int val;
};

struct MatchingRowMeta {
  std::size_t pair_id;
  int arc_vertex;          // the face corner the arc cuts off (source side)
  bool cancels_to_zero;    // degenerate self-gluing row, kept but flagged
};

// The 3f x 7n matching matrix.  One row per (glued face pair, normal arc
// type); entries live in {-1,0,+1} and each row touches at most 4 disc
// types.  Rows are stored sparsely with per-row provenance.
struct MatchingMatrix {
  std::size_t tets = 0;
  std::size_t num_cols = 0;
  std::vector<std::vector<MatchingEntry>> row_entries;
  std::vector<MatchingRowMeta> row_meta;

  std::size_t rows() const { return row_entries.size(); }
  std::size_t cols() const { return num_cols; }

  NormalVector row_vec(std::size_t r) const {
    NormalVector v(num_cols);
    for (const MatchingEntry& e : row_entries[r]) v[e.col] = e.val;
    return v;
  }

  IntMatrix to_matrix() const {
    IntMatrix m(rows(), num_cols);
    for (std::size_t r = 0; r < rows(); ++r)
      for (const MatchingEntry& e : row_entries[r]) m.at(r, e.col) = e.val;
    return m;
  }
};

// For each glued face pair and each of the three normal arc types on the
// face, the discs meeting the arc on one side must match those on the other.
// On face f, the arc cutting off corner v is met by triangle type v and by
// quadrilateral type quad_index(v, f).
inline MatchingMatrix matching_matrix(const Triangulation& tri) {
  MatchingMatrix m;
  m.tets = tri.tets;
  m.num_cols = 7 * tri.tets;
  std::size_t pair_id = 0;
  for (std::size_t t = 0; t < tri.tets; ++t) {
    for (int f = 0; f < 4; ++f) {
      const FaceGluing& g = tri.glue[t][static_cast<std::size_t>(f)];
      if (g.boundary()) continue;
      if (std::make_pair(static_cast<int>(t), f) >
          std::make_pair(g.tet, g.face))
        continue;  // the partner slot already emitted this pair
      const std::size_t t2 = static_cast<std::size_t>(g.tet);
      const int f2 = g.face;
      for (int v = 0; v < 4; ++v) {
        if (v == f) continue;
        const int v2 = g.perm[static_cast<std::size_t>(v)];
        std::map<std::size_t, int> coeff;
        coeff[7 * t + static_cast<std::size_t>(v)] += 1;
        coeff[7 * t + 4 + static_cast<std::size_t>(quad_index(v, f))] += 1;
        coeff[7 * t2 + static_cast<std::size_t>(v2)] -= 1;
        coeff[7 * t2 + 4 + static_cast<std::size_t>(quad_index(v2, f2))] -= 1;
        std::vector<MatchingEntry> row;
        for (const auto& [col, val] : coeff)
          if (val != 0) row.push_back({col, val});
        m.row_meta.push_back({pair_id, v, row.empty()});
        m.row_entries.push_back(std::move(row));
      }
      ++pair_id;
    }
  }
  return m;
}

inline bool satisfies_matching(const MatchingMatrix& a, const NormalVector& x) {
  if (a.cols() != x.size())
    throw std::invalid_argument("satisfies_matching: dimension mismatch");
  for (const auto& row : a.row_entries) {
    Integer s = 0;
    for (const MatchingEntry& e : row) s += e.val * x[e.col];
    if (s != 0) return false;
  }
  return true;
}

}  // namespace nsurf
