#include <catch2/catch.hpp>

#include <sstream>

#include "nsurf/triangulation.hpp"
#include "support/fixtures.hpp"
#include "support/suite.hpp"

using namespace nsurf;

TEST_CASE("one tetrahedron, all boundary") {
  Triangulation tri = parse_triangulation("1\nbdry bdry bdry bdry\n");
  REQUIRE(tri.tets == 1);
  for (int f = 0; f < 4; ++f) REQUIRE(tri.glue[0][f].boundary());
  REQUIRE(glued_face_pairs(tri) == 0);
}

TEST_CASE("figure-eight fixture parses with n=2, f=4") {
  Triangulation tri = parse_triangulation(testsupport::fixture("fig8.tri"));
  REQUIRE(tri.tets == 2);
  REQUIRE(glued_face_pairs(tri) == 4);
  // involutivity, by direct check of every glued slot
  for (std::size_t t = 0; t < 2; ++t)
    for (int f = 0; f < 4; ++f) {
      const FaceGluing& g = tri.glue[t][f];
      REQUIRE(!g.boundary());
      const FaceGluing& back = tri.glue[g.tet][g.face];
      REQUIRE(back.tet == static_cast<int>(t));
      REQUIRE(back.face == f);
      for (int v = 0; v < 4; ++v) REQUIRE(back.perm[g.perm[v]] == v);
    }
}

TEST_CASE("comments and blank lines are skipped") {
  Triangulation tri =
      parse_triangulation("# header\n\n1\n# mid\nbdry bdry bdry bdry\n");
  REQUIRE(tri.tets == 1);
}

TEST_CASE("non-involutive gluing is rejected") {
  // (0,0) -> (1,2) with 2013, whose true inverse on the far side is 1203
  std::string text =
      "2\n"
      "1:2:2013 bdry bdry bdry\n"
      "bdry bdry 0:0:1203 bdry\n";
  std::string bad = text;
  // 2103 still maps face 2 to face 0 but is not the inverse
  bad.replace(bad.find("1203"), 4, "2103");
  REQUIRE_NOTHROW(parse_triangulation(text));
  REQUIRE_THROWS_AS(parse_triangulation(bad), ValidationError);
}

TEST_CASE("permutation must map face to face") {
  // perm 0123 sends vertex 0 to 0, but the target face is 2
  std::string text =
      "2\n"
      "1:2:0123 bdry bdry bdry\n"
      "bdry bdry 0:0:0123 bdry\n";
  REQUIRE_THROWS_AS(parse_triangulation(text), ValidationError);
}

TEST_CASE("indices out of range are reported") {
  REQUIRE_THROWS_AS(parse_triangulation("1\n3:0:0123 bdry bdry bdry\n"),
                    ParseError);
  REQUIRE_THROWS_AS(parse_triangulation("1\n0:6:0123 bdry bdry bdry\n"),
                    ParseError);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_triangulation("1\nbdry oops bdry bdry\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE(e.line() == 2);
    REQUIRE(e.column() == 6);
  }
}

TEST_CASE("identity self-gluing of a face is degenerate") {
  REQUIRE_THROWS_AS(parse_triangulation("1\n0:0:0123 bdry bdry bdry\n"),
                    ValidationError);
}

TEST_CASE("a face may glue to the same tetrahedron and to itself nontrivially") {
  // same tetrahedron, two different faces
  Triangulation t1 = parse_triangulation("1\n0:1:1023 0:0:1023 bdry bdry\n");
  REQUIRE(glued_face_pairs(t1) == 1);
  // face glued to itself by a transposition fixing the face index
  Triangulation t2 = parse_triangulation("1\nbdry bdry bdry 0:3:1023\n");
  REQUIRE(glued_face_pairs(t2) == 1);
}

TEST_CASE("serialization round-trips bit-exactly") {
  for (const std::string& text : testsupport::generate_suite(12)) {
    Triangulation tri = parse_triangulation(text);
    std::string ser = serialize_triangulation(tri);
    Triangulation again = parse_triangulation(ser);
    REQUIRE(again == tri);
    REQUIRE(serialize_triangulation(again) == ser);
  }
}

TEST_CASE("matching matrix of an unglued tetrahedron is 0 x 7") {
  Triangulation one = parse_triangulation("1\nbdry bdry bdry bdry\n");
  MatchingMatrix m1 = matching_matrix(one);
  REQUIRE(m1.rows() == 0);
  REQUIRE(m1.cols() == 7);
}

TEST_CASE("two tetrahedra, one glued pair: 3 rows, 14 columns") {
  // (0,0) <-> (1,0) with 0132 as in the fig8 fixture's first pair
  Triangulation tri = parse_triangulation(
      "2\n1:0:0132 bdry bdry bdry\n0:0:0132 bdry bdry bdry\n");
  MatchingMatrix m = matching_matrix(tri);
  REQUIRE(m.rows() == 3);
  REQUIRE(m.cols() == 14);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    REQUIRE(m.row_entries[r].size() <= 4);
    for (const MatchingEntry& e : m.row_entries[r])
      REQUIRE((e.val == 1 || e.val == -1));
  }
}

TEST_CASE("figure-eight matching matrix equals the hand-built golden") {
  Triangulation tri = parse_triangulation(testsupport::fixture("fig8.tri"));
  MatchingMatrix m = matching_matrix(tri);
  REQUIRE(m.rows() == 12);
  REQUIRE(m.cols() == 14);

  std::istringstream golden(testsupport::fixture("fig8_matching_golden.txt"));
  std::size_t r = 0;
  for (std::string line; std::getline(golden, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    long long v;
    std::size_t c = 0;
    IntMatrix dense = m.to_matrix();
    while (ls >> v) {
      REQUIRE(dense.at(r, c) == v);
      ++c;
    }
    REQUIRE(c == 14);
    ++r;
  }
  REQUIRE(r == 12);

  for (std::size_t row = 0; row < m.rows(); ++row) {
    REQUIRE(m.row_entries[row].size() <= 4);
    REQUIRE(!m.row_meta[row].cancels_to_zero);
  }
}

TEST_CASE("self-gluing rows may cancel to zero and are flagged") {
  Triangulation tri = parse_triangulation("1\nbdry bdry bdry 0:3:1023\n");
  MatchingMatrix m = matching_matrix(tri);
  REQUIRE(m.rows() == 3);  // still 3 rows per pair
  // the arc at the fixed vertex 2 cancels identically
  bool saw_zero = false, saw_nonzero = false;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.row_meta[r].cancels_to_zero) {
      REQUIRE(m.row_entries[r].empty());
      saw_zero = true;
    } else {
      saw_nonzero = true;
    }
  }
  REQUIRE(saw_zero);
  REQUIRE(saw_nonzero);
}

TEST_CASE("matching row count is 3 x glued pairs across the suite") {
  for (const std::string& text : testsupport::generate_suite(15)) {
    Triangulation tri = parse_triangulation(text);
    MatchingMatrix m = matching_matrix(tri);
    REQUIRE(m.rows() == 3 * glued_face_pairs(tri));
    REQUIRE(m.cols() == 7 * tri.tets);
    for (const auto& row : m.row_entries) REQUIRE(row.size() <= 4);
  }
}
