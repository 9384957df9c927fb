#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>

namespace nsurf {

// Per-run record: the quantities a benchmark row or a report line carries.
// vertex_count/face_count are primal-only; peak_candidates is dual-only.
struct RunReport {
  std::string case_id;
  std::string algorithm;
  std::string status = "ok";  // ok | timeout | error
  std::size_t tets = 0;
  std::size_t rows = 0;
  std::optional<std::size_t> vertex_count;
  std::optional<std::size_t> face_count;
  std::optional<std::size_t> fundamental_count;
  std::optional<std::size_t> peak_candidates;
  std::int64_t vertex_ms = 0;
  std::int64_t faces_ms = 0;
  std::int64_t hilbert_ms = 0;
  std::int64_t total_ms = 0;
};

inline std::string bench_csv_header() {
  return "case,algo,n,rows,status,vertex_count,face_count,fundamental_count,"
         "peak_candidates,vertex_ms,faces_ms,hilbert_ms,total_ms";
}

inline std::string to_csv_row(const RunReport& r) {
  std::ostringstream out;
  auto opt = [&](const std::optional<std::size_t>& v) {
    if (v) out << *v;
  };
  out << r.case_id << ',' << r.algorithm << ',' << r.tets << ',' << r.rows
      << ',' << r.status << ',';
  opt(r.vertex_count);
  out << ',';
  opt(r.face_count);
  out << ',';
  opt(r.fundamental_count);
  out << ',';
  opt(r.peak_candidates);
  out << ',' << r.vertex_ms << ',' << r.faces_ms << ',' << r.hilbert_ms << ','
      << r.total_ms;
  return out.str();
}

}  // namespace nsurf
