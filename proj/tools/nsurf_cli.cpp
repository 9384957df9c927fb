// Command-line driver: parse triangulation files, enumerate vertex or
// fundamental normal surfaces with either algorithm, cross-verify against
// the brute-force oracle, and benchmark a directory of cases.
//
// Exit codes: 0 ok, 1 usage, 2 parse/validation, 3 verification mismatch,
// 4 scale guard.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nsurf/nsurf.hpp"
#include "nsurf/parallel.hpp"

namespace {

using nlohmann::json;
using namespace nsurf;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitScaleGuard = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_vector(const NormalVector& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ' ';
    out << v[i];
  }
  return out.str();
}

json report_to_json(const RunReport& r) {
  json j;
  j["case"] = r.case_id;
  j["algo"] = r.algorithm;
  j["status"] = r.status;
  j["n"] = r.tets;
  j["rows"] = r.rows;
  if (r.vertex_count) j["vertex_count"] = *r.vertex_count;
  if (r.face_count) j["face_count"] = *r.face_count;
  if (r.fundamental_count) j["fundamental_count"] = *r.fundamental_count;
  if (r.peak_candidates) j["peak_candidates"] = *r.peak_candidates;
  j["vertex_ms"] = r.vertex_ms;
  j["faces_ms"] = r.faces_ms;
  j["hilbert_ms"] = r.hilbert_ms;
  j["total_ms"] = r.total_ms;
  return j;
}

void emit_report(const RunReport& r, const std::string& report_path) {
  const std::string line = report_to_json(r).dump();
  if (report_path.empty()) {
    std::cerr << line << '\n';
  } else {
    std::ofstream out(report_path);
    if (!out) throw ValidationError("cannot write report: " + report_path);
    out << line << '\n';
  }
}

std::int64_t elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

RunReport run_case(const std::string& case_id, const Triangulation& tri,
                   const std::string& algo, std::size_t workers,
                   const Deadline& deadline, BasisSet* out_basis,
                   const std::function<void(const RowProgress&)>& progress = {}) {
  RunReport rep;
  rep.case_id = case_id;
  rep.algorithm = algo;
  rep.tets = tri.tets;
  rep.rows = 3 * glued_face_pairs(tri);
  auto t0 = std::chrono::steady_clock::now();
  try {
    if (algo == "primal") {
      PrimalOptions opts;
      opts.workers = workers;
      opts.deadline = deadline;
      PrimalStats stats;
      BasisSet basis = fundamental_primal(tri, opts, &stats);
      rep.vertex_count = stats.vertex_count;
      rep.face_count = stats.face_count;
      rep.fundamental_count = basis.size();
      rep.vertex_ms = stats.vertex_ms;
      rep.faces_ms = stats.faces_ms;
      rep.hilbert_ms = stats.hilbert_ms;
      if (out_basis) *out_basis = std::move(basis);
    } else {
      DualOptions opts;
      opts.limits.deadline = deadline;
      opts.progress = progress;
      DualRun run = fundamental_dual_run(tri, opts);
      rep.fundamental_count = run.basis.size();
      rep.peak_candidates = run.peak_candidates;
      rep.hilbert_ms = elapsed_ms(t0);
      if (out_basis) *out_basis = std::move(run.basis);
    }
  } catch (const TimeoutError&) {
    rep.status = "timeout";
  }
  rep.total_ms = elapsed_ms(t0);
  return rep;
}

int cmd_vertex(const std::string& file, const std::string& report_path) {
  Triangulation tri = parse_triangulation(read_file(file));
  MatchingMatrix a = matching_matrix(tri);
  RunReport rep;
  rep.case_id = std::filesystem::path(file).filename().string();
  rep.algorithm = "vertex";
  rep.tets = tri.tets;
  rep.rows = a.rows();
  auto t0 = std::chrono::steady_clock::now();
  RaySet rays = enumerate_admissible_rays(a);
  rep.vertex_ms = elapsed_ms(t0);
  rep.total_ms = rep.vertex_ms;
  rep.vertex_count = rays.size();
  for (const NormalVector& r : rays.rays) std::cout << format_vector(r) << '\n';
  emit_report(rep, report_path);
  return kExitOk;
}

int cmd_fundamental(const std::string& file, const std::string& algo,
                    std::size_t workers, bool progress,
                    const std::string& report_path) {
  Triangulation tri = parse_triangulation(read_file(file));
  std::function<void(const RowProgress&)> on_row;
  if (progress && algo == "dual")
    on_row = [](const RowProgress& p) {
      std::cerr << "row=" << p.row << " plus=" << p.plus_size
                << " minus=" << p.minus_size << " zero=" << p.zero_size
                << " ms=" << p.ms << '\n';
    };
  BasisSet basis;
  RunReport rep =
      run_case(std::filesystem::path(file).filename().string(), tri, algo,
               workers, Deadline::never(), &basis, on_row);
  for (const NormalVector& v : basis) std::cout << format_vector(v) << '\n';
  emit_report(rep, report_path);
  return kExitOk;
}

int cmd_verify(const std::string& file, const std::string& golden_path) {
  Triangulation tri = parse_triangulation(read_file(file));
  if (7 * tri.tets > 21)
    throw ScaleGuardError("verify: instance above oracle scale (7n > 21)");

  BasisSet primal = fundamental_primal(tri);
  BasisSet dual = fundamental_dual(tri);

  auto first_diff = [](const BasisSet& a, const BasisSet& b) {
    std::optional<NormalVector> diff;
    for (const NormalVector& v : a)
      if (!b.count(v)) {
        diff = v;
        break;
      }
    if (!diff)
      for (const NormalVector& v : b)
        if (!a.count(v)) {
          diff = v;
          break;
        }
    return diff;
  };

  if (primal != dual) {
    std::cerr << "verify: primal/dual mismatch, first differing vector: "
              << format_vector(*first_diff(primal, dual)) << '\n';
    return kExitMismatch;
  }

  unsigned start = 4;
  for (const NormalVector& v : primal) {
    Integer s = coordinate_sum(v);
    if (s > start) start = static_cast<unsigned>(s);
  }
  IntMatrix a = matching_matrix(tri).to_matrix();
  BasisSet oracle = stable_hilbert_oracle(a, start);
  if (oracle != primal) {
    std::cerr << "verify: oracle mismatch, first differing vector: "
              << format_vector(*first_diff(primal, oracle)) << '\n';
    return kExitMismatch;
  }
  for (const NormalVector& v : primal)
    if (!is_fundamental_oracle(a, v)) {
      std::cerr << "verify: reducible output vector: " << format_vector(v)
                << '\n';
      return kExitMismatch;
    }

  if (!golden_path.empty()) {
    std::istringstream golden(read_file(golden_path));
    std::vector<std::string> expect;
    for (std::string line; std::getline(golden, line);)
      if (!line.empty()) expect.push_back(line);
    std::vector<std::string> got;
    for (const NormalVector& v : primal) got.push_back(format_vector(v));
    std::size_t upto = std::max(expect.size(), got.size());
    for (std::size_t i = 0; i < upto; ++i) {
      std::string e = i < expect.size() ? expect[i] : "<missing>";
      std::string g = i < got.size() ? got[i] : "<missing>";
      if (e != g) {
        std::cerr << "verify: golden mismatch at line " << (i + 1)
                  << ": expected `" << e << "`, got `" << g << "`\n";
        return kExitMismatch;
      }
    }
  }

  std::cout << "verify: PASS (" << primal.size()
            << " fundamental surfaces, primal = dual = oracle)\n";
  return kExitOk;
}

int cmd_bench(const std::string& dir, const std::string& algos_arg,
              double timeout_s, std::size_t workers) {
  std::vector<std::string> algos;
  {
    std::stringstream ss(algos_arg);
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) algos.push_back(item);
  }
  if (algos.empty()) algos = {"primal", "dual"};
  for (const std::string& a : algos)
    if (a != "primal" && a != "dual")
      throw CLI::ValidationError("--algo", "unknown algorithm: " + a);

  struct Case {
    std::string id;
    Triangulation tri;
    bool parsed = false;
    std::string error;
  };
  std::vector<Case> cases;
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file()) paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  for (const auto& p : paths) {
    Case c;
    c.id = p.filename().string();
    try {
      c.tri = parse_triangulation(read_file(p.string()));
      c.parsed = true;
    } catch (const std::exception& e) {
      c.error = e.what();
    }
    cases.push_back(std::move(c));
  }
  // Increasing tetrahedron count, then name; unparsable cases first.
  std::stable_sort(cases.begin(), cases.end(), [](const Case& a, const Case& b) {
    std::size_t na = a.parsed ? a.tri.tets : 0;
    std::size_t nb = b.parsed ? b.tri.tets : 0;
    if (na != nb) return na < nb;
    return a.id < b.id;
  });

  struct Task {
    std::size_t case_idx;
    std::string algo;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < cases.size(); ++i)
    for (const std::string& a : algos) tasks.push_back({i, a});

  std::vector<RunReport> results(tasks.size());
  parallel_for(tasks.size(), workers, [&](std::size_t t) {
    const Case& c = cases[tasks[t].case_idx];
    if (!c.parsed) {
      RunReport rep;
      rep.case_id = c.id;
      rep.algorithm = tasks[t].algo;
      rep.status = "error";
      results[t] = rep;
      return;
    }
    Deadline dl = timeout_s > 0
                      ? Deadline::in_ms(static_cast<std::int64_t>(timeout_s * 1000))
                      : Deadline::never();
    results[t] = run_case(c.id, c.tri, tasks[t].algo, 1, dl, nullptr);
  });

  std::cout << bench_csv_header() << '\n';
  for (const RunReport& r : results) std::cout << to_csv_row(r) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact enumeration of vertex and fundamental normal surfaces"};
  app.require_subcommand(1);

  std::string file, report_path, golden_path, algo = "primal";
  std::string dir, algos = "primal,dual";
  std::size_t workers = 1;
  double timeout_s = 60.0;
  bool progress = false;

  CLI::App* vertex = app.add_subcommand("vertex", "Enumerate vertex normal surfaces");
  vertex->add_option("file", file, "triangulation file")->required();
  vertex->add_option("--report", report_path, "write the run report here");

  CLI::App* fundamental =
      app.add_subcommand("fundamental", "Enumerate fundamental normal surfaces");
  fundamental->add_option("file", file, "triangulation file")->required();
  fundamental->add_option("--algo", algo, "primal or dual")
      ->check(CLI::IsMember({"primal", "dual"}));
  fundamental->add_option("--workers", workers, "worker threads (primal faces)");
  fundamental->add_flag("--progress", progress, "dual per-row progress on stderr");
  fundamental->add_option("--report", report_path, "write the run report here");

  CLI::App* verify =
      app.add_subcommand("verify", "Cross-check primal, dual and oracle");
  verify->add_option("file", file, "triangulation file")->required();
  verify->add_option("--golden", golden_path, "compare against a golden listing");

  CLI::App* bench = app.add_subcommand("bench", "Benchmark a directory of cases");
  bench->add_option("dir", dir, "directory of triangulation files")->required();
  bench->add_option("--algo", algos, "comma-separated algorithms");
  bench->add_option("--timeout", timeout_s, "per-case timeout in seconds");
  bench->add_option("--workers", workers, "concurrent cases");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (vertex->parsed()) return cmd_vertex(file, report_path);
    if (fundamental->parsed())
      return cmd_fundamental(file, algo, workers, progress, report_path);
    if (verify->parsed()) return cmd_verify(file, golden_path);
    if (bench->parsed()) return cmd_bench(dir, algos, timeout_s, workers);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ScaleGuardError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitScaleGuard;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }
  return kExitUsage;
}
