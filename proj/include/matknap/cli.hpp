#pragma once

// Command-line front end. run() parses argv, dispatches to the solvers and
// writes one report to `out`. Exit codes: 0 success (including "no
// solution"), 2 invalid input, 3 precondition violation, 1 internal error.

#include "matknap/io.hpp"
#include "matknap/matknap.hpp"

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace matknap::cli {

using io::json;

struct RunRequest {
  std::string subcommand;
  std::string matrices;  ///< JSON text or @file
  std::optional<long> kmax;
  std::string h_range;
  std::string d_range = "-20..20";
  unsigned workers = 1;
  std::uint64_t seed = 0;
  std::string format;
  bool verify = false;
  std::size_t s = 3;
  long entry_bound = 13;
  std::optional<long> samples;
  long count = 1;
};

/// "7" or "2..5".
inline std::pair<long, long> parse_range(const std::string& text) {
  try {
    auto dots = text.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      long v = std::stol(text, &used);
      if (used != text.size()) throw invalid_input("");
      return {v, v};
    }
    std::string lo = text.substr(0, dots), hi = text.substr(dots + 2);
    long a = std::stol(lo, &used);
    if (used != lo.size()) throw invalid_input("");
    long b = std::stol(hi, &used);
    if (used != hi.size() || b < a) throw invalid_input("");
    return {a, b};
  } catch (const std::exception&) {
    throw invalid_input("bad range '" + text + "' (expected N or A..B)");
  }
}

namespace detail {

inline json lattice_json(const std::vector<IntVec>& basis) { return io::to_json(basis); }

inline void check(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("verification failed: " + what);
}

inline std::vector<Mat> input_matrices(const RunRequest& r) {
  if (r.matrices.empty()) throw invalid_input("missing --matrices/--matrix");
  json j = io::parse_source(r.matrices);
  // a single matrix is accepted where a list is expected
  if (j.is_array() && !j.empty() && j[0].is_array() && !j[0].empty() && !j[0][0].is_array())
    return {io::matrix_from_json(j)};
  return io::matrices_from_json(j);
}

inline std::vector<Heis> input_heis(const RunRequest& r) {
  if (r.matrices.empty()) throw invalid_input("missing --matrices/--matrix");
  json j = io::parse_source(r.matrices);
  if (!j.is_array()) throw invalid_input("expected an array of Heisenberg matrices");
  std::vector<Heis> out;
  for (const auto& x : j) out.push_back(io::heis_from_json(x));
  return out;
}

inline json power_eq(const RunRequest& r) {
  auto ms = input_matrices(r);
  if (ms.size() != 2) throw invalid_input("power-eq needs exactly two matrices");
  auto sol = power_equality(ms[0], ms[1], r.kmax);
  json out;
  out["status"] = to_string(sol.status);
  out["basis"] = lattice_json(sol.subgroup.basis);
  out["witnesses"] = lattice_json(sol.witnesses);
  if (sol.status == SolveStatus::bounded_search) out["kmax"] = sol.kmax;
  if (r.verify) {
    for (const auto& w : sol.witnesses)
      check(mat_pow(ms[0], to_long(w[0])) == mat_pow(ms[1], to_long(w[1])), "power-eq witness");
    out["verified"] = true;
  }
  return out;
}

inline json knapsack(const RunRequest& r) {
  auto ms = input_matrices(r);
  auto sol = commuting_knapsack(ms, r.kmax);
  if (sol.status == SolveStatus::inapplicable)
    throw precondition_error("knapsack: the matrices do not commute");
  json out;
  out["status"] = to_string(sol.status);
  out["basis"] = lattice_json(sol.lattice.basis);
  out["witness"] = sol.nonzero_witness ? io::to_json(*sol.nonzero_witness) : json(nullptr);
  if (sol.status == SolveStatus::bounded_search) out["kmax"] = sol.kmax;
  if (r.verify) {
    for (const auto& b : sol.lattice.basis) check(power_product(ms, b).is_identity(), "knapsack basis");
    if (sol.nonzero_witness) check(power_product(ms, *sol.nonzero_witness).is_identity(), "knapsack witness");
    out["verified"] = true;
  }
  return out;
}

inline json heisenberg(const RunRequest& r, std::size_t factors) {
  auto hs = input_heis(r);
  if (hs.size() != factors)
    throw invalid_input("expected " + std::to_string(factors) + " Heisenberg matrices");
  auto sol = factors == 3 ? solve_triple(hs[0], hs[1], hs[2]) : solve_pair(hs[0], hs[1]);
  json out;
  out["kind"] = to_string(sol.kind);
  out["branch"] = sol.branch;
  out["basis"] = sol.lattice ? lattice_json(sol.lattice->basis) : json::array();
  out["solutions"] = lattice_json(sol.finite_solutions);
  out["witness"] = sol.witness ? io::to_json(*sol.witness) : json(nullptr);
  if (sol.tau) out["tau"] = io::to_json(*sol.tau);
  if (r.verify) {
    for (const auto& k : sol.finite_solutions) check(heis_word_is_identity(hs, k), "Heisenberg solution");
    if (sol.witness) check(heis_word_is_identity(hs, *sol.witness), "Heisenberg witness");
    if (sol.lattice)
      for (const auto& b : sol.lattice->basis) check(heis_word_is_identity(hs, b), "Heisenberg basis");
    out["verified"] = true;
  }
  return out;
}

inline json torsion(const RunRequest& r) {
  auto ms = input_matrices(r);
  if (ms.size() != 1) throw invalid_input("torsion takes one matrix");
  auto k = torsion_order(ms[0]);
  json out;
  out["order"] = k ? json(*k) : json(nullptr);
  if (r.verify && k) {
    check(mat_pow(ms[0], *k).is_identity(), "torsion order");
    out["verified"] = true;
  }
  return out;
}

inline json abc(const RunRequest& r) {
  auto ms = input_matrices(r);
  if (ms.size() != 3 && ms.size() != 4) throw invalid_input("abc-search needs A, B, C and optionally a target");
  Mat target = ms.size() == 4 ? ms[3] : Mat::identity(ms[0].dim());
  long kmax = r.kmax.value_or(default_kmax({ms[0], ms[1], ms[2]}));
  auto sols = abc_bounded_search(ms[0], ms[1], ms[2], target, kmax);
  json out;
  out["kmax"] = kmax;
  out["solutions"] = lattice_json(sols);
  if (r.verify) {
    for (const auto& k : sols)
      check(mat_pow(ms[0], to_long(k[0])) * mat_pow(ms[1], to_long(k[1])) * mat_pow(ms[2], to_long(k[2])) == target,
            "abc solution");
    out["verified"] = true;
  }
  return out;
}

inline std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

inline void census_pairs_cmd(const RunRequest& r, std::ostream& out) {
  auto [lo, hi] = parse_range(r.h_range.empty() ? "2" : r.h_range);
  if (lo < 1) throw invalid_input("--H must be positive");
  if (r.kmax && *r.kmax < 1) throw invalid_input("--kmax must be positive");
  const bool csv = r.format != "json";
  json rows = json::array();
  if (csv) out << "H,total,torsion,dependent,undecided,seconds\n";
  for (long h = lo; h <= hi; ++h) {
    auto rep = census_pairs({h, r.kmax.value_or(0), r.workers, r.seed});
    if (csv) {
      out << rep.H << ',' << rep.total << ',' << rep.torsion << ',' << rep.dependent << ',' << rep.undecided << ','
          << fmt_seconds(rep.seconds) << '\n';
    } else {
      json j;
      j["H"] = rep.H;
      j["total"] = rep.total;
      j["torsion"] = rep.torsion;
      j["dependent"] = rep.dependent;
      j["undecided"] = rep.undecided;
      j["seconds"] = std::stod(fmt_seconds(rep.seconds));
      j["dependent_unordered"] = rep.dependent_unordered;
      j["kmax"] = rep.kmax;
      j["pairs"] = "ordered";
      rows.push_back(std::move(j));
    }
  }
  if (!csv) out << json{{"census", "pairs"}, {"rows", rows}}.dump() << '\n';
}

inline void census_fixed_det_cmd(const RunRequest& r, std::ostream& out) {
  auto [hlo, hhi] = parse_range(r.h_range.empty() ? "1..10" : r.h_range);
  auto [dlo, dhi] = parse_range(r.d_range);
  if (hlo < 1) throw invalid_input("--H must be positive");
  const bool csv = r.format != "json";
  json rows = json::array();
  if (csv) out << "H,d,naive,divisor\n";
  for (long h = hlo; h <= hhi; ++h)
    for (long d = dlo; d <= dhi; ++d) {
      if (d == 0) continue;
      long x = count_fixed_det_naive(h, d), y = count_fixed_det_divisor(h, d);
      if (r.verify) check(x == y, "fixed-determinant counts");
      if (csv)
        out << h << ',' << d << ',' << x << ',' << y << '\n';
      else
        rows.push_back({{"H", h}, {"d", d}, {"naive", x}, {"divisor", y}});
    }
  if (!csv) out << json{{"census", "fixed-det"}, {"rows", rows}}.dump() << '\n';
}

inline json census_tuples_cmd(const RunRequest& r) {
  long h = parse_range(r.h_range.empty() ? "2" : r.h_range).first;
  long kmax = r.kmax.value_or(8);
  auto rep = census_tuples(r.s, h, kmax, r.samples, r.seed);
  json out;
  out["census"] = "tuples";
  out["mode"] = rep.mode;
  out["s"] = rep.s;
  out["H"] = rep.H;
  out["kmax"] = rep.kmax;
  out["total"] = io::to_json(rep.total);
  out["examined"] = rep.examined;
  out["dependent"] = io::to_json(rep.dependent);
  out["undecided"] = io::to_json(rep.undecided);
  if (rep.mode == "sampled") {
    out["seed"] = rep.seed;
    out["estimate"] = rep.estimate;
    out["std_error"] = rep.std_error;
  }
  out["tuples"] = "ordered";
  return out;
}

inline json fixtures(const RunRequest& r) {
  json list = json::array();
  for (long i = 0; i < r.count; ++i) {
    auto t = build_dependent_tuple(r.s, r.entry_bound, r.seed + static_cast<std::uint64_t>(i));
    json item;
    json ms = json::array();
    for (const auto& m : t.tuple) ms.push_back(io::to_json(m));
    item["tuple"] = ms;
    item["witness"] = io::to_json(t.witness);
    if (r.verify) {
      check(power_product(t.tuple, t.witness).is_identity(), "tuple witness");
      item["verified"] = true;
    }
    list.push_back(std::move(item));
  }
  return {{"s", r.s}, {"K", r.entry_bound}, {"seed", r.seed}, {"fixtures", list}};
}

}  // namespace detail

inline unsigned default_workers() {
  if (const char* env = std::getenv("MATKNAP_WORKERS")) {
    try {
      long w = std::stol(env);
      if (w >= 1) return static_cast<unsigned>(w);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunRequest req;
  req.workers = default_workers();
  CLI::App app{"matknap: exact multiplicative matrix equations over Q"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
  };
  const std::vector<Sub> subs{
      {"power-eq", "solve A1^k1 = A2^k2"},
      {"knapsack", "solve A1^k1 ... As^ks = I for commuting matrices"},
      {"heisenberg-triple", "solve A1^k1 A2^k2 A3^k3 = I for Heisenberg matrices [a, b, c]"},
      {"heisenberg-pair", "solve A1^k1 A2^k2 = I for Heisenberg matrices [a, b, c]"},
      {"torsion", "finite order of a matrix"},
      {"abc-search", "bounded search for A^k1 B^k2 C^k3 = T"},
      {"census-pairs", "count dependent pairs of symmetric 2x2 matrices"},
      {"census-fixed-det", "count symmetric 2x2 matrices of fixed determinant"},
      {"census-tuples", "count dependent tuples of symmetric 2x2 matrices"},
      {"fixtures", "build dependent tuples with no dependent subtuple"},
  };
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--matrices,--matrix", req.matrices, "JSON literal or @file");
    sub->add_option("--kmax", req.kmax, "exponent box");
    sub->add_option("--H", req.h_range, "height bound N or range A..B");
    sub->add_option("--d", req.d_range, "determinant N or range A..B");
    sub->add_option("--workers", req.workers, "worker threads (default MATKNAP_WORKERS or 1)");
    sub->add_option("--seed", req.seed, "random seed");
    sub->add_option("--format", req.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--verify", req.verify, "re-multiply every reported solution");
    sub->add_option("--s", req.s, "tuple length");
    sub->add_option("--K", req.entry_bound, "entry bound for fixtures");
    sub->add_option("--samples", req.samples, "sampled mode with this many tuples");
    sub->add_option("--count", req.count, "number of fixtures");
    sub->callback([&req, sub] { req.subcommand = sub->get_name(); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (req.workers < 1) throw invalid_input("--workers must be positive");
    if (req.kmax && *req.kmax < 1) throw invalid_input("--kmax must be positive");
    const std::string& c = req.subcommand;
    json report;
    if (c == "power-eq")
      report = detail::power_eq(req);
    else if (c == "knapsack")
      report = detail::knapsack(req);
    else if (c == "heisenberg-triple")
      report = detail::heisenberg(req, 3);
    else if (c == "heisenberg-pair")
      report = detail::heisenberg(req, 2);
    else if (c == "torsion")
      report = detail::torsion(req);
    else if (c == "abc-search")
      report = detail::abc(req);
    else if (c == "census-pairs")
      return detail::census_pairs_cmd(req, out), 0;
    else if (c == "census-fixed-det")
      return detail::census_fixed_det_cmd(req, out), 0;
    else if (c == "census-tuples")
      report = detail::census_tuples_cmd(req);
    else if (c == "fixtures")
      report = detail::fixtures(req);
    out << report.dump() << '\n';
    return 0;
  } catch (const invalid_input& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const precondition_error& e) {
    err << "precondition violated: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace matknap::cli
