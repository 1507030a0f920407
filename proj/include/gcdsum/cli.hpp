#pragma once

// Command dispatch behind the gcdsum executable. Argument parsing lives in
// the tool itself; everything here works on a RunConfig.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gcdsum/alpha.hpp"
#include "gcdsum/closure.hpp"
#include "gcdsum/errors.hpp"
#include "gcdsum/extremal.hpp"
#include "gcdsum/io.hpp"
#include "gcdsum/spectral.hpp"
#include "gcdsum/sums.hpp"
#include "gcdsum/verify.hpp"

namespace gcdsum::cli {

enum class Command { sum, spectral, exact_check, construct, closure, verify, scan };
enum class Format { csv, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerify = 3;

inline std::string_view to_string(Command c) {
  switch (c) {
    case Command::sum: return "sum";
    case Command::spectral: return "spectral";
    case Command::exact_check: return "exact-check";
    case Command::construct: return "construct";
    case Command::closure: return "closure";
    case Command::verify: return "verify";
    case Command::scan: return "scan";
  }
  return "?";
}

struct RunConfig {
  Command command = Command::sum;
  double alpha = 0.25;
  std::optional<std::uint64_t> n;
  double delta = 0.3;
  SumMethod method = SumMethod::fast;
  double tol = kDefaultSpectralTol;
  std::uint64_t max_iter = kDefaultMaxIter;
  std::optional<std::string> input_path;
  std::optional<std::string> out_path;
  std::optional<std::string> export_path;
  Format format = Format::csv;
  unsigned threads = 1;

  std::string suite = "all";      ///< verify
  std::string kind = "spectral";  ///< scan
  std::vector<double> grid;       ///< scan: N values, or smoothness bounds for kind=prod
  std::uint64_t seed = 1;
  std::uint64_t trials = 50;
  std::uint64_t primes = 4;
  double beta = 1.0;
  double beta_prime = 3.0;
  bool squarefree_only = false;

  void validate() const {
    (void)AlphaParam(alpha);
    if (!(tol > 0.0)) throw DomainError("--tol must be positive");
    if (threads < 1) throw DomainError("--threads must be at least 1");
    if (max_iter < 1) throw DomainError("--max-iter must be at least 1");
  }
};

/// `--threads` wins, then GCDSUM_THREADS, then 1.
inline unsigned resolve_threads(std::optional<unsigned> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("GCDSUM_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 4096) throw DomainError("GCDSUM_THREADS must be a positive integer");
    return static_cast<unsigned>(v);
  }
  return 1;
}

using Json = nlohmann::ordered_json;

/// Serializes with every float at 17 significant digits. Non-finite
/// floats become null.
inline void write_json(std::ostream& out, const Json& j) {
  switch (j.type()) {
    case Json::value_t::object: {
      out << '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out << ',';
        first = false;
        out << Json(k).dump() << ':';
        write_json(out, v);
      }
      out << '}';
      break;
    }
    case Json::value_t::array: {
      out << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ',';
        write_json(out, j[i]);
      }
      out << ']';
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v)) {
        out << format_double(v);
      } else {
        out << "null";
      }
      break;
    }
    default:
      out << j.dump();
  }
}

inline std::string csv_field(const Json& v) {
  switch (v.type()) {
    case Json::value_t::string: return v.get<std::string>();
    case Json::value_t::number_float: return format_double(v.get<double>());
    case Json::value_t::null: return "";
    default: return v.dump();
  }
}

/// A run's output: named columns and rows for tables; JSON adds an optional
/// summary object.
struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
  bool single = false;
  Json summary;  ///< JSON only; null when absent
  bool failed = false;
  std::string failure;

  void add(std::vector<Json> row) {
    if (row.size() != columns.size()) throw InternalError("report row width mismatch");
    rows.push_back(std::move(row));
  }

  Json row_object(std::size_t r) const {
    Json o = Json::object();
    for (std::size_t c = 0; c < columns.size(); ++c) o[columns[c]] = rows[r][c];
    return o;
  }
};

inline Json nat_value(Nat v) {
  if (fits_u64(v)) return static_cast<std::uint64_t>(v);
  return gcdsum::to_string(v);
}

inline Json params_json(const RunConfig& c) {
  Json p = Json::object();
  p["alpha"] = c.alpha;
  if (c.n) p["n"] = *c.n;
  switch (c.command) {
    case Command::sum:
      p["method"] = std::string(to_string(c.method));
      break;
    case Command::spectral:
      p["tol"] = c.tol;
      p["max_iter"] = c.max_iter;
      break;
    case Command::construct:
      p["delta"] = c.delta;
      p["squarefree_only"] = c.squarefree_only;
      break;
    case Command::verify:
      p["suite"] = c.suite;
      p["delta"] = c.delta;
      p["seed"] = c.seed;
      p["trials"] = c.trials;
      p["primes"] = c.primes;
      break;
    case Command::scan:
      p["kind"] = c.kind;
      p["grid"] = c.grid;
      p["delta"] = c.delta;
      p["tol"] = c.tol;
      p["max_iter"] = c.max_iter;
      p["beta"] = c.beta;
      p["beta_prime"] = c.beta_prime;
      break;
    default:
      break;
  }
  if (c.input_path) p["input"] = *c.input_path;
  p["threads"] = c.threads;
  return p;
}

namespace detail {

inline std::uint64_t require_n(const RunConfig& c, std::string_view cmd) {
  if (!c.n) throw DomainError(std::string(cmd) + ": --n is required");
  if (*c.n == 0) throw DomainError(std::string(cmd) + ": --n must be positive");
  return *c.n;
}

inline std::vector<std::uint64_t> grid_as_counts(const RunConfig& c, std::vector<std::uint64_t> fallback) {
  if (c.grid.empty()) return fallback;
  std::vector<std::uint64_t> out;
  for (double g : c.grid) {
    if (!(g >= 1.0) || g != std::floor(g) || g > 1e15) throw DomainError("scan: grid values must be positive integers");
    out.push_back(static_cast<std::uint64_t>(g));
  }
  return out;
}

inline void spectral_columns(Report& r) {
  r.columns = {"n", "alpha", "lambda_est", "iterations", "residual", "normalized_ratio", "converged",
               "rayleigh_monotone"};
}

inline void spectral_row(Report& r, const SpectralReport& s) {
  r.add({s.n, s.alpha, s.lambda_est, s.iterations, s.residual, s.normalized_ratio, s.converged,
         s.rayleigh_monotone});
}

inline void exact_columns(Report& r) { r.columns = {"n", "alpha", "F", "constant", "ratio", "residual"}; }

inline void exact_row(Report& r, const ExactCheck& e) {
  r.add({e.n, e.alpha, e.F, e.constant, e.ratio, e.residual});
}

inline Report run_sum(const RunConfig& c) {
  const AlphaParam alpha(c.alpha);
  SumReport s;
  if (c.input_path) {
    const auto set = parse_set_file(*c.input_path);
    s = c.method == SumMethod::naive ? gcd_sum_naive(set, alpha, c.threads) : gcd_sum_fast(set, alpha, c.threads);
  } else if (c.n) {
    const auto n = require_n(c, "sum");
    s = c.method == SumMethod::naive ? gcd_sum_naive(IntegerSet::range(n), alpha, c.threads)
                                     : gcd_sum_range(n, alpha);
  } else {
    throw DomainError("sum: give --input FILE or --n N");
  }
  Report r;
  r.single = true;
  r.columns = {"value", "method", "n", "alpha", "est_abs_error"};
  r.add({s.value, std::string(gcdsum::to_string(s.method)), s.n, s.alpha, s.est_abs_error});
  return r;
}

inline Report run_spectral(const RunConfig& c) {
  const auto s = power_iteration(require_n(c, "spectral"), AlphaParam(c.alpha), c.tol, c.max_iter, c.threads);
  Report r;
  r.single = true;
  spectral_columns(r);
  spectral_row(r, s);
  if (!s.converged) {
    r.failed = true;
    r.failure = "power iteration did not reach --tol within --max-iter";
  }
  return r;
}

inline Report run_exact(const RunConfig& c) {
  Report r;
  r.single = true;
  exact_columns(r);
  if (c.n && *c.n == 0) throw DomainError("exact-check: --n must be positive");
  exact_row(r, F_exact_check(c.n.value_or(10'000), AlphaParam(c.alpha)));
  return r;
}

inline void construction_columns(Report& r) {
  r.columns = {"n_target", "delta", "alpha", "smoothness_bound", "k", "a_size", "d_size", "m_size", "shortfall",
               "sum", "scale", "ratio", "est_abs_error", "invariants_ok"};
}

inline bool construction_row(Report& r, const ConstructionParams& p, unsigned threads,
                             const std::optional<std::string>& export_path) {
  const auto out = build_construction(p);
  const auto inv = check_construction(out, p);
  const auto lb = lower_bound_report(out, p, threads);
  if (export_path) {
    std::ofstream f(*export_path);
    if (!f) throw DomainError("cannot write export file '" + *export_path + "'");
    write_construction_file(f, out, p);
  }
  r.add({p.n_target, p.delta, p.alpha.value(), out.smoothness_bound, nat_value(out.k.value()), out.A.size(),
         out.D.size(), out.M_set.size(), out.shortfall, lb.sum, lb.scale, lb.ratio, lb.est_abs_error, inv.all()});
  return inv.all();
}

inline Report run_construct(const RunConfig& c) {
  ConstructionParams p{require_n(c, "construct"), c.delta, AlphaParam(c.alpha), c.squarefree_only};
  Report r;
  r.single = true;
  construction_columns(r);
  if (!construction_row(r, p, c.threads, c.export_path)) {
    r.failed = true;
    r.failure = "construction invariants failed";
  }
  return r;
}

inline Report run_closure(const RunConfig& c) {
  if (!c.input_path) throw DomainError("closure: --input is required");
  const auto set = parse_set_file(*c.input_path);
  const AlphaParam alpha(c.alpha);
  const auto trace = closure_transform(set);
  Report r;
  r.columns = {"sweep", "prime", "classes", "merged", "snapshot_hash", "exponent_mass"};
  for (const auto& s : trace.per_pass) {
    r.add({s.sweep, nat_value(s.prime), s.classes, s.merged, s.snapshot_hash, s.exponent_mass});
  }
  const double lhs = gcd_sum_naive(set, alpha, c.threads).value;
  const double rhs = weighted_gcd_sum_2omega(trace.final, alpha).value;
  const bool closed = is_divisor_closed(trace.final);
  const bool ineq = lhs <= rhs * (1.0 + 1e-12);
  r.summary = Json::object();
  r.summary["passes"] = trace.passes;
  r.summary["input_size"] = set.size();
  r.summary["final_size"] = trace.final.size();
  r.summary["divisor_closed"] = closed;
  r.summary["lhs"] = lhs;
  r.summary["rhs"] = rhs;
  r.summary["inequality_pass"] = ineq;
  if (c.export_path) {
    std::ofstream f(*c.export_path);
    if (!f) throw DomainError("cannot write export file '" + *c.export_path + "'");
    write_set(f, trace.final);
  }
  if (!closed || !ineq || trace.final.size() != set.size()) {
    r.failed = true;
    r.failure = "closure checks failed";
  }
  return r;
}

inline Report run_verify(const RunConfig& c) {
  VerifyOptions opt;
  opt.alpha = AlphaParam(c.alpha);
  opt.primes = c.primes;
  opt.trials = c.trials;
  opt.n = c.n.value_or(10'000);
  opt.delta = c.delta;
  opt.seed = c.seed;
  opt.threads = c.threads;
  const auto rows = run_verify_suite(c.suite, opt);
  Report r;
  r.columns = {"suite", "case", "lhs", "rhs", "metric", "tolerance", "pass", "enforced"};
  std::size_t failures = 0;
  for (const auto& v : rows) {
    r.add({v.suite, v.case_name, v.lhs, v.rhs, v.metric, v.tolerance, v.pass, v.enforced});
    if (v.enforced && !v.pass) ++failures;
  }
  if (failures) {
    r.failed = true;
    r.failure = std::to_string(failures) + " enforced check(s) failed";
  }
  return r;
}

inline Report run_scan(const RunConfig& c) {
  const AlphaParam alpha(c.alpha);
  Report r;
  if (c.kind == "spectral") {
    std::vector<std::uint64_t> fallback;
    for (int e = 8; e <= 14; ++e) fallback.push_back(std::uint64_t{1} << e);
    const auto ns = grid_as_counts(c, fallback);
    spectral_columns(r);
    for (const auto& s : spectral_scan(ns, alpha, c.tol, c.max_iter, c.threads)) spectral_row(r, s);
  } else if (c.kind == "exact") {
    exact_columns(r);
    for (auto n : grid_as_counts(c, {1'000, 10'000, 100'000})) exact_row(r, F_exact_check(n, alpha));
  } else if (c.kind == "lower") {
    construction_columns(r);
    bool ok = true;
    for (auto n : grid_as_counts(c, {1'000, 10'000, 100'000})) {
      ok = construction_row(r, ConstructionParams{n, c.delta, alpha, c.squarefree_only}, c.threads, std::nullopt) && ok;
    }
    if (!ok) {
      r.failed = true;
      r.failure = "construction invariants failed";
    }
  } else if (c.kind == "prod") {
    const std::vector<double> bounds = c.grid.empty() ? std::vector<double>{10, 100, 1e3, 1e4, 1e5, 1e6} : c.grid;
    r.columns = {"bound", "product", "ratio"};
    for (const auto& row : prod_lower_bound_scan(bounds, alpha)) r.add({row.bound, row.product, row.ratio});
  } else if (c.kind == "squarefree") {
    const SquarefreeLemmaParams lp(c.beta, c.beta_prime, alpha);
    r.columns = {"n", "size", "beta", "beta_prime", "lhs", "scale", "ratio", "ratio_sharpened"};
    auto emit = [&](std::uint64_t n, const IntegerSet& set) {
      const auto chk = squarefree_lemma_check(set, lp);
      r.add({n, set.size(), c.beta, c.beta_prime, chk.lhs, chk.scale, chk.ratio, chk.ratio_sharpened});
    };
    if (c.input_path) {
      const auto set = parse_set_file(*c.input_path);
      emit(static_cast<std::uint64_t>(to_double(set.max())), set);
    } else {
      for (auto n : grid_as_counts(c, {1'000, 10'000, 100'000})) {
        std::vector<Nat> sq;
        for (std::uint64_t m = 1; m <= n; ++m) {
          if (factorize(m).is_squarefree()) sq.push_back(m);
        }
        emit(n, IntegerSet::from_sorted(std::move(sq)));
      }
    }
  } else {
    throw DomainError("scan: unknown --kind '" + c.kind + "' (spectral, lower, prod, exact, squarefree)");
  }
  return r;
}

inline Report dispatch(const RunConfig& c) {
  switch (c.command) {
    case Command::sum: return run_sum(c);
    case Command::spectral: return run_spectral(c);
    case Command::exact_check: return run_exact(c);
    case Command::construct: return run_construct(c);
    case Command::closure: return run_closure(c);
    case Command::verify: return run_verify(c);
    case Command::scan: return run_scan(c);
  }
  throw InternalError("unhandled command");
}

inline void emit(std::ostream& out, const RunConfig& c, const Report& r, double elapsed_ms) {
  if (c.format == Format::csv) {
    CsvTable t;
    t.header = r.columns;
    for (const auto& row : r.rows) {
      std::vector<std::string> fields;
      for (const auto& v : row) fields.push_back(csv_field(v));
      t.rows.push_back(std::move(fields));
    }
    t.write(out);
    return;
  }
  Json doc = Json::object();
  doc["command"] = std::string(to_string(c.command));
  doc["params"] = params_json(c);
  if (r.single && r.rows.size() == 1) {
    doc["results"] = r.row_object(0);
  } else {
    Json rows = Json::array();
    for (std::size_t i = 0; i < r.rows.size(); ++i) rows.push_back(r.row_object(i));
    if (r.summary.is_null()) {
      doc["results"] = std::move(rows);
    } else {
      Json res = r.summary;
      res["steps"] = std::move(rows);
      doc["results"] = std::move(res);
    }
  }
  doc["timings_ms"] = Json::object({{"total", elapsed_ms}});
  write_json(out, doc);
  out << '\n';
}

}  // namespace detail

/// Runs one command. Reports go to `out` (or --out), diagnostics to `err`.
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    const Report report = detail::dispatch(config);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (config.out_path) {
      std::ofstream f(*config.out_path);
      if (!f) throw DomainError("cannot write output file '" + *config.out_path + "'");
      detail::emit(f, config, report, ms);
    } else {
      detail::emit(out, config, report, ms);
    }
    if (report.failed) {
      err << "gcdsum " << to_string(config.command) << ": " << report.failure << '\n';
      return kExitVerify;
    }
    return kExitOk;
  } catch (const InternalError& e) {
    err << "gcdsum: internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const Error& e) {
    err << "gcdsum: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace gcdsum::cli
