#include "infeq/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unistd.h>

#include "infeq/error.hpp"
#include "infeq/examples.hpp"
#include "infeq/json_io.hpp"

namespace infeq::cli {

namespace {

using json::Json;

constexpr int kDefaultSupIterations = 200;

struct Artifact {
  std::string body;
  std::string summary;
  int code = kOk;
};

Json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

void write_atomically(const std::string& path, const std::string& body) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + tmp.string());
    out << body;
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw Error(ErrorKind::InvalidInput, "cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::InvalidInput, "cannot rename onto " + path);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Infeasible:
    case ErrorKind::CertifiedInfeasible:
      return kInfeasible;
    case ErrorKind::ToleranceNotMet:
    case ErrorKind::ConvergenceTooSlow:
    case ErrorKind::NotConverged:
      return kNumericalFailure;
    default:
      return kInvalidInput;
  }
}

Json header(Command command, const std::string& status) {
  Json out;
  out["command"] = to_string(command);
  out["status"] = status;
  return out;
}

Json trace_json(const NormTrace& trace) {
  Json out = Json::array();
  for (const auto& e : trace.entries) out.push_back(json::trace_entry(e));
  return out;
}

MinNormResult solve_system(const LinearSystem& sys, const RunConfig& config) {
  if (sys.pair().q() == 2.0) return min_norm_l2(sys, config.tol);
  if (!config.N) throw Error(ErrorKind::InvalidInput, "q != 2 needs --N for the truncated solve");
  return min_norm_truncated_q(sys, *config.N, config.tol);
}

Artifact solve(const RunConfig& config) {
  const auto sys = json::read_any_system(load(config.input));
  const auto result = solve_system(sys, config);
  Json out = header(Command::Solve, "ok");
  out["result"] = json::min_norm_result(result);
  std::string summary = "solve: min norm " + short_fmt(result.norm.estimate.re()) + " +- " +
                        short_fmt(result.norm.error_bound) + " (" + to_string(result.method) + ", " +
                        std::to_string(sys.size()) + " rows)";
  return {dump(out), summary};
}

Artifact trace(const RunConfig& config) {
  if (!config.r_max) throw Error(ErrorKind::InvalidInput, "trace needs --r-max");
  const auto sys = json::read_any_system(load(config.input));
  const auto t = norm_trace(sys, *config.r_max, config.tol);
  std::string csv = "r,min_norm,error_bound,lower_bound,status\n";
  std::size_t ok = 0;
  for (const auto& e : t.entries) {
    const double m = e.min_norm ? e.min_norm->estimate.re() : std::nan("");
    const double err = e.min_norm ? e.min_norm->error_bound : std::nan("");
    csv += std::to_string(e.r) + "," + fmt(m) + "," + fmt(err) + "," + fmt(e.lower_bound) + "," + to_string(e.status) +
           "\n";
    if (e.status == TraceEntry::Status::Ok) ++ok;
  }
  return {csv, "trace: " + std::to_string(t.entries.size()) + " prefixes, " + std::to_string(ok) + " ok"};
}

Artifact certify_cmd(const RunConfig& config) {
  if (!config.M) throw Error(ErrorKind::InvalidInput, "certify needs --M");
  const auto sys = json::read_any_system(load(config.input));
  const auto t = norm_trace(sys, config.r_max.value_or(sys.size()), config.tol);
  const auto c = certify(t, *config.M);
  const bool divergent = c.verdict == Certificate::Verdict::DivergenceEvidence;
  Json out = header(Command::Certify, divergent ? "divergence" : "ok");
  out["certificate"] = json::certificate(c);
  out["trace"] = trace_json(t);
  return {dump(out), "certify: " + to_string(c.verdict) + " at M = " + short_fmt(*config.M),
          divergent ? kInfeasible : kOk};
}

Artifact helly(const RunConfig& config) {
  const auto spec = json::read_helly(load(config.input));
  const auto sys = helly_system(spec);
  const std::size_t r_max = std::min(config.r_max.value_or(spec.r), spec.r);
  const auto t = norm_trace(sys, r_max, config.tol);
  Json rows = Json::array();
  for (std::size_t r = 1; r <= r_max; ++r) {
    Json row;
    row["r"] = r;
    const auto x = helly_explicit_solution(spec, r);
    row["explicit_solution"] = json::sequence(x);
    row["explicit_norm"] = json::bounded(lp_norm(x, spec.pair.q(), config.tol));
    row["lower_bound"] = json::bounded(helly_lower_bound(spec, r, config.tol));
    row["trace"] = json::trace_entry(t.entries[r - 1]);
    rows.push_back(row);
  }
  Json out = header(Command::Helly, "ok");
  out["spec"] = json::helly(spec);
  out["rows"] = rows;
  std::string summary = "helly: " + std::to_string(r_max) + " prefixes";
  int code = kOk;
  if (config.M) {
    const auto c = certify(t, *config.M);
    out["certificate"] = json::certificate(c);
    summary += ", " + to_string(c.verdict) + " at M = " + short_fmt(*config.M);
    if (c.verdict == Certificate::Verdict::DivergenceEvidence) {
      out["status"] = "divergence";
      code = kInfeasible;
    }
  }
  return {dump(out), summary, code};
}

Artifact dirichlet(const RunConfig& config) {
  const auto spec = json::read_dirichlet(load(config.input));
  const auto sys = dirichlet_system(spec);
  const auto g = gram_matrix(sys, config.tol);
  const auto result = min_norm_l2(sys, config.tol);
  Json out = header(Command::Dirichlet, "ok");
  out["spec"] = json::dirichlet(spec);
  out["gram"] = json::gram(g);
  out["result"] = json::min_norm_result(result);
  std::string summary = "dirichlet: " + std::to_string(spec.points.size()) + " points, min norm " +
                        short_fmt(result.norm.estimate.re()) + ", Gram rank " + std::to_string(result.spectrum->rank);
  return {dump(out), summary};
}

Artifact eval_poly(const RunConfig& config) {
  const auto in = load(config.input);
  if (!in.is_object() || !in.contains("polynomial") || !in.contains("x"))
    throw Error(ErrorKind::InvalidInput, "eval-poly input needs \"polynomial\" and \"x\"");
  const auto P = json::read_polynomial(in["polynomial"]);
  const auto x = json::read_sequence(in["x"]);
  const auto value = eval_product_form(P, x, config.tol);
  Json out = header(Command::EvalPoly, "ok");
  out["value"] = json::bounded(value);
  return {dump(out), "eval-poly: " + short_fmt(value.estimate.re()) +
                         (value.estimate.im() != 0.0 ? " + " + short_fmt(value.estimate.im()) + "i" : "") + " +- " +
                         short_fmt(value.error_bound)};
}

Artifact riesz(const RunConfig& config) {
  const auto in = load(config.input);
  if (!in.is_object() || !in.contains("system")) throw Error(ErrorKind::InvalidInput, "riesz input needs \"system\"");
  const auto sys = json::read_any_system(in["system"]);
  Json out = header(Command::Riesz, "ok");
  if (in.contains("h")) {
    const auto& hj = in["h"];
    if (!hj.is_array()) throw Error(ErrorKind::InvalidInput, "h must be an array of scalars");
    std::vector<Scalar> h;
    for (const auto& c : hj) h.push_back(json::read_scalar(c));
    if (h.size() != sys.size()) throw Error(ErrorKind::InvalidInput, "h needs one entry per row");
    const auto ratio = riesz_ratio(sys, h, config.tol);
    out["ratio"] = json::bounded(ratio);
    return {dump(out), "riesz: ratio " + short_fmt(ratio.estimate.re()) + " +- " + short_fmt(ratio.error_bound)};
  }
  const int iterations = config.iterations.value_or(kDefaultSupIterations);
  const double bound = riesz_sup_search(sys, iterations, config.tol, config.seed);
  out["lower_bound"] = json::number(bound);
  out["iterations"] = iterations;
  out["seed"] = config.seed;
  if (std::isinf(bound)) {
    out["status"] = "infeasible";
    return {dump(out), "riesz: certified infeasibility witness found", kInfeasible};
  }
  return {dump(out), "riesz: sup search lower bound " + short_fmt(bound)};
}

Artifact dispatch(const RunConfig& config) {
  switch (config.command) {
    case Command::Solve: return solve(config);
    case Command::Trace: return trace(config);
    case Command::Certify: return certify_cmd(config);
    case Command::Helly: return helly(config);
    case Command::Dirichlet: return dirichlet(config);
    case Command::EvalPoly: return eval_poly(config);
    case Command::Riesz: return riesz(config);
  }
  throw Error(ErrorKind::InvalidInput, "unknown command");
}

}  // namespace

Command parse_command(const std::string& name) {
  for (auto c : {Command::Solve, Command::Trace, Command::Certify, Command::Helly, Command::Dirichlet,
                 Command::EvalPoly, Command::Riesz})
    if (to_string(c) == name) return c;
  throw Error(ErrorKind::InvalidInput, "unknown command " + name);
}

std::string to_string(Command command) {
  switch (command) {
    case Command::Solve: return "solve";
    case Command::Trace: return "trace";
    case Command::Certify: return "certify";
    case Command::Helly: return "helly";
    case Command::Dirichlet: return "dirichlet";
    case Command::EvalPoly: return "eval-poly";
    case Command::Riesz: return "riesz";
  }
  return "unknown";
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (!(config.tol > 0.0) || !std::isfinite(config.tol)) {
    err << "InvalidInput: --tol must be a positive number\n";
    return kInvalidInput;
  }
  try {
    const auto artifact = dispatch(config);
    write_atomically(config.output, artifact.body);
    out << artifact.summary << "\n";
    return artifact.code;
  } catch (const Error& e) {
    const int code = exit_code(e.kind());
    err << e.what() << "\n";
    if (code == kInfeasible) {
      Json status = header(config.command, "infeasible");
      status["error"] = std::string(infeq::to_string(e.kind()));
      status["message"] = e.what();
      status["detail"] = json::number(e.detail());
      try {
        write_atomically(config.output, dump(status));
      } catch (const Error& w) {
        err << w.what() << "\n";
        return kInvalidInput;
      }
      out << to_string(config.command) << ": infeasible\n";
    }
    return code;
  } catch (const Json::exception& e) {
    err << "InvalidInput: " << e.what() << "\n";
    return kInvalidInput;
  }
}

}  // namespace infeq::cli
