#include "infeq/json_io.hpp"

#include <cmath>
#include <string>

#include "infeq/error.hpp"

namespace infeq::json {

namespace {

[[noreturn]] void bad(const std::string& message) { throw Error(ErrorKind::InvalidInput, message); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object with key \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing key \"") + key + "\"");
  return *it;
}

std::size_t read_index(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

Json exponent(double v) { return std::isinf(v) ? Json("inf") : Json(v); }

double read_exponent(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return kInfinity;
  if (!j.is_number()) bad("exponent must be a number or \"inf\"");
  return j.get<double>();
}

Field read_field(const Json& j) {
  if (j == "real") return Field::Real;
  if (j == "complex") return Field::Complex;
  bad("field must be \"real\" or \"complex\"");
}

const char* field_name(Field f) { return f == Field::Real ? "real" : "complex"; }

ConjugatePair read_pair(const Json& j) {
  const bool has_p = j.contains("p");
  const bool has_q = j.contains("q");
  if (!has_p && !has_q) return make_conjugate(2.0);
  if (!has_q) return make_conjugate(read_exponent(j["p"]));
  const auto pair = conjugate_from_q(read_exponent(j["q"]));
  if (has_p) {
    const double p = read_exponent(j["p"]);
    if (std::abs(p - pair.p()) > 1e-12 * std::max(1.0, std::abs(p)) && !(std::isinf(p) && std::isinf(pair.p())))
      bad("p and q are not conjugate");
  }
  return pair;
}

Json matrix_pair(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(Json::array({number(m(i, k).real()), number(m(i, k).imag())}));
    rows.push_back(row);
  }
  return rows;
}

Json bounded_list(const std::vector<BoundedValue>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(bounded(v));
  return out;
}

std::vector<BoundedValue> read_bounded_list(const Json& j) {
  if (!j.is_array()) bad("expected an array of bounded values");
  std::vector<BoundedValue> out;
  for (const auto& v : j) out.push_back(read_bounded(v));
  return out;
}

}  // namespace

Json number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double read_number(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (j.is_string()) {
    if (j == "inf") return kInfinity;
    if (j == "-inf") return -kInfinity;
  }
  if (!j.is_number()) bad("expected a number");
  return j.get<double>();
}

Json scalar(const Scalar& s) { return Json::array({number(s.re()), number(s.im())}); }

Scalar read_scalar(const Json& j) {
  if (j.is_number()) return Scalar(j.get<double>());
  if (!j.is_array() || j.size() != 2) bad("scalar must be [re, im]");
  return Scalar::infer({read_number(j[0]), read_number(j[1])});
}

Json bounded(const BoundedValue& v) {
  Json out;
  out["estimate"] = scalar(v.estimate);
  out["error_bound"] = number(v.error_bound);
  return out;
}

BoundedValue read_bounded(const Json& j) {
  return {read_scalar(field(j, "estimate")), read_number(field(j, "error_bound"))};
}

Json sequence(const SeqRep& a) {
  Json out;
  switch (a.kind()) {
    case SeqRep::Kind::Sparse: {
      out["kind"] = "sparse";
      Json entries = Json::array();
      for (const auto& e : a.entries()) entries.push_back(Json::array({e.index, number(e.value.re()), number(e.value.im())}));
      out["entries"] = entries;
      break;
    }
    case SeqRep::Kind::PowerLaw:
      out["kind"] = "powerlaw";
      out["s"] = Json::array({a.exponent().real(), a.exponent().imag()});
      break;
    case SeqRep::Kind::Tail:
      out["kind"] = "tail";
      out["base"] = sequence(a.base());
      out["start"] = a.start();
      break;
    case SeqRep::Kind::Combination: {
      out["kind"] = "combo";
      Json terms = Json::array();
      for (const auto& t : a.terms()) terms.push_back(Json::array({scalar(t.coefficient), sequence(t.sequence)}));
      out["terms"] = terms;
      break;
    }
  }
  return out;
}

SeqRep read_sequence(const Json& j) {
  const auto& kind = field(j, "kind");
  if (kind == "sparse") {
    const auto& entries = field(j, "entries");
    if (!entries.is_array()) bad("sparse entries must be an array");
    std::vector<SeqRep::Entry> out;
    for (const auto& e : entries) {
      if (!e.is_array() || e.size() != 3) bad("sparse entry must be [j, re, im]");
      out.push_back({read_index(e[0], "sparse index"), Scalar::infer({read_number(e[1]), read_number(e[2])})});
    }
    return SeqRep::sparse(std::move(out));
  }
  if (kind == "powerlaw") return SeqRep::power_law(read_scalar(field(j, "s")).value());
  if (kind == "tail") return SeqRep::tail(read_sequence(field(j, "base")), read_index(field(j, "start"), "tail start"));
  if (kind == "combo") {
    const auto& terms = field(j, "terms");
    if (!terms.is_array()) bad("combo terms must be an array");
    std::vector<SeqTerm> out;
    for (const auto& t : terms) {
      if (!t.is_array() || t.size() != 2) bad("combo term must be [[re, im], sequence]");
      out.push_back({read_scalar(t[0]), read_sequence(t[1])});
    }
    return SeqRep::combination(std::move(out));
  }
  bad("unknown sequence kind " + kind.dump());
}

Json polynomial(const MultiplicativePolynomial& P) {
  Json out;
  out["D"] = P.degree();
  out["q"] = exponent(P.q());
  Json coeffs = Json::object();
  for (unsigned d = 1; d <= P.degree(); ++d) coeffs[std::to_string(d)] = sequence(P.coefficient(d));
  out["coeffs"] = coeffs;
  return out;
}

MultiplicativePolynomial read_polynomial(const Json& j) {
  const unsigned D = static_cast<unsigned>(read_index(field(j, "D"), "D"));
  const double q = read_exponent(field(j, "q"));
  const auto& coeffs = field(j, "coeffs");
  if (!coeffs.is_object()) bad("coeffs must be an object keyed by degree");
  std::vector<SeqRep> out(D);
  for (const auto& [key, value] : coeffs.items()) {
    std::size_t pos = 0;
    unsigned long d = 0;
    try {
      d = std::stoul(key, &pos);
    } catch (const std::exception&) {
      bad("coefficient key \"" + key + "\" is not a degree");
    }
    if (pos != key.size() || d < 1 || d > D) bad("coefficient key \"" + key + "\" is outside 1..D");
    out[d - 1] = read_sequence(value);
  }
  return {D, q, std::move(out)};
}

Json system(const LinearSystem& sys) {
  Json out;
  out["field"] = field_name(sys.field());
  out["p"] = exponent(sys.pair().p());
  out["q"] = exponent(sys.pair().q());
  Json rows = Json::array();
  for (const auto& row : sys.rows()) {
    Json r;
    r["a"] = sequence(row.a);
    r["b"] = scalar(row.b);
    rows.push_back(r);
  }
  out["rows"] = rows;
  return out;
}

LinearSystem read_system(const Json& j) {
  const auto pair = read_pair(j);
  const auto& rows = field(j, "rows");
  if (!rows.is_array()) bad("rows must be an array");
  std::vector<Row> out;
  for (const auto& r : rows) out.push_back({read_sequence(field(r, "a")), read_scalar(field(r, "b"))});
  if (j.contains("field")) return {pair, std::move(out), read_field(j["field"])};
  return {pair, std::move(out)};
}

Json helly(const HellySpec& spec) {
  Json out;
  out["base"] = sequence(spec.base);
  out["p"] = exponent(spec.pair.p());
  out["r"] = spec.r;
  return out;
}

HellySpec read_helly(const Json& j) {
  HellySpec spec;
  spec.base = read_sequence(field(j, "base"));
  spec.pair = read_pair(j);
  spec.r = read_index(field(j, "r"), "r");
  if (spec.r == 0) bad("r must be at least 1");
  return spec;
}

Json dirichlet(const DirichletSpec& spec) {
  Json out;
  Json points = Json::array();
  for (const auto& s : spec.points) points.push_back(Json::array({s.real(), s.imag()}));
  Json values = Json::array();
  for (const auto& b : spec.values) values.push_back(Json::array({b.real(), b.imag()}));
  out["points"] = points;
  out["values"] = values;
  return out;
}

DirichletSpec read_dirichlet(const Json& j) {
  DirichletSpec spec;
  const auto& points = field(j, "points");
  const auto& values = field(j, "values");
  if (!points.is_array() || !values.is_array()) bad("points and values must be arrays");
  for (const auto& s : points) spec.points.push_back(read_scalar(s).value());
  for (const auto& b : values) spec.values.push_back(read_scalar(b).value());
  return spec;
}

LinearSystem read_any_system(const Json& j) {
  if (j.is_object()) {
    if (j.contains("rows")) return read_system(j);
    if (j.contains("base")) return helly_system(read_helly(j));
    if (j.contains("points")) return dirichlet_system(read_dirichlet(j));
  }
  bad("input is not a system, helly spec or dirichlet spec");
}

Json min_norm_result(const MinNormResult& r) {
  Json out;
  out["method"] = to_string(r.method);
  out["norm"] = bounded(r.norm);
  Json h = Json::array();
  for (const auto& c : r.h) h.push_back(scalar(c));
  out["h"] = h;
  out["x"] = sequence(r.x);
  out["residuals"] = bounded_list(r.residuals);
  if (r.spectrum) {
    Json s;
    s["max_eigenvalue"] = number(r.spectrum->max_eigenvalue);
    s["min_eigenvalue"] = number(r.spectrum->min_eigenvalue);
    s["threshold"] = number(r.spectrum->threshold);
    s["rank"] = r.spectrum->rank;
    out["spectrum"] = s;
  }
  if (r.truncation) {
    Json t;
    t["N"] = r.truncation->N;
    t["value_at_N"] = number(r.truncation->value_at_N);
    t["value_at_2N"] = number(r.truncation->value_at_2N);
    t["surrogate"] = r.truncation->surrogate;
    t["iterations"] = r.truncation->iterations;
    out["truncation"] = t;
  }
  return out;
}

MinNormResult read_min_norm_result(const Json& j) {
  MinNormResult r;
  const auto& method = field(j, "method");
  if (method == to_string(MinNormResult::Method::GramExact)) {
    r.method = MinNormResult::Method::GramExact;
  } else if (method == to_string(MinNormResult::Method::TruncatedIrls)) {
    r.method = MinNormResult::Method::TruncatedIrls;
  } else {
    bad("unknown method " + method.dump());
  }
  r.norm = read_bounded(field(j, "norm"));
  for (const auto& c : field(j, "h")) r.h.push_back(read_scalar(c));
  r.x = read_sequence(field(j, "x"));
  r.residuals = read_bounded_list(field(j, "residuals"));
  if (j.contains("spectrum")) {
    const auto& s = j["spectrum"];
    r.spectrum = GramSpectrum{read_number(field(s, "max_eigenvalue")), read_number(field(s, "min_eigenvalue")),
                              read_number(field(s, "threshold")), read_index(field(s, "rank"), "rank")};
  }
  if (j.contains("truncation")) {
    const auto& t = j["truncation"];
    TruncationReport report;
    report.N = read_index(field(t, "N"), "N");
    report.value_at_N = read_number(field(t, "value_at_N"));
    report.value_at_2N = read_number(field(t, "value_at_2N"));
    report.surrogate = field(t, "surrogate").get<bool>();
    report.iterations = field(t, "iterations").get<int>();
    r.truncation = report;
  }
  return r;
}

Json trace_entry(const TraceEntry& e) {
  Json out;
  out["r"] = e.r;
  out["status"] = to_string(e.status);
  out["min_norm"] = e.min_norm ? bounded(*e.min_norm) : Json(nullptr);
  out["lower_bound"] = number(e.lower_bound);
  out["message"] = e.message;
  return out;
}

TraceEntry read_trace_entry(const Json& j) {
  TraceEntry e;
  e.r = read_index(field(j, "r"), "r");
  const auto& status = field(j, "status");
  if (status == to_string(TraceEntry::Status::Ok)) {
    e.status = TraceEntry::Status::Ok;
  } else if (status == to_string(TraceEntry::Status::Infeasible)) {
    e.status = TraceEntry::Status::Infeasible;
  } else if (status == to_string(TraceEntry::Status::Error)) {
    e.status = TraceEntry::Status::Error;
  } else {
    bad("unknown trace status " + status.dump());
  }
  if (const auto& m = field(j, "min_norm"); !m.is_null()) e.min_norm = read_bounded(m);
  e.lower_bound = read_number(field(j, "lower_bound"));
  e.message = field(j, "message").get<std::string>();
  return e;
}

Json certificate(const Certificate& c) {
  Json out;
  out["verdict"] = to_string(c.verdict);
  out["M"] = number(c.M);
  out["r_max"] = c.r_max;
  Json exceeding = Json::array();
  for (const auto& [r, bound] : c.exceeding) exceeding.push_back(Json::array({r, number(bound)}));
  out["exceeding"] = exceeding;
  out["monotone_growth"] = c.monotone_growth;
  out["text"] = c.text;
  return out;
}

Certificate read_certificate(const Json& j) {
  Certificate c;
  const auto& verdict = field(j, "verdict");
  if (verdict == to_string(Certificate::Verdict::BoundedBy)) {
    c.verdict = Certificate::Verdict::BoundedBy;
  } else if (verdict == to_string(Certificate::Verdict::DivergenceEvidence)) {
    c.verdict = Certificate::Verdict::DivergenceEvidence;
  } else if (verdict == to_string(Certificate::Verdict::Inconclusive)) {
    c.verdict = Certificate::Verdict::Inconclusive;
  } else {
    bad("unknown verdict " + verdict.dump());
  }
  c.M = read_number(field(j, "M"));
  c.r_max = read_index(field(j, "r_max"), "r_max");
  for (const auto& e : field(j, "exceeding")) {
    if (!e.is_array() || e.size() != 2) bad("exceeding entry must be [r, bound]");
    c.exceeding.emplace_back(read_index(e[0], "r"), read_number(e[1]));
  }
  c.monotone_growth = field(j, "monotone_growth").get<bool>();
  c.text = field(j, "text").get<std::string>();
  return c;
}

Json gram(const GramMatrix& g) {
  Json out;
  out["values"] = matrix_pair(g.values);
  Json errors = Json::array();
  for (Eigen::Index i = 0; i < g.errors.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < g.errors.cols(); ++k) row.push_back(number(g.errors(i, k)));
    errors.push_back(row);
  }
  out["errors"] = errors;
  return out;
}

GramMatrix read_gram(const Json& j) {
  const auto& values = field(j, "values");
  const auto& errors = field(j, "errors");
  const auto n = static_cast<Eigen::Index>(values.size());
  if (static_cast<Eigen::Index>(errors.size()) != n) bad("gram values and errors differ in size");
  GramMatrix g{Eigen::MatrixXcd(n, n), Eigen::MatrixXd(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& vrow = values[static_cast<std::size_t>(i)];
    const auto& erow = errors[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(vrow.size()) != n || static_cast<Eigen::Index>(erow.size()) != n)
      bad("gram matrix must be square");
    for (Eigen::Index k = 0; k < n; ++k) {
      g.values(i, k) = read_scalar(vrow[static_cast<std::size_t>(k)]).value();
      g.errors(i, k) = read_number(erow[static_cast<std::size_t>(k)]);
    }
  }
  return g;
}

}  // namespace infeq::json
