#pragma once

// JSON encodings of the library's values. Readers throw InvalidInput on any
// schema violation; writers produce output the readers accept.
//
//   scalar      [re, im]  (a bare number is read as a real scalar)
//   exponent    number, or "inf"
//   SeqRep      {"kind":"sparse","entries":[[j,re,im],...]}
//               {"kind":"powerlaw","s":[re,im]}
//               {"kind":"tail","base":<SeqRep>,"start":i}
//               {"kind":"combo","terms":[[[re,im],<SeqRep>],...]}
//   polynomial  {"D":d,"q":q,"coeffs":{"1":<SeqRep>,...}}
//   system      {"field":"real"|"complex","p":p,"q":q,"rows":[{"a":<SeqRep>,"b":[re,im]},...]}
//   helly       {"base":<SeqRep>,"p":p,"r":r}
//   dirichlet   {"points":[[re,im],...],"values":[[re,im],...]}

#include <json.hpp>

#include "infeq/examples.hpp"
#include "infeq/polynomial.hpp"
#include "infeq/solver.hpp"

namespace infeq::json {

using Json = nlohmann::ordered_json;

/// Finite numbers as numbers, +-inf as "inf" / "-inf", NaN as null.
Json number(double v);
double read_number(const Json& j);

Json scalar(const Scalar& s);
Scalar read_scalar(const Json& j);

Json bounded(const BoundedValue& v);
BoundedValue read_bounded(const Json& j);

Json sequence(const SeqRep& a);
SeqRep read_sequence(const Json& j);

Json polynomial(const MultiplicativePolynomial& P);
MultiplicativePolynomial read_polynomial(const Json& j);

Json system(const LinearSystem& sys);
LinearSystem read_system(const Json& j);

Json helly(const HellySpec& spec);
HellySpec read_helly(const Json& j);

Json dirichlet(const DirichletSpec& spec);
DirichletSpec read_dirichlet(const Json& j);

/// Builds the system described by any of the three input schemas, told apart
/// by their keys: "rows", "base" or "points".
LinearSystem read_any_system(const Json& j);

Json min_norm_result(const MinNormResult& r);
MinNormResult read_min_norm_result(const Json& j);

Json trace_entry(const TraceEntry& e);
TraceEntry read_trace_entry(const Json& j);

Json certificate(const Certificate& c);
Certificate read_certificate(const Json& j);

Json gram(const GramMatrix& g);
GramMatrix read_gram(const Json& j);

}  // namespace infeq::json
