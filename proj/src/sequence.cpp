#include "infeq/sequence.hpp"

#include <algorithm>
#include <string>

#include "expansion.hpp"
#include "infeq/error.hpp"

namespace infeq {

struct SeqRep::Node {
  Kind kind = Kind::Sparse;
  std::vector<Entry> entries;
  Complex exponent{0.0, 0.0};
  std::optional<SeqRep> base;
  std::size_t start = 1;
  std::vector<SeqTerm> terms;
  Field field = Field::Real;
  int depth = 1;
};

namespace {

Field field_of(Complex z) { return z.imag() == 0.0 ? Field::Real : Field::Complex; }

void require_kind(SeqRep::Kind actual, SeqRep::Kind wanted, const char* what) {
  if (actual != wanted) {
    throw Error(ErrorKind::UnsupportedRepresentation,
                std::string("sequence accessor ") + what + " used on a different kind");
  }
}

// Rewrites `seq` scaled by `coefficient` and restricted to j >= start as a flat
// list of atoms (sparse, power law, or tail of a power law).
void flatten_into(const SeqRep& seq, const Scalar& coefficient, std::size_t start,
                  std::vector<SeqTerm>& out) {
  switch (seq.kind()) {
    case SeqRep::Kind::Sparse: {
      std::vector<SeqRep::Entry> kept;
      for (const auto& e : seq.entries()) {
        if (e.index >= start) kept.push_back(e);
      }
      if (!kept.empty()) out.push_back({coefficient, SeqRep::sparse(std::move(kept))});
      break;
    }
    case SeqRep::Kind::PowerLaw:
      out.push_back({coefficient, SeqRep::tail(seq, start)});
      break;
    case SeqRep::Kind::Tail:
      flatten_into(seq.base(), coefficient, std::max(start, seq.start()), out);
      break;
    case SeqRep::Kind::Combination:
      for (const auto& t : seq.terms()) {
        flatten_into(t.sequence, coefficient * t.coefficient, start, out);
      }
      break;
  }
}

}  // namespace

SeqRep::SeqRep() : node_(std::make_shared<const Node>()) {}

SeqRep::SeqRep(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

SeqRep SeqRep::sparse(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  auto node = std::make_shared<Node>();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].index == 0) throw Error(ErrorKind::InvalidInput, "sequence indices start at 1");
    if (i > 0 && entries[i].index == entries[i - 1].index) {
      throw Error(ErrorKind::InvalidInput,
                  "duplicate sparse index " + std::to_string(entries[i].index));
    }
    if (entries[i].value.is_zero()) continue;
    node->field = join(node->field, entries[i].value.field());
    node->entries.push_back(entries[i]);
  }
  return SeqRep(std::move(node));
}

SeqRep SeqRep::unit(std::size_t index) { return sparse({{index, Scalar(1.0)}}); }

SeqRep SeqRep::power_law(Complex exponent) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::PowerLaw;
  node->exponent = exponent;
  node->field = field_of(exponent);
  return SeqRep(std::move(node));
}

SeqRep SeqRep::tail(SeqRep base, std::size_t start) {
  if (start == 0) throw Error(ErrorKind::InvalidInput, "tail start index must be >= 1");
  if (base.kind() == Kind::Tail) {
    return tail(base.base(), std::max(start, base.start()));
  }
  if (start == 1) return base;
  auto node = std::make_shared<Node>();
  node->kind = Kind::Tail;
  node->field = base.field();
  node->depth = 1 + base.depth();
  node->start = start;
  node->base = std::move(base);
  if (node->depth > kMaxSequenceDepth) {
    std::vector<SeqTerm> flat;
    flatten_into(*node->base, Scalar(1.0), start, flat);
    return combination(std::move(flat));
  }
  return SeqRep(std::move(node));
}

SeqRep SeqRep::combination(std::vector<SeqTerm> terms) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Combination;
  int deepest = 0;
  for (auto& t : terms) {
    if (t.sequence.kind() == Kind::Combination) {
      for (const auto& inner : t.sequence.terms()) {
        node->terms.push_back({t.coefficient * inner.coefficient, inner.sequence});
      }
    } else {
      node->terms.push_back(std::move(t));
    }
  }
  for (const auto& t : node->terms) {
    node->field = join(node->field, join(t.coefficient.field(), t.sequence.field()));
    deepest = std::max(deepest, t.sequence.depth());
  }
  node->depth = 1 + deepest;
  if (node->depth > kMaxSequenceDepth) {
    std::vector<SeqTerm> flat;
    for (const auto& t : node->terms) flatten_into(t.sequence, t.coefficient, 1, flat);
    auto flat_node = std::make_shared<Node>();
    flat_node->kind = Kind::Combination;
    flat_node->field = node->field;
    flat_node->terms = std::move(flat);
    for (const auto& t : flat_node->terms) {
      flat_node->depth = std::max(flat_node->depth, 1 + t.sequence.depth());
    }
    return SeqRep(std::move(flat_node));
  }
  return SeqRep(std::move(node));
}

SeqRep::Kind SeqRep::kind() const { return node_->kind; }

std::span<const SeqRep::Entry> SeqRep::entries() const {
  require_kind(kind(), Kind::Sparse, "entries()");
  return node_->entries;
}

Complex SeqRep::exponent() const {
  require_kind(kind(), Kind::PowerLaw, "exponent()");
  return node_->exponent;
}

const SeqRep& SeqRep::base() const {
  require_kind(kind(), Kind::Tail, "base()");
  return *node_->base;
}

std::size_t SeqRep::start() const {
  require_kind(kind(), Kind::Tail, "start()");
  return node_->start;
}

std::span<const SeqTerm> SeqRep::terms() const {
  require_kind(kind(), Kind::Combination, "terms()");
  return node_->terms;
}

Scalar SeqRep::operator[](std::size_t j) const {
  switch (kind()) {
    case Kind::Sparse: {
      const auto& es = node_->entries;
      auto it = std::lower_bound(es.begin(), es.end(), j,
                                 [](const Entry& e, std::size_t idx) { return e.index < idx; });
      if (it != es.end() && it->index == j) return it->value;
      return Scalar(0.0);
    }
    case Kind::PowerLaw: {
      const double log_j = std::log(static_cast<double>(j));
      const Complex s = node_->exponent;
      return Scalar(std::polar(std::exp(-s.real() * log_j), -s.imag() * log_j), node_->field);
    }
    case Kind::Tail:
      return j < node_->start ? Scalar(Complex(0.0, 0.0), node_->field) : (*node_->base)[j];
    case Kind::Combination: {
      Scalar sum(Complex(0.0, 0.0), node_->field);
      for (const auto& t : node_->terms) sum = sum + t.coefficient * t.sequence[j];
      return sum;
    }
  }
  return Scalar(0.0);
}

Field SeqRep::field() const { return node_->field; }

int SeqRep::depth() const { return node_->depth; }

std::optional<std::size_t> SeqRep::support_end() const {
  switch (kind()) {
    case Kind::Sparse:
      return node_->entries.empty() ? 0 : node_->entries.back().index;
    case Kind::PowerLaw:
      return std::nullopt;
    case Kind::Tail: {
      auto end = node_->base->support_end();
      if (end && *end < node_->start) return 0;
      return end;
    }
    case Kind::Combination: {
      std::size_t last = 0;
      for (const auto& t : node_->terms) {
        auto end = t.sequence.support_end();
        if (!end) return std::nullopt;
        last = std::max(last, *end);
      }
      return last;
    }
  }
  return std::nullopt;
}

bool in_lp(const SeqRep& a, double p) {
  conjugate_exponent(p);
  return detail::in_lp(detail::expand(a), p);
}

BoundedValue lp_norm(const SeqRep& a, double p, double tol, const SeriesOptions& options) {
  conjugate_exponent(p);
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidInput, "tolerance must be positive");
  const auto e = detail::expand(a);
  if (!detail::in_lp(e, p)) {
    throw Error(ErrorKind::NotInSpace, "sequence is not certifiably in l^" + std::to_string(p));
  }
  return detail::norm(e, p, tol, options);
}

double tail_norm_bound(const SeqRep& a, double p, std::size_t n) {
  conjugate_exponent(p);
  const auto e = detail::expand(a);
  if (!detail::in_lp(e, p)) {
    throw Error(ErrorKind::NotInSpace, "sequence is not certifiably in l^" + std::to_string(p));
  }
  return detail::tail_bound(e, p, n);
}

namespace {

std::pair<detail::Expansion, detail::Expansion> expand_pairing_inputs(const SeqRep& a,
                                                                      const SeqRep& x,
                                                                      ConjugatePair pair,
                                                                      double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidInput, "tolerance must be positive");
  auto ea = detail::expand(a);
  auto ex = detail::expand(x);
  if (!detail::in_lp(ea, pair.p())) {
    throw Error(ErrorKind::NotInSpace,
                "left operand is not certifiably in l^" + std::to_string(pair.p()));
  }
  if (!detail::in_lp(ex, pair.q())) {
    throw Error(ErrorKind::NotInSpace,
                "right operand is not certifiably in l^" + std::to_string(pair.q()));
  }
  return {std::move(ea), std::move(ex)};
}

}  // namespace

BoundedValue holder_pairing(const SeqRep& a, const SeqRep& x, ConjugatePair pair, double tol,
                            const SeriesOptions& options) {
  auto [ea, ex] = expand_pairing_inputs(a, x, pair, tol);
  return detail::pair(ea, ex, join(a.field(), x.field()), tol, options);
}

BoundedValue truncated_pairing(const SeqRep& a, const SeqRep& x, ConjugatePair pair, double tol,
                               const SeriesOptions& options) {
  auto [ea, ex] = expand_pairing_inputs(a, x, pair, tol);
  const Field field = join(a.field(), x.field());
  Complex partial{0.0, 0.0};
  std::size_t done = 0;
  for (std::size_t n = 64; n <= options.max_terms; n *= 2) {
    for (std::size_t j = done + 1; j <= n; ++j) partial += ea.at(j) * ex.at(j);
    done = n;
    const double err = detail::tail_bound(ea, pair.p(), n) * detail::tail_bound(ex, pair.q(), n);
    if (err <= tol) return {Scalar(partial, field), err};
  }
  throw Error(ErrorKind::ToleranceNotMet, "truncated pairing did not reach tolerance");
}

SeqRep power_coordinates(const SeqRep& x, unsigned d) {
  if (x.kind() != SeqRep::Kind::Sparse) {
    throw Error(ErrorKind::UnsupportedRepresentation,
                "coordinate powers are only available for finitely supported sequences");
  }
  if (d == 0) throw Error(ErrorKind::InvalidInput, "power must be positive");
  std::vector<SeqRep::Entry> out;
  out.reserve(x.entries().size());
  for (const auto& e : x.entries()) {
    Scalar v = e.value;
    for (unsigned k = 1; k < d; ++k) v = v * e.value;
    out.push_back({e.index, v});
  }
  return SeqRep::sparse(std::move(out));
}

SeqRep conjugate(const SeqRep& a) {
  switch (a.kind()) {
    case SeqRep::Kind::Sparse: {
      std::vector<SeqRep::Entry> out;
      for (const auto& e : a.entries()) out.push_back({e.index, e.value.conj()});
      return SeqRep::sparse(std::move(out));
    }
    case SeqRep::Kind::PowerLaw:
      return SeqRep::power_law(std::conj(a.exponent()));
    case SeqRep::Kind::Tail:
      return SeqRep::tail(conjugate(a.base()), a.start());
    case SeqRep::Kind::Combination: {
      std::vector<SeqTerm> out;
      for (const auto& t : a.terms()) out.push_back({t.coefficient.conj(), conjugate(t.sequence)});
      return SeqRep::combination(std::move(out));
    }
  }
  return a;
}

SeqRep linear_combination(std::span<const Scalar> coefficients, std::span<const SeqRep> sequences) {
  if (coefficients.size() != sequences.size()) {
    throw Error(ErrorKind::InvalidInput, "coefficient and sequence counts differ");
  }
  std::vector<SeqTerm> terms;
  terms.reserve(sequences.size());
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    terms.push_back({coefficients[i], sequences[i]});
  }
  return SeqRep::combination(std::move(terms));
}

}  // namespace infeq
