#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>
#include "k3lat/catalog.hpp"
#include "k3lat/discriminant.hpp"
#include "k3lat/elliptic.hpp"
#include "k3lat/embedding.hpp"
#include "k3lat/integer.hpp"
#include "k3lat/k3.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/qform/certificate.hpp"
#include "k3lat/qform/forms.hpp"

namespace k3lat::io {

using Json = nlohmann::ordered_json;

// Integers that fit in 64 bits are JSON numbers, larger ones decimal strings.
inline Json to_json(Int const& x) {
  if (fits_int64(x)) return to_int64(x);
  return x.str();
}

inline Json to_json(IntVector const& v) {
  Json out = Json::array();
  for (auto const& x : v) out.push_back(to_json(x));
  return out;
}

inline Json to_json(IntMatrix const& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

inline Int int_from_json(Json const& j, std::string const& what) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  if (j.is_string()) {
    auto const& s = j.get_ref<std::string const&>();
    std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    bool ok = s.size() > start;
    for (std::size_t i = start; i < s.size(); ++i)
      ok = ok && s[i] >= '0' && s[i] <= '9';
    if (ok) return Int(s);
  }
  throw Error(what + ": expected an integer");
}

inline IntVector vector_from_json(Json const& j, std::string const& what) {
  if (!j.is_array()) throw Error(what + ": expected an array of integers");
  IntVector v;
  for (auto const& x : j) v.push_back(int_from_json(x, what));
  return v;
}

inline IntMatrix matrix_from_json(Json const& j, std::string const& what) {
  if (!j.is_array()) throw Error(what + ": expected an array of rows");
  std::vector<IntVector> rows;
  for (auto const& r : j) rows.push_back(vector_from_json(r, what));
  for (auto const& r : rows)
    if (r.size() != rows.front().size()) throw Error(what + ": ragged rows");
  if (rows.empty()) return IntMatrix(0, 0);
  return IntMatrix::from_rows(rows);
}

inline Json parse(std::string const& text) {
  try {
    return Json::parse(text);
  } catch (nlohmann::json::parse_error const& e) {
    throw Error("malformed JSON at byte " + std::to_string(e.byte) + ": " +
                e.what());
  }
}

// ------------------------------------------------------------------ lattices

/// {"rank": r, "gram": [...]}, {"name": "U" | "A1(-1)" | "E8(-1)" | "K3"}
/// or {"sum": [<lattice>, ...]}.
inline GramLattice lattice_from_json(Json const& j) {
  if (!j.is_object()) throw Error("lattice: expected a JSON object");
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw Error("lattice: name must be a string");
    return standard_lattice(j["name"].get<std::string>());
  }
  if (j.contains("sum")) {
    if (!j["sum"].is_array()) throw Error("lattice: sum must be an array");
    std::vector<GramLattice> parts;
    for (auto const& p : j["sum"]) parts.push_back(lattice_from_json(p));
    return direct_sum(parts);
  }
  if (j.contains("gram")) {
    IntMatrix g = matrix_from_json(j["gram"], "lattice gram");
    if (g.rows() != g.cols()) throw Error("lattice: Gram matrix is not square");
    if (j.contains("rank") &&
        int_from_json(j["rank"], "lattice rank") != Int(g.rows()))
      throw Error("lattice: rank does not match Gram size");
    return GramLattice(std::move(g));
  }
  throw Error("lattice: expected one of \"gram\", \"name\", \"sum\"");
}

inline Json to_json(GramLattice const& l) {
  return Json{{"rank", l.rank()}, {"gram", to_json(l.gram())}};
}

inline Json to_json(Signature const& s) {
  return Json{{"positive", s.positive}, {"negative", s.negative},
              {"zero", s.zero}};
}

/// {"ambient": <lattice>, "basis": [[col], ...]}.
inline EmbeddedSublattice sublattice_from_json(Json const& j) {
  if (!j.is_object() || !j.contains("ambient") || !j.contains("basis"))
    throw Error("sublattice: expected {\"ambient\", \"basis\"}");
  GramLattice ambient = lattice_from_json(j["ambient"]);
  std::vector<IntVector> cols;
  for (auto const& c : j["basis"]) cols.push_back(vector_from_json(c, "basis"));
  return EmbeddedSublattice::from_vectors(std::move(ambient), cols);
}

inline Json to_json(EmbeddedSublattice const& s) {
  Json basis = Json::array();
  for (std::size_t j = 0; j < s.rank(); ++j) basis.push_back(to_json(s.vector(j)));
  return Json{{"ambient", to_json(s.ambient())}, {"basis", basis}};
}

inline Json to_json(DiscriminantGroup const& g) {
  Json lifts = Json::array();
  for (auto const& lift : g.generator_lifts) {
    Json v = Json::array();
    for (auto const& x : lift) v.push_back(to_string(x));
    lifts.push_back(std::move(v));
  }
  return Json{{"invariant_factors", to_json(g.invariant_factors)},
              {"order", to_json(g.order())},
              {"generator_lifts", lifts}};
}

// --------------------------------------------------------------------- forms

/// {"binary": [a, b, c]}, {"diag": [d1, d2, d3]} or any lattice object.
inline qform::QuadraticForm form_from_json(Json const& j) {
  if (j.is_object() && j.contains("binary")) {
    auto const v = vector_from_json(j["binary"], "binary form");
    if (v.size() != 3) throw Error("binary form needs [a, b, c]");
    return qform::QuadraticForm::from(qform::BinaryForm{v[0], v[1], v[2]});
  }
  if (j.is_object() && j.contains("diag")) {
    auto const v = vector_from_json(j["diag"], "diagonal form");
    if (v.size() != 3) throw Error("diagonal ternary form needs [d1, d2, d3]");
    return qform::QuadraticForm::from(qform::DiagonalTernaryForm{v[0], v[1], v[2]});
  }
  return qform::QuadraticForm::from_lattice(lattice_from_json(j));
}

inline Json to_json(qform::QuadraticForm const& q) {
  if (auto b = q.as_binary()) return Json{{"binary", to_json(IntVector{b->a, b->b, b->c})}};
  if (auto d = q.as_diagonal_ternary())
    return Json{{"diag", to_json(d->coefficients())}};
  return Json{{"coefficients", to_json(q.coefficients())}};
}

inline Json to_json(qform::BinaryForm const& f) {
  return to_json(IntVector{f.a, f.b, f.c});
}

inline qform::BinaryForm binary_from_json(Json const& j) {
  auto const v = vector_from_json(j, "binary form");
  if (v.size() != 3) throw Error("binary form needs [a, b, c]");
  return {v[0], v[1], v[2]};
}

// -------------------------------------------------------------- certificates

inline std::string to_string(qform::LegendreStep::Kind k) {
  switch (k) {
    case qform::LegendreStep::Kind::Content:
      return "content";
    case qform::LegendreStep::Kind::SquareFactor:
      return "square_factor";
    case qform::LegendreStep::Kind::PairGcd:
      return "pair_gcd";
  }
  return "?";
}

namespace detail {

struct CertificateWriter {
  Json operator()(qform::SieveCertificate const& c) const {
    return {{"modulus", to_json(c.modulus)}};
  }
  Json operator()(qform::DivisibilityCertificate const& c) const {
    return {{"divisor", to_json(c.divisor)}};
  }
  Json operator()(qform::LegendreCertificate const& c) const {
    Json steps = Json::array();
    for (auto const& s : c.steps)
      steps.push_back({{"kind", to_string(s.kind)},
                       {"factor", to_json(s.factor)},
                       {"index", s.index},
                       {"other", s.other}});
    return {{"steps", steps},
            {"reduced", to_json(c.reduced)},
            {"failed_index", c.failed_index},
            {"prime", to_json(c.prime)}};
  }
  Json operator()(qform::SquareDiscCertificate const& c) const {
    Json pairs = Json::array();
    for (auto const& [u, v] : c.factor_pairs)
      pairs.push_back(Json::array({to_json(u), to_json(v)}));
    return {{"root", to_json(c.root)},
            {"product", to_json(c.product)},
            {"factor_pairs", pairs}};
  }
  Json operator()(qform::NonsquareDiscCertificate const& c) const {
    return {{"discriminant", to_json(c.discriminant)}};
  }
  Json operator()(qform::DefiniteCertificate const& c) const {
    return {{"sign", c.sign}};
  }
  Json operator()(qform::DefiniteBoxCertificate const& c) const {
    return {{"bounds", to_json(c.bounds)}};
  }
  Json operator()(qform::ReducedCycleCertificate const& c) const {
    Json cycle = Json::array();
    for (auto const& f : c.cycle) cycle.push_back(to_json(f));
    Json entries = Json::array();
    for (auto const& e : c.entries) {
      Json cands = Json::array();
      for (auto const& [beta, red] : e.candidates)
        cands.push_back({{"beta", to_json(beta)}, {"reduced", to_json(red)}});
      entries.push_back({{"scale", to_json(e.scale)},
                         {"target", to_json(e.target)},
                         {"candidates", cands}});
    }
    return {{"cycle", cycle}, {"entries", entries}};
  }
};

inline std::size_t index_from_json(Json const& j, std::string const& what) {
  Int const v = int_from_json(j, what);
  if (v < 0 || v > 2) throw Error(what + ": index out of range");
  return static_cast<std::size_t>(to_int64(v));
}

inline Json const& field(Json const& j, char const* key) {
  if (!j.contains(key))
    throw Error(std::string("certificate: missing field \"") + key + "\"");
  return j[key];
}

}  // namespace detail

inline Json to_json(qform::Certificate const& c) {
  Json body = std::visit(detail::CertificateWriter{}, c);
  Json out{{"type", qform::certificate_name(c)}};
  for (auto& [k, v] : body.items()) out[k] = v;
  return out;
}

inline qform::Certificate certificate_from_json(Json const& j) {
  using detail::field;
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw Error("certificate: expected an object with a \"type\"");
  std::string const type = j["type"].get<std::string>();
  if (type == "SIEVE")
    return qform::SieveCertificate{int_from_json(field(j, "modulus"), "modulus")};
  if (type == "DIVISIBILITY")
    return qform::DivisibilityCertificate{
        int_from_json(field(j, "divisor"), "divisor")};
  if (type == "LEGENDRE") {
    qform::LegendreCertificate c;
    for (auto const& s : field(j, "steps")) {
      qform::LegendreStep step;
      std::string const kind = detail::field(s, "kind").get<std::string>();
      if (kind == "content")
        step.kind = qform::LegendreStep::Kind::Content;
      else if (kind == "square_factor")
        step.kind = qform::LegendreStep::Kind::SquareFactor;
      else if (kind == "pair_gcd")
        step.kind = qform::LegendreStep::Kind::PairGcd;
      else
        throw Error("certificate: unknown Legendre step " + kind);
      step.factor = int_from_json(field(s, "factor"), "factor");
      step.index = detail::index_from_json(field(s, "index"), "index");
      step.other = detail::index_from_json(field(s, "other"), "other");
      c.steps.push_back(std::move(step));
    }
    c.reduced = vector_from_json(field(j, "reduced"), "reduced");
    c.failed_index = detail::index_from_json(field(j, "failed_index"), "failed_index");
    c.prime = int_from_json(field(j, "prime"), "prime");
    return c;
  }
  if (type == "SQUARE_DISC_EXHAUST") {
    qform::SquareDiscCertificate c;
    c.root = int_from_json(field(j, "root"), "root");
    c.product = int_from_json(field(j, "product"), "product");
    for (auto const& p : field(j, "factor_pairs")) {
      auto const uv = vector_from_json(p, "factor pair");
      if (uv.size() != 2) throw Error("certificate: factor pair needs [u, v]");
      c.factor_pairs.emplace_back(uv[0], uv[1]);
    }
    return c;
  }
  if (type == "NONSQUARE_DISC")
    return qform::NonsquareDiscCertificate{
        int_from_json(field(j, "discriminant"), "discriminant")};
  if (type == "DEFINITE") {
    Int const s = int_from_json(field(j, "sign"), "sign");
    if (s != 1 && s != -1) throw Error("certificate: sign must be +-1");
    return qform::DefiniteCertificate{s > 0 ? 1 : -1};
  }
  if (type == "DEFINITE_BOX")
    return qform::DefiniteBoxCertificate{vector_from_json(field(j, "bounds"), "bounds")};
  if (type == "REDUCED_CYCLE") {
    qform::ReducedCycleCertificate c;
    for (auto const& f : field(j, "cycle")) c.cycle.push_back(binary_from_json(f));
    for (auto const& e : field(j, "entries")) {
      qform::ReducedCycleEntry entry;
      entry.scale = int_from_json(field(e, "scale"), "scale");
      entry.target = int_from_json(field(e, "target"), "target");
      for (auto const& cand : field(e, "candidates"))
        entry.candidates.emplace_back(int_from_json(field(cand, "beta"), "beta"),
                                      binary_from_json(field(cand, "reduced")));
      c.entries.push_back(std::move(entry));
    }
    return c;
  }
  throw Error("certificate: unknown type " + type);
}

inline Json to_json(qform::RepresentationVerdict const& v) {
  Json out{{"target", to_json(v.target)}, {"kind", qform::to_string(v.kind)}};
  if (v.is_yes()) out["witness"] = to_json(v.witness);
  if (v.certificate) out["certificate"] = to_json(*v.certificate);
  if (v.bounds)
    out["bounds"] = {{"sieve_max", to_json(v.bounds->sieve_max)},
                     {"search_bound", to_json(v.bounds->search_bound)},
                     {"reason", v.bounds->reason}};
  return out;
}

// ------------------------------------------------------------------ reports

inline Json to_json(AutVerdict const& a) {
  Json out{{"value", to_string(a.value)},
           {"tier", to_string(a.tier)},
           {"reason", a.reason}};
  if (a.citation) out["citation"] = *a.citation;
  return out;
}

inline Json to_json(K3Report const& r) {
  return Json{{"rank", r.rank},
              {"signature", to_json(r.signature)},
              {"determinant", to_json(r.determinant)},
              {"discriminant_group", to_json(r.discriminant_factors)},
              {"minus2", to_json(r.minus2)},
              {"isotropic", to_json(r.isotropic)},
              {"aut", to_json(r.aut)}};
}

inline FibrationData fibration_from_json(Json const& j) {
  if (!j.is_object() || !j.contains("rho"))
    throw Error("fibration: expected {\"rho\", \"reducible_fibers\"}");
  FibrationData f;
  f.rho = to_int64(int_from_json(j["rho"], "rho"));
  if (j.contains("reducible_fibers"))
    for (auto const& m : vector_from_json(j["reducible_fibers"], "reducible_fibers"))
      f.reducible_fiber_component_counts.push_back(to_int64(m));
  if (j.contains("has_section")) f.has_section = j["has_section"].get<bool>();
  return f;
}

inline Json to_json(Claim3Result const& r) {
  Json out{{"input", {{"A", to_json(r.input.A)},
                      {"B", to_json(r.input.B)},
                      {"C", to_json(r.input.C)}}},
           {"bound", to_json(r.bound)},
           {"status", r.found ? "FOUND" : "NOT_FOUND"},
           {"candidates_tried", r.candidates_tried}};
  if (!r.found) return out;
  out["chosen"] = {{"N", to_json(r.chosen.N)},
                   {"M", to_json(r.chosen.M)},
                   {"n", to_json(r.chosen.n)},
                   {"m", to_json(r.chosen.m)}};
  out["vectors"] = {{"l", to_json(r.vectors[0])}, {"na+h", to_json(r.vectors[1])}};
  out["gram"] = to_json(r.gram);
  out["primitive"] = true;
  out["basis_invariant_factors"] = to_json(r.basis_invariant_factors);
  out["zero"] = to_json(r.zero);
  out["minus2"] = to_json(r.minus2);
  return out;
}

inline Json to_json(Theorem3Example const& t) {
  Json out{{"height_bound", to_json(t.height_bound)},
           {"status", t.found ? "FOUND" : "NOT_FOUND"},
           {"candidates_tried", t.candidates_tried}};
  if (!t.found) return out;
  Json basis = Json::array();
  for (auto const& b : t.basis) basis.push_back(to_json(b));
  out["ambient"] = to_json(t.ambient);
  out["height"] = to_json(t.height);
  out["basis"] = basis;
  out["gram"] = to_json(t.gram);
  out["zero"] = to_json(t.zero);
  out["minus2"] = to_json(t.minus2);
  return out;
}

inline Json to_json(FamilyCertification const& c) {
  Json out{{"family", c.spec.id}};
  if (c.spec.n) out["n"] = to_json(*c.spec.n);
  out["description"] = c.spec.description;
  Json gens = Json::array();
  for (auto const& g : c.spec.generators) gens.push_back(to_json(g));
  out["generators"] = gens;
  out["gram"] = to_json(c.gram.gram());
  out["basis_invariant_factors"] = to_json(c.basis_invariant_factors);
  out["discriminant_order"] = to_json(c.discriminant_order);
  out["report"] = to_json(c.report);
  if (c.primitive_zero_count)
    out["primitive_zero_count"] = {{"height", kZeroCountHeight},
                                   {"count", *c.primitive_zero_count}};
  if (c.sections)
    out["mordell_weil"] = {
        {"rank", c.sections->mordell_weil_rank},
        {"section_dot_zero_from_height", to_json(c.sections->section_dot_zero)},
        {"section_dot_zero_in_lattice", to_json(c.sections->lattice_section_dot_zero)},
        {"pencil_class_square", to_json(c.sections->pencil_square)},
        {"pencil_class", c.sections->is_pencil}};
  Json facts = Json::array();
  for (auto const& f : c.spec.facts)
    facts.push_back({{"statement", f.statement},
                     {"tier", "PAPER_ASSERTED"},
                     {"citation", f.citation}});
  out["cited_facts"] = facts;
  Json checks = Json::array();
  for (auto const& r : c.checks)
    checks.push_back({{"check", r.name},
                      {"expected", r.expected},
                      {"actual", r.actual},
                      {"pass", r.pass}});
  out["checks"] = checks;
  return out;
}

}  // namespace k3lat::io
