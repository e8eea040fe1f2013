#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "k3lat/k3lat.hpp"

namespace k3lat::cli {

using io::Json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUndecided = 2;

/// Bounds and output format shared by every subcommand.
struct RunConfig {
  qform::SearchOptions search;
  Int claim3_bound = 50;
  std::string format = "json";

  void validate() const {
    if (search.search_bound < 1) throw Error("--search-bound must be >= 1");
    if (claim3_bound < 1) throw Error("--claim3-bound must be >= 1");
    if (format != "json" && format != "table")
      throw Error("--format must be json or table");
  }
};

inline std::string read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string read_input(std::string const& path, std::istream& stdin_) {
  if (path.empty() || path == "-") return read_all(stdin_);
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  return read_all(f);
}

/// Loads {"sieve_max", "sieve_moduli", "search_bound", "claim3_bound",
/// "format"} into `config`.
inline void apply_config_file(std::string const& path, RunConfig& config) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open config " + path);
  Json const j = io::parse(read_all(f));
  if (!j.is_object()) throw Error("config: expected a JSON object");
  if (j.contains("sieve_moduli"))
    config.search.sieve_moduli = io::vector_from_json(j["sieve_moduli"], "sieve_moduli");
  if (j.contains("sieve_max"))
    config.search.limit_sieve(io::int_from_json(j["sieve_max"], "sieve_max"));
  if (j.contains("search_bound"))
    config.search.search_bound = io::int_from_json(j["search_bound"], "search_bound");
  if (j.contains("claim3_bound"))
    config.claim3_bound = io::int_from_json(j["claim3_bound"], "claim3_bound");
  if (j.contains("format")) config.format = j["format"].get<std::string>();
}

// ------------------------------------------------------------------ tables

class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::vector<std::size_t> width;
    for (auto const& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], r[i].size());
      }
    std::ostringstream out;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      for (std::size_t i = 0; i < rows_[k].size(); ++i) {
        out << rows_[k][i];
        if (i + 1 < rows_[k].size())
          out << std::string(width[i] - rows_[k][i].size() + 2, ' ');
      }
      out << '\n';
      if (k == 0) {
        std::size_t total = 0;
        for (auto w : width) total += w + 2;
        out << std::string(total - 2, '-') << '\n';
      }
    }
    return out.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

inline std::string vec_str(IntVector const& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s + ")";
}

inline std::string verdict_str(qform::RepresentationVerdict const& v) {
  std::string s = qform::to_string(v.kind);
  if (v.is_yes()) s += " " + vec_str(v.witness);
  if (v.certificate) s += " " + qform::certificate_name(*v.certificate);
  if (v.bounds) s += " (" + v.bounds->reason + ")";
  return s;
}

// ---------------------------------------------------------------- commands

struct Output {
  Json json;
  std::string table;
  int code = kExitOk;
};

inline Output cmd_lattice_info(GramLattice const& l) {
  auto const sig = signature(l);
  Output o;
  o.json = Json{{"rank", l.rank()},
                {"signature", io::to_json(sig)},
                {"determinant", io::to_json(determinant(l))}};
  Table t({"field", "value"});
  t.add({"rank", std::to_string(l.rank())});
  t.add({"signature", "(" + std::to_string(sig.positive) + "," +
                          std::to_string(sig.negative) + "," +
                          std::to_string(sig.zero) + ")"});
  t.add({"determinant", determinant(l).str()});
  if (is_nondegenerate(l)) {
    auto const factors = discriminant_group(l).invariant_factors;
    o.json["discriminant_group"] = io::to_json(factors);
    t.add({"discriminant group", factors.empty() ? "trivial" : vec_str(factors)});
  } else {
    o.json["discriminant_group"] = nullptr;
    t.add({"discriminant group", "degenerate lattice"});
  }
  o.table = t.str();
  return o;
}

inline Output cmd_lattice_disc_group(GramLattice const& l) {
  auto const g = discriminant_group(l);
  Output o;
  o.json = io::to_json(g);
  Int const aut = aut_order_finite_abelian(g.invariant_factors);
  o.json["aut_order"] = io::to_json(aut);
  o.json["index_bound"] = io::to_json(automorphism_index_bound(g.invariant_factors));
  Table t({"field", "value"});
  t.add({"invariant factors", g.is_trivial() ? "trivial" : vec_str(g.invariant_factors)});
  t.add({"order", g.order().str()});
  t.add({"|Aut|", aut.str()});
  t.add({"66 x |Aut|", automorphism_index_bound(g.invariant_factors).str()});
  o.table = t.str();
  return o;
}

inline Output cmd_qform_represents(qform::QuadraticForm const& q, Int const& t,
                                   RunConfig const& config) {
  auto const v = qform::represents(q, t, config.search);
  Output o;
  o.json = Json{{"form", io::to_json(q)}, {"verdict", io::to_json(v)}};
  Table tab({"form", "t", "verdict"});
  tab.add({io::to_json(q).dump(), t.str(), verdict_str(v)});
  o.table = tab.str();
  o.code = v.is_undecided() ? kExitUndecided : kExitOk;
  return o;
}

/// Input {"form": <form>, "t": t, "certificate": <certificate>}.
inline Output cmd_qform_verify(Json const& j) {
  if (!j.is_object() || !j.contains("form") || !j.contains("t") ||
      !j.contains("certificate"))
    throw Error("expected {\"form\", \"t\", \"certificate\"}");
  auto const q = io::form_from_json(j["form"]);
  Int const t = io::int_from_json(j["t"], "t");
  bool valid = false;
  try {
    valid = qform::verify_certificate(q, t, io::certificate_from_json(j["certificate"]));
  } catch (Error const&) {
    valid = false;
  }
  Output o;
  o.json = Json{{"valid", valid}};
  o.table = std::string("certificate ") + (valid ? "valid" : "INVALID") + "\n";
  o.code = valid ? kExitOk : kExitError;
  return o;
}

inline Output cmd_k3_classify(GramLattice const& l, RunConfig const& config) {
  PicardData const p(l);
  auto const r = classify(p, config.search);
  Output o;
  o.json = io::to_json(r);
  Table t({"rank", "(-2)-class", "isotropic", "aut", "tier"});
  t.add({std::to_string(r.rank), verdict_str(r.minus2), verdict_str(r.isotropic),
         to_string(r.aut.value), to_string(r.aut.tier)});
  o.table = t.str();
  o.code = (r.minus2.is_undecided() || r.isotropic.is_undecided())
               ? kExitUndecided
               : kExitOk;
  return o;
}

inline Output cmd_claim3(Claim3Input const& in, RunConfig const& config) {
  auto const r = claim3_search(in, config.claim3_bound, config.search);
  Output o;
  o.json = io::to_json(r);
  Table t({"A", "B", "C", "status", "(N,M)", "(n,m)", "Gram", "0", "-2"});
  if (r.found)
    t.add({in.A.str(), in.B.str(), in.C.str(), "FOUND",
           "(" + r.chosen.N.str() + "," + r.chosen.M.str() + ")",
           "(" + r.chosen.n.str() + "," + r.chosen.m.str() + ")", to_string(r.gram),
           verdict_str(r.zero), verdict_str(r.minus2)});
  else
    t.add({in.A.str(), in.B.str(), in.C.str(), "NOT_FOUND", "-", "-", "-", "-", "-"});
  o.table = t.str();
  o.code = r.found ? kExitOk : kExitUndecided;
  return o;
}

/// Input {"rho": r, "reducible_fibers": [m_v...]}, optionally "height"
/// and "correction" for the section-height inversion.
inline Output cmd_mw_rank(Json const& j) {
  auto const f = io::fibration_from_json(j);
  Output o;
  long const rank = mordell_weil_rank(f);
  o.json = Json{{"rho", f.rho},
                {"reducible_fibers", f.reducible_fiber_component_counts},
                {"mordell_weil_rank", rank}};
  Table t({"field", "value"});
  t.add({"Mordell-Weil rank", std::to_string(rank)});
  if (j.contains("height")) {
    Rational correction = 0;
    if (j.contains("correction"))
      correction = Rational(j["correction"].get<std::string>());
    Int const h = io::int_from_json(j["height"], "height");
    Int const d = section_intersection_from_height(Rational(h), correction);
    o.json["section_dot_zero"] = io::to_json(d);
    t.add({"(P.O)", d.str()});
  }
  o.table = t.str();
  return o;
}

/// Replaces generators or target Grams of catalog families:
/// {"families": [{"id": 2, "gram": [[...]], "generators": [[...]]}]}.
inline void apply_catalog_override(Json const& j, std::vector<FamilySpec>& specs) {
  if (!j.is_object() || !j.contains("families") || !j["families"].is_array())
    throw Error("catalog override: expected {\"families\": [...]}");
  for (auto const& e : j["families"]) {
    Int const id = io::int_from_json(e.at("id"), "family id");
    bool matched = false;
    for (auto& s : specs) {
      if (Int(s.id) != id) continue;
      matched = true;
      if (e.contains("gram")) s.target_gram = io::matrix_from_json(e["gram"], "gram");
      if (e.contains("generators")) {
        s.generators.clear();
        for (auto const& g : e["generators"])
          s.generators.push_back(io::vector_from_json(g, "generator"));
      }
    }
    if (!matched) throw Error("catalog override: unknown family " + id.str());
  }
}

inline std::vector<FamilySpec> paper_families() {
  return {family(1, Int(5)), family(2), family(3), family(4), family(5)};
}

inline std::vector<Claim3Input> claim3_smoke_inputs() {
  return {{1, 0, 0}, {2, 0, 0}, {2, 1, 0}, {1, 0, 1}};
}

inline Output cmd_paper_verify(RunConfig const& config,
                               std::optional<Json> const& override_json) {
  auto specs = paper_families();
  if (override_json) apply_catalog_override(*override_json, specs);
  Output o;
  Json families = Json::array();
  Table t({"family", "rho", "(-2)-curves", "elliptic pencils", "Aut", "tier", "check"});
  for (auto const& spec : specs) {
    auto const c = certify_family(spec, config.search);
    families.push_back(io::to_json(c));
    t.add({std::to_string(spec.id) + (spec.n ? " (n=" + spec.n->str() + ")" : ""),
           std::to_string(c.report.rank), verdict_str(c.report.minus2),
           verdict_str(c.report.isotropic), to_string(c.report.aut.value),
           to_string(c.report.aut.tier), "PASS"});
  }
  Json claim3 = Json::array();
  Table t3({"A", "B", "C", "(N,M)", "Gram", "0", "-2"});
  bool all_found = true;
  for (auto const& in : claim3_smoke_inputs()) {
    auto const r = claim3_search(in, config.claim3_bound, config.search);
    if (r.found && !revalidate(r))
      throw CertificationError("claim 3 result does not revalidate");
    all_found = all_found && r.found;
    claim3.push_back(io::to_json(r));
    t3.add({in.A.str(), in.B.str(), in.C.str(),
            r.found ? "(" + r.chosen.N.str() + "," + r.chosen.M.str() + ")" : "NOT_FOUND",
            r.found ? to_string(r.gram) : "-", r.found ? verdict_str(r.zero) : "-",
            r.found ? verdict_str(r.minus2) : "-"});
  }
  auto const th = theorem3_example(10, config.search);
  o.json = Json{{"families", families},
                {"claim3", claim3},
                {"theorem3_example", io::to_json(th)},
                {"status", all_found && th.found ? "PASS" : "INCOMPLETE"}};
  std::string table = t.str() + "\n" + t3.str() + "\n";
  table += th.found ? "rank-2 sublattice of U + A1(-1) with neither 0 nor -2: Gram " +
                          to_string(th.gram) + "\n"
                    : "rank-2 sublattice example: NOT_FOUND\n";
  o.table = table;
  o.code = all_found && th.found ? kExitOk : kExitUndecided;
  return o;
}

// -------------------------------------------------------------------- main

/// Runs the command line; returns the process exit code.
inline int run(std::vector<std::string> const& args, std::istream& in,
               std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact integral-lattice toolkit for K3 Picard lattices", "k3lat"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<long long> sieve_max, search_bound, claim3_bound;
  std::optional<std::string> format;
  app.add_option("--config", config_path,
                 "JSON config file (default: $K3LAT_CONFIG)");
  app.add_option("--sieve-max", sieve_max, "largest sieve modulus used");
  app.add_option("--search-bound", search_bound, "witness search bound");
  app.add_option("--claim3-bound", claim3_bound, "(N, M) bound for claim3");
  app.add_option("--format", format, "json or table");

  std::string input_path;
  std::string target;
  std::string override_path;
  std::string a_str, b_str, c_str;

  auto* lattice = app.add_subcommand("lattice", "lattice invariants");
  lattice->require_subcommand(1);
  auto* info = lattice->add_subcommand("info", "rank, signature, det, disc group");
  info->add_option("file", input_path, "lattice JSON (default stdin)");
  auto* disc = lattice->add_subcommand("disc-group", "discriminant group");
  disc->add_option("file", input_path, "lattice JSON (default stdin)");

  auto* qf = app.add_subcommand("qform", "representation questions");
  qf->require_subcommand(1);
  auto* rep = qf->add_subcommand("represents", "does the form represent t");
  rep->add_option("--t", target, "target value")->required();
  rep->add_option("file", input_path, "form JSON (default stdin)");
  auto* ver = qf->add_subcommand("verify", "replay a certificate");
  ver->add_option("file", input_path, "{form, t, certificate} JSON");

  auto* k3 = app.add_subcommand("k3", "K3 Picard lattice predicates");
  k3->require_subcommand(1);
  auto* cls = k3->add_subcommand("classify", "(-2)-classes, pencils, Aut");
  cls->add_option("file", input_path, "lattice JSON (default stdin)");

  auto* c3 = app.add_subcommand("claim3", "search L_{m,n} for (A, B, C)");
  c3->add_option("--A", a_str, "(l,l)/2")->required();
  c3->add_option("--B", b_str, "(l,a)")->required();
  c3->add_option("--C", c_str, "(a,a)/2")->required();

  auto* mw = app.add_subcommand("mw", "Mordell-Weil data");
  mw->require_subcommand(1);
  auto* mwr = mw->add_subcommand("rank", "Shioda's rank formula");
  mwr->add_option("file", input_path, "fibration JSON (default stdin)");

  auto* pv = app.add_subcommand("paper-verify", "certify the catalog");
  pv->add_option("--catalog-override", override_path,
                 "JSON replacing catalog entries (test fixture)");

  std::vector<std::string> argv_store{"k3lat"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (CLI::ParseError const& e) {
    return app.exit(e, out, err);
  }

  try {
    RunConfig config;
    if (config_path.empty())
      if (char const* env = std::getenv("K3LAT_CONFIG")) config_path = env;
    if (!config_path.empty()) apply_config_file(config_path, config);
    if (sieve_max) config.search.limit_sieve(*sieve_max);
    if (search_bound) config.search.search_bound = *search_bound;
    if (claim3_bound) config.claim3_bound = *claim3_bound;
    if (format) config.format = *format;
    config.validate();

    auto parse_int = [](std::string const& s, std::string const& what) {
      return io::int_from_json(Json(s), what);
    };
    auto input_json = [&] { return io::parse(read_input(input_path, in)); };

    Output o;
    if (*info)
      o = cmd_lattice_info(io::lattice_from_json(input_json()));
    else if (*disc)
      o = cmd_lattice_disc_group(io::lattice_from_json(input_json()));
    else if (*rep)
      o = cmd_qform_represents(io::form_from_json(input_json()),
                               parse_int(target, "--t"), config);
    else if (*ver)
      o = cmd_qform_verify(input_json());
    else if (*cls)
      o = cmd_k3_classify(io::lattice_from_json(input_json()), config);
    else if (*c3)
      o = cmd_claim3({parse_int(a_str, "--A"), parse_int(b_str, "--B"),
                      parse_int(c_str, "--C")},
                     config);
    else if (*mwr)
      o = cmd_mw_rank(input_json());
    else if (*pv) {
      std::optional<Json> override_json;
      if (!override_path.empty())
        override_json = io::parse(read_input(override_path, in));
      o = cmd_paper_verify(config, override_json);
    }
    if (config.format == "table")
      out << o.table;
    else
      out << o.json.dump(2) << '\n';
    return o.code;
  } catch (CertificationError const& e) {
    err << "k3lat: FAIL " << e.what() << '\n';
    return kExitError;
  } catch (std::exception const& e) {
    err << "k3lat: error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace k3lat::cli
