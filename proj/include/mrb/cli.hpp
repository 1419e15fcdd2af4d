#ifndef MRB_CLI_HPP
#define MRB_CLI_HPP

// Command-line surface. run() is the whole program minus process plumbing so
// it can be driven in-process.

#include <mrb/document.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace mrb::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

/// Errors that describe the input rather than a checked property.
inline bool is_input_error(Errc e) {
  switch (e) {
    case Errc::ParseError:
    case Errc::IndexOutOfRange:
    case Errc::DuplicateKey:
    case Errc::DimensionMismatch:
    case Errc::UnknownCommand:
    case Errc::BudgetExceeded:
    case Errc::OrderMismatch:
    case Errc::DigestMismatch:
      return true;
    default:
      return false;
  }
}

inline Json residuals_json(const DefectReport& r) {
  Json out = Json::array();
  for (const auto& e : r.entries()) {
    Json item;
    item["identity"] = e.section;
    item["args"] = e.args;
    item["residual"] = e.residual.cols() == 1 ? doc::vector(e.residual.column(0)) : doc::matrix(e.residual);
    out.push_back(std::move(item));
  }
  return out;
}

/// Report under construction: command echo, input digest, named sections, and
/// command-specific payload keys in insertion order.
class Report {
 public:
  Report(Json command, const AlgebraDocument& input) {
    body_["command"] = std::move(command);
    body_["input_digest"] = document_digest(input);
    body_["sections"] = Json::array();
  }

  void section(const std::string& name, const DefectReport& r) {
    Json s;
    s["name"] = name;
    s["status"] = r.empty() ? "pass" : "fail";
    s["residuals"] = residuals_json(r);
    failed_ = failed_ || !r.empty();
    body_["sections"].push_back(std::move(s));
  }

  void error_section(const Error& e) {
    Json s;
    s["name"] = "error";
    s["status"] = "fail";
    s["code"] = errc_name(e.code());
    s["message"] = e.what();
    s["residuals"] = residuals_json(e.report());
    failed_ = true;
    body_["sections"].push_back(std::move(s));
  }

  void status(const std::string& name, bool pass) {
    Json s;
    s["name"] = name;
    s["status"] = pass ? "pass" : "fail";
    s["residuals"] = Json::array();
    failed_ = failed_ || !pass;
    body_["sections"].push_back(std::move(s));
  }

  Json& operator[](const char* key) { return body_[key]; }

  int finish(std::ostream& out) {
    body_["status"] = failed_ ? "fail" : "pass";
    out << doc::dump(body_);
    return failed_ ? kFail : kPass;
  }

 private:
  Json body_;
  bool failed_ = false;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline std::vector<Rational> parse_grid(const std::string& text) {
  std::vector<Rational> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto r = parse_rational(item);
    if (!r) throw Error(Errc::ParseError, "--grid: malformed value \"" + item + "\"");
    grid.push_back(*r);
  }
  if (grid.empty()) throw Error(Errc::ParseError, "--grid: empty");
  return grid;
}

inline Json cohomology_json(const CohomologyReport& rep, bool with_operator) {
  Json out;
  out["max_degree"] = rep.max_degree;
  for (auto k : {ComplexKind::Leibniz, ComplexKind::Operator, ComplexKind::Cone}) {
    if (!with_operator && k != ComplexKind::Leibniz) continue;
    Json rows = Json::array();
    for (const auto& row : rep.table(k)) {
      Json r;
      r["degree"] = row.degree;
      r["cochain_dim"] = row.cochain_dim;
      r["cohomology_dim"] = row.cohomology_dim;
      rows.push_back(std::move(r));
    }
    out[complex_name(k)] = std::move(rows);
  }
  return out;
}

inline Json cone_json(const ConeCochain& c) {
  Json out;
  out["leibniz"] = doc::matrix(c.leib.values());
  if (c.op) out["operator"] = doc::matrix(c.op->values());
  return out;
}

struct Options {
  std::string input;
  std::size_t max_degree = 3;
  std::size_t budget = CohomologyOptions{}.budget;
  std::string weight;
  std::string grid;
  std::string mask;
  std::string kind = "mrb";
  std::size_t search_budget = kDefaultSearchBudget;
  std::string deformation;
  std::string cocycle;
  std::vector<std::string> extensions;
};

namespace commands {

inline void check(Report& rep, const AlgebraDocument& d) {
  rep.section("leibniz", leibniz_defect(d.algebra));
  if (d.op) rep.section("modified-rota-baxter", mrb_defect(d.algebra, *d.op));
  if (d.rep || d.op) {
    Representation r = d.representation();
    rep.section("representation", rep_defect(d.algebra, r));
    if (d.op) rep.section("modified-rota-baxter-representation", mrb_rep_defect(d.algebra, *d.op, r));
  }
}

inline void cohomology(Report& rep, const AlgebraDocument& d, const Options& o) {
  CohomologyOptions opt;
  opt.max_degree = o.max_degree;
  opt.degree_bound = std::max(opt.degree_bound, o.max_degree);
  opt.budget = o.budget;
  Representation r = d.representation();
  require_leibniz(d.algebra);
  require_rep(d.algebra, r);
  if (!d.op) {
    rep["cohomology"] = cohomology_json(leibniz_cohomology(d.algebra, r, opt), false);
    return;
  }
  CohomologyReport c = cohomology_dimensions(d.algebra, *d.op, r, opt);
  // dim H^n_cone <= dim H^n_Leib + dim H^{n-1}_op, from the long exact sequence.
  DefectReport bound;
  for (std::size_t n = 0; n <= opt.max_degree; ++n) {
    std::size_t cap = c.h(ComplexKind::Leibniz, n) + (n > 0 ? c.h(ComplexKind::Operator, n - 1) : 0);
    if (c.h(ComplexKind::Cone, n) > cap) bound.add("excess", {n}, Vector{Rational(c.h(ComplexKind::Cone, n) - cap)});
  }
  rep.section("cone-bound", bound);
  rep["cohomology"] = cohomology_json(c, true);
}

inline void derived(Report& rep, const AlgebraDocument& d) {
  if (!d.op) throw Error(Errc::DimensionMismatch, "derived needs an operator");
  Representation r = d.representation();
  LeibnizAlgebra g = derived_algebra(d.algebra, *d.op);
  Representation rk = induced_rep(d.algebra, *d.op, r);
  rep.section("derived-leibniz", leibniz_defect(g));
  rep.section("derived-modified-rota-baxter", mrb_defect(g, *d.op));
  rep.section("induced-representation", rep_defect(g, rk));
  rep.section("induced-modified-rota-baxter-representation", mrb_rep_defect(g, *d.op, rk));
  rep["derived"] = doc::write_document(AlgebraDocument{g, *d.op, rk});
}

inline void search(Report& rep, const AlgebraDocument& d, const Options& o) {
  auto w = parse_rational(o.weight);
  if (!w) throw Error(Errc::ParseError, "--weight: malformed rational \"" + o.weight + "\"");
  auto grid = parse_grid(o.grid);
  OperatorMask mask = o.mask.empty() ? OperatorMask::all_free(d.algebra.dim()) : parse_mask(read_file(o.mask), d.algebra.dim());
  std::vector<Matrix> found = o.kind == "rb" ? grid_search_rb_operators(d.algebra, *w, grid, mask, o.search_budget)
                                             : grid_search_operators(d.algebra, *w, grid, mask, o.search_budget);
  Json list = Json::array();
  for (const auto& m : found) list.push_back(doc::matrix(m));
  Json out;
  out["count"] = found.size();
  out["matrices"] = std::move(list);
  rep["solutions"] = std::move(out);
}

inline void deform(Report& rep, const AlgebraDocument& d, const std::string& action, const Options& o) {
  DeformationDocument dd = parse_deformation(read_file(o.deformation), d);
  const TruncatedDeformation& def = dd.deformation;
  if (action == "verify") {
    auto res = deformation_residuals(def);
    for (std::size_t n = 0; n < res.size(); ++n) {
      DefectReport r = res[n].leibniz;
      r.append(res[n].op);
      rep.section("order-" + std::to_string(n), r);
    }
  } else if (action == "infinitesimal") {
    ConeCochain c = infinitesimal(def);
    auto cls = classify_cochain(regular_complex(def), c);
    rep.status("cocycle", cls.cocycle);
    Json out = cone_json(c);
    out["coboundary"] = cls.coboundary;
    if (cls.witness) out["witness"] = cone_json(*cls.witness);
    rep["infinitesimal"] = std::move(out);
  } else {
    auto triv = dd.trivializer ? dd.trivializer : find_trivializer(def);
    if (!triv) throw Error(Errc::NotACoboundaryWitness, "the infinitesimal is not a coboundary");
    TruncatedDeformation out = gauge_step(def, *triv);
    auto res = deformation_residuals(out);
    DefectReport r;
    for (std::size_t n = 0; n <= 1; ++n) {
      r.append(res[n].leibniz);
      r.append(res[n].op);
    }
    rep.section("residual-free-through-order-1", r);
    Json t;
    t["psi1"] = doc::matrix(triv->psi1);
    t["x"] = doc::vector(triv->x);
    rep["trivializer"] = std::move(t);
    rep["deformation"] = deformation_json(out, d);
  }
}

inline void extend(Report& rep, const AlgebraDocument& d, const std::string& action, const Options& o) {
  if (!d.op) throw Error(Errc::DimensionMismatch, "extend needs an operator in the base document");
  if (action == "build") {
    CocyclePair c = parse_cocycle(read_file(o.cocycle), d);
    ExtensionData e = extension_from_cocycle(d.algebra, *d.op, d.representation(), c);
    rep.section("extension", validate_extension(e));
    rep["extension"] = extension_json(e, d);
    return;
  }
  std::size_t want = action == "extract" ? 1 : 2;
  if (o.extensions.size() != want)
    throw Error(Errc::UnknownCommand, "extend " + action + " takes " + std::to_string(want) + " --extension file(s)");
  std::vector<ExtensionData> exts;
  for (std::size_t i = 0; i < want; ++i) {
    exts.push_back(parse_extension(read_file(o.extensions[i]), d));
    DefectReport v = validate_extension(exts.back());
    rep.section(want == 1 ? "extension" : "extension-" + std::to_string(i + 1), v);
    if (!v.empty()) return;
  }
  std::vector<std::pair<Representation, CocyclePair>> extracted;
  for (const auto& e : exts) extracted.push_back(extract_cocycle(e, section_from_proj(e)));
  if (action == "extract") {
    rep["section"] = doc::matrix(section_from_proj(exts[0]));
    rep["representation"] = doc::write_representation(extracted[0].first);
    Json c;
    c["psi"] = doc::matrix(extracted[0].second.psi.values());
    c["chi"] = doc::matrix(extracted[0].second.chi.values());
    rep["cocycle"] = std::move(c);
    return;
  }
  bool same_rep = extracted[0].first == extracted[1].first;
  rep.status("same-representation", same_rep);
  if (!same_rep) return;
  MrbComplex cx(d.algebra, *d.op, extracted[0].first);
  auto gamma = cohomologous_gamma(cx, extracted[0].second, extracted[1].second);
  rep.status("cohomologous", gamma.has_value());
  if (!gamma) return;
  rep["gamma"] = doc::matrix(gamma->values());
  if (detail::is_direct_sum_model(exts[0]) && detail::is_direct_sum_model(exts[1]))
    rep["isomorphism"] = doc::matrix(iso_from_gamma(exts[0], exts[1], *gamma));
}

}  // namespace commands

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`; the return value is the exit code.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Modified Rota-Baxter Leibniz algebra toolkit", "mrb"};
  app.require_subcommand(1);
  Options o;
  auto input = [&](CLI::App* sub) { sub->add_option("input", o.input, "algebra document (default: stdin)"); };

  auto* check = app.add_subcommand("check", "verify the axioms of the document");
  input(check);
  auto* cohom = app.add_subcommand("cohomology", "cohomology dimensions of the three complexes");
  input(cohom);
  cohom->add_option("--max-degree", o.max_degree, "highest degree")->capture_default_str();
  cohom->add_option("--budget", o.budget, "largest admissible cochain-space dimension")->capture_default_str();
  auto* derived = app.add_subcommand("derived", "derived algebra and induced representation");
  input(derived);
  auto* search = app.add_subcommand("search", "grid search for operators");
  input(search);
  search->add_option("--weight", o.weight, "operator weight")->required();
  search->add_option("--grid", o.grid, "comma-separated candidate entries")->required();
  search->add_option("--mask", o.mask, "file fixing some matrix entries");
  search->add_option("--kind", o.kind, "mrb or rb")->check(CLI::IsMember({"mrb", "rb"}))->capture_default_str();
  search->add_option("--budget", o.search_budget, "largest number of candidates")->capture_default_str();

  auto* deform = app.add_subcommand("deform", "truncated formal deformations");
  deform->require_subcommand(1);
  std::vector<CLI::App*> deform_actions;
  for (const char* a : {"verify", "infinitesimal", "gauge"}) {
    auto* sub = deform->add_subcommand(a);
    input(sub);
    sub->add_option("--deformation", o.deformation, "deformation block file")->required();
    deform_actions.push_back(sub);
  }
  auto* extend = app.add_subcommand("extend", "abelian extensions");
  extend->require_subcommand(1);
  auto* build = extend->add_subcommand("build", "extension from a 2-cocycle");
  input(build);
  build->add_option("--cocycle", o.cocycle, "cocycle block file")->required();
  std::vector<CLI::App*> extend_actions{build};
  for (const char* a : {"extract", "compare"}) {
    auto* sub = extend->add_subcommand(a);
    input(sub);
    sub->add_option("--extension", o.extensions, "extension block file (repeat for compare)")
        ->required()
        ->allow_extra_args(false);
    extend_actions.push_back(sub);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "UnknownCommand: " << e.what() << "\n";
    return kUsage;
  }

  Json command;
  AlgebraDocument d;
  try {
    d = parse_document(o.input.empty() ? std::string(std::istreambuf_iterator<char>(in), {}) : read_file(o.input));
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  auto leaf = [](const std::vector<CLI::App*>& subs) {
    for (auto* s : subs)
      if (s->parsed()) return s->get_name();
    return std::string();
  };
  std::string name = app.get_subcommands().front()->get_name();
  std::string action;
  command["name"] = name;
  if (name == "cohomology") {
    command["max_degree"] = o.max_degree;
    command["budget"] = o.budget;
  } else if (name == "search") {
    command["weight"] = o.weight;
    command["grid"] = o.grid;
    command["kind"] = o.kind;
    command["masked"] = !o.mask.empty();
  } else if (name == "deform") {
    action = leaf(deform_actions);
    command["action"] = action;
  } else if (name == "extend") {
    action = leaf(extend_actions);
    command["action"] = action;
  }

  Report rep(command, d);
  try {
    if (name == "check") commands::check(rep, d);
    else if (name == "cohomology") commands::cohomology(rep, d, o);
    else if (name == "derived") commands::derived(rep, d);
    else if (name == "search") commands::search(rep, d, o);
    else if (name == "deform") commands::deform(rep, d, action, o);
    else commands::extend(rep, d, action, o);
  } catch (const Error& e) {
    if (is_input_error(e.code())) {
      err << e.what() << "\n";
      return kUsage;
    }
    rep.error_section(e);
  }
  return rep.finish(out);
}

}  // namespace mrb::cli

#endif  // MRB_CLI_HPP
