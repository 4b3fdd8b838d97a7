#include "xmodkit/cli.hpp"

#include <cstdlib>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "xmodkit/io.hpp"
#include "xmodkit/oracle.hpp"

namespace xmodkit::cli {

namespace {

int error_exit_code(const xmod_error& e) {
  if (e.code() == "BudgetExceeded") return 3;
  if (e.code() == "ParseError") return 2;
  return 1;
}

void print_error(std::ostream& err, const xmod_error& e) {
  err << e.what();
  if (!e.witness().empty()) {
    err << "; witness:";
    for (const auto& w : e.witness()) err << " " << w;
  }
  err << "\n";
}

void print_report(std::ostream& out, const std::string& format,
                  const std::string& label, const OracleReport& rep) {
  if (format == "json") {
    nlohmann::ordered_json j;
    j["check"] = label;
    j["ok"] = rep.ok;
    j["checked"] = rep.checked;
    j["note"] = rep.note;
    if (rep.witness) j["witness"] = *rep.witness;
    out << j.dump() << "\n";
    return;
  }
  out << (rep.ok ? "PASS " : "FAIL ") << label << ": " << rep.note
      << " (checked " << rep.checked << ")\n";
}

std::size_t budget_from_env() {
  if (const char* env = std::getenv("XMODKIT_BUDGET")) {
    return static_cast<std::size_t>(std::strtoull(env, nullptr, 10));
  }
  return oracle::kDefaultBudget;
}

Document load_validated(const std::string& path) {
  return validate_document(parse_document(read_file(path)));
}

// The conversion hops: the three layer equivalences, the forgetful moves
// down, and the Peiffer upgrade.
Document apply_hop(const Document& doc, const std::string& to) {
  const std::string& from = doc.kind;
  if (from == "splitepi" && to == "action") {
    validate_splitepi(std::get<SplitEpiPair>(doc.body));
    return make_document("action",
                         splitepi_to_distlaw(std::get<SplitEpiPair>(doc.body)));
  }
  if (from == "action" && to == "splitepi") {
    return make_document(
        "splitepi", semidirect_product(std::get<ActionSystem>(doc.body)).pair);
  }
  if (from == "reflgraph" && to == "prexmod") {
    return make_document("prexmod",
                         reflgraph_to_prex(std::get<ReflexiveGraph>(doc.body)));
  }
  if (from == "prexmod" && to == "reflgraph") {
    return make_document(
        "reflgraph", prex_to_reflgraph(std::get<PreCrossedModule>(doc.body)));
  }
  if (from == "relcat" && to == "xmod") {
    return make_document("xmod", relcat_to_xmod(std::get<InternalCat>(doc.body)));
  }
  if (from == "xmod" && to == "relcat") {
    return make_document("relcat",
                         xmod_to_relcat(std::get<CrossedModule>(doc.body)));
  }
  if (from == "prexmod" && to == "xmod") {
    return make_document("xmod",
                         validate_xmod(std::get<PreCrossedModule>(doc.body)));
  }
  if (from == "xmod" && to == "prexmod") {
    return make_document("prexmod", std::get<CrossedModule>(doc.body).pre);
  }
  if (from == "relcat" && to == "reflgraph") {
    return make_document("reflgraph", std::get<InternalCat>(doc.body).rg);
  }
  if (from == "reflgraph" && to == "splitepi") {
    return make_document("splitepi", std::get<ReflexiveGraph>(doc.body).se);
  }
  if (from == "prexmod" && to == "action") {
    return make_document("action",
                         std::get<PreCrossedModule>(doc.body).action);
  }
  throw xmod_error("ParseError",
                   "no direct conversion from " + from + " to " + to +
                       "; use --via");
}

int cmd_validate(const std::string& file, const std::string& format,
                 std::ostream& out, std::ostream& err) {
  RawDocument raw;
  try {
    raw = parse_document(read_file(file));
  } catch (const xmod_error& e) {
    print_error(err, e);
    return 2;
  }
  try {
    validate_document(raw);
  } catch (const xmod_error& e) {
    print_error(err, e);
    return error_exit_code(e) == 2 ? 2 : 1;
  }
  if (format == "json") {
    out << R"({"ok":true,"kind":")" << raw.kind << "\"}\n";
  } else {
    out << "VALID " << raw.kind
        << (raw.meta_name ? " " + *raw.meta_name : "") << "\n";
  }
  return 0;
}

int cmd_convert(const std::string& file, const std::string& to,
                const std::string& via, const std::string& out_path,
                std::ostream& out, std::ostream& err) {
  RawDocument raw;
  try {
    raw = parse_document(read_file(file));
  } catch (const xmod_error& e) {
    print_error(err, e);
    return 2;
  }
  try {
    Document doc = validate_document(raw);
    std::vector<std::string> chain;
    if (!via.empty()) {
      std::stringstream ss(via);
      std::string part;
      while (std::getline(ss, part, ',')) chain.push_back(part);
      chain.push_back(to);
    } else if (doc.kind == "prexmod" && to == "relcat") {
      chain = {"xmod", "relcat"};  // the Peiffer upgrade is implied
    } else if (doc.kind != to) {
      chain = {to};
    }
    for (const std::string& hop : chain) doc = apply_hop(doc, hop);
    doc.meta_name = raw.meta_name;
    doc.meta_comments = raw.meta_comments;
    const std::string text = serialize_document(doc);
    if (out_path.empty()) {
      out << text;
    } else {
      write_file(out_path, text);
    }
    return 0;
  } catch (const xmod_error& e) {
    print_error(err, e);
    return error_exit_code(e);
  }
}

int cmd_roundtrip(const std::string& file, const std::string& format,
                  std::ostream& out, std::ostream& err) {
  try {
    Document doc = load_validated(file);
    OracleReport rep;
    if (auto* se = std::get_if<SplitEpiPair>(&doc.body)) {
      rep = natural_iso_check(*se);
    } else if (auto* act = std::get_if<ActionSystem>(&doc.body)) {
      rep = natural_iso_check(*act);
    } else if (auto* rg = std::get_if<ReflexiveGraph>(&doc.body)) {
      rep = natural_iso_check(*rg);
    } else if (auto* pxm = std::get_if<PreCrossedModule>(&doc.body)) {
      rep = natural_iso_check(*pxm);
    } else if (auto* xm = std::get_if<CrossedModule>(&doc.body)) {
      rep = natural_iso_check(*xm);
    } else if (auto* ic = std::get_if<InternalCat>(&doc.body)) {
      rep = natural_iso_check(*ic);
    } else {
      err << "roundtrip is not defined for kind " << doc.kind << "\n";
      return 2;
    }
    print_report(out, format, "roundtrip " + doc.kind, rep);
    return rep.ok ? 0 : 1;
  } catch (const xmod_error& e) {
    print_error(err, e);
    return error_exit_code(e);
  }
}

int cmd_enumerate(const std::string& kind, const std::string& base_file,
                  const std::string& fiber_file, std::size_t budget,
                  const std::string& format, std::ostream& out,
                  std::ostream& err) {
  try {
    Document base_doc = load_validated(base_file);
    Document fiber_doc = load_validated(fiber_file);
    const auto* base = std::get_if<FinCatX>(&base_doc.body);
    const auto* fiber = std::get_if<FinCatX>(&fiber_doc.body);
    if (!base || !fiber) {
      err << "enumerate expects category documents for --base and --fiber\n";
      return 2;
    }
    std::vector<Document> docs;
    if (kind == "action") {
      for (auto& act : oracle::enumerate_actions(*base, *fiber, budget)) {
        docs.push_back(make_document("action", std::move(act)));
      }
    } else if (kind == "xmod") {
      for (auto& xm : oracle::enumerate_xmods(*base, *fiber, budget)) {
        docs.push_back(make_document("xmod", std::move(xm)));
      }
    } else {
      err << "enumerate supports --kind action or xmod\n";
      return 2;
    }
    for (const Document& doc : docs) {
      if (format == "json") {
        out << nlohmann::ordered_json::parse(serialize_document(doc)).dump()
            << "\n";
      } else {
        out << serialize_document(doc);
      }
    }
    err << "enumerated " << docs.size() << " " << kind << " instance(s)\n";
    return 0;
  } catch (const xmod_error& e) {
    print_error(err, e);
    return error_exit_code(e);
  }
}

int cmd_check(const std::string& property, const std::string& file,
              std::size_t budget, const std::string& format, std::ostream& out,
              std::ostream& err) {
  RawDocument raw;
  try {
    raw = parse_document(read_file(file));
  } catch (const xmod_error& e) {
    print_error(err, e);
    return 2;
  }
  try {
    Document doc = structural_document(raw);

    const PreCrossedModule* pxm = nullptr;
    if (auto* p = std::get_if<PreCrossedModule>(&doc.body)) pxm = p;
    if (auto* x = std::get_if<CrossedModule>(&doc.body)) pxm = &x->pre;
    const SplitEpiPair* se = nullptr;
    const ReflexiveGraph* rg = nullptr;
    const InternalCat* ic = std::get_if<InternalCat>(&doc.body);
    if (auto* g = std::get_if<ReflexiveGraph>(&doc.body)) rg = g;
    if (ic) rg = &ic->rg;
    if (auto* s = std::get_if<SplitEpiPair>(&doc.body)) se = s;
    if (rg) se = &rg->se;

    auto inapplicable = [&]() {
      err << "property " << property << " is not defined for kind "
          << doc.kind << "\n";
      return 2;
    };

    if (property == "peiffer") {
      if (!pxm) return inapplicable();
      OracleReport rep = check_peiffer(*pxm);
      print_report(out, format, "peiffer", rep);
      return rep.ok ? 0 : 1;
    }
    if (property == "precrossed") {
      if (!pxm) return inapplicable();
      OracleReport rep = OracleReport::pass(0, "pre-crossed law holds");
      try {
        validate_precrossed(pxm->action, pxm->kappa);
      } catch (const xmod_error& e) {
        rep = OracleReport::fail(0, {}, e.what());
      }
      print_report(out, format, "precrossed", rep);
      return rep.ok ? 0 : 1;
    }
    if (property == "q-invertible") {
      if (!se) return inapplicable();
      MorphismMap q = build_q(*se);
      OracleReport rep = decide_bijective(q);
      print_report(out, format, "q-invertible", rep);
      return rep.ok ? 0 : 1;
    }
    if (property == "qn" || property == "hn" || property == "bn") {
      bool all_ok = true;
      for (int n = 1; n <= 3; ++n) {
        MorphismMap m;
        if (property == "bn") {
          if (!pxm) return inapplicable();
          m = build_iterated(IteratedKind::bn, *pxm, n);
        } else if (!rg) {
          return inapplicable();
        } else {
          m = build_iterated(property == "qn" ? IteratedKind::qn
                                              : IteratedKind::hn,
                             *rg, n);
        }
        OracleReport rep = decide_bijective(m);
        print_report(out, format, property + " n=" + std::to_string(n), rep);
        all_ok = all_ok && rep.ok;
      }
      return all_ok ? 0 : 1;
    }
    if (property == "interchange") {
      if (!ic) return inapplicable();
      OracleReport rep = check_internal_cat_laws(*ic);
      print_report(out, format, "interchange", rep);
      return rep.ok ? 0 : 1;
    }
    if (property == "d-unique") {
      if (!rg) return inapplicable();
      oracle::DSearchResult res = oracle::solve_d_by_search(*rg, budget);
      bool built_ok = true;
      std::vector<int> built;
      try {
        built = build_composition_d(*rg).d;
      } catch (const xmod_error& e) {
        if (e.code() == "BudgetExceeded") throw;
        built_ok = false;
      }
      OracleReport rep;
      if (built_ok && res.solutions == 1 && *res.d == built) {
        rep = OracleReport::pass(res.steps,
                                 "exactly one d; search agrees with the "
                                 "closed construction");
      } else if (!built_ok && res.solutions == 0) {
        rep = OracleReport::pass(res.steps,
                                 "no composition exists; search agrees");
      } else {
        rep = OracleReport::fail(res.steps, {},
                                 "search found " +
                                     std::to_string(res.solutions) +
                                     " solution(s), construction " +
                                     (built_ok ? "succeeded" : "failed"));
      }
      print_report(out, format, "d-unique", rep);
      return rep.ok ? 0 : 1;
    }
    err << "unknown property " << property << "\n";
    return 2;
  } catch (const xmod_error& e) {
    print_error(err, e);
    return error_exit_code(e);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"xmodkit: crossed modules, internal categories and "
               "distributive laws over a finite object set"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"text", "json"}));

  auto* validate = app.add_subcommand("validate", "validate a document");
  std::string v_file;
  validate->add_option("file", v_file)->required();

  auto* convert = app.add_subcommand("convert", "convert along an equivalence");
  std::string c_file, c_to, c_via, c_out;
  convert->add_option("file", c_file)->required();
  convert->add_option("--to", c_to, "target kind")->required();
  convert->add_option("--via", c_via, "comma-separated intermediate kinds");
  convert->add_option("-o,--output", c_out, "output file (stdout if absent)");

  auto* roundtrip =
      app.add_subcommand("roundtrip", "check the natural isomorphism");
  std::string r_file;
  roundtrip->add_option("file", r_file)->required();

  auto* enumerate = app.add_subcommand("enumerate", "enumerate instances");
  std::string e_kind, e_base, e_fiber;
  std::size_t e_budget = budget_from_env();
  enumerate->add_option("--kind", e_kind)->required();
  enumerate->add_option("--base", e_base)->required();
  enumerate->add_option("--fiber", e_fiber)->required();
  enumerate->add_option("--budget", e_budget);

  auto* check = app.add_subcommand("check", "run a named verifier");
  std::string k_property, k_file;
  std::size_t k_budget = budget_from_env();
  check->add_option("--property", k_property)->required();
  check->add_option("file", k_file)->required();
  check->add_option("--budget", k_budget);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  if (validate->parsed()) return cmd_validate(v_file, format, out, err);
  if (convert->parsed()) return cmd_convert(c_file, c_to, c_via, c_out, out, err);
  if (roundtrip->parsed()) return cmd_roundtrip(r_file, format, out, err);
  if (enumerate->parsed()) {
    return cmd_enumerate(e_kind, e_base, e_fiber, e_budget, format, out, err);
  }
  if (check->parsed()) {
    return cmd_check(k_property, k_file, k_budget, format, out, err);
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace xmodkit::cli
