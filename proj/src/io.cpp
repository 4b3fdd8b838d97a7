#include "xmodkit/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace xmodkit {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& what) {
  throw xmod_error("ParseError", what);
}

const ordered_json& need(const ordered_json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) parse_fail(std::string("missing key '") + key + "'");
  return *it;
}

RawCategoryData parse_category_body(const ordered_json& j) {
  if (!j.is_object()) parse_fail("category body must be an object");
  if (need(j, "kind").get<std::string>() != "category") {
    parse_fail("nested structure must have kind 'category'");
  }
  RawCategoryData raw;
  for (const auto& label : need(j, "objects")) {
    raw.objects.labels.push_back(label.get<std::string>());
  }
  std::map<std::string, int> mor_ids;
  for (const auto& m : need(j, "morphisms")) {
    const std::string name = need(m, "name").get<std::string>();
    const int src = raw.objects.index_of(need(m, "src").get<std::string>());
    const int tgt = raw.objects.index_of(need(m, "tgt").get<std::string>());
    if (src == -1 || tgt == -1) {
      parse_fail("morphism '" + name + "' references an unknown object");
    }
    if (!mor_ids.emplace(name, static_cast<int>(raw.mor_names.size())).second) {
      parse_fail("duplicate morphism name '" + name + "'");
    }
    raw.mor_names.push_back(name);
    raw.src.push_back(src);
    raw.tgt.push_back(tgt);
  }
  auto mor = [&](const ordered_json& v) {
    const std::string name = v.get<std::string>();
    auto it = mor_ids.find(name);
    if (it == mor_ids.end()) parse_fail("unknown morphism '" + name + "'");
    return it->second;
  };
  for (const auto& e : need(j, "identities")) raw.id_of.push_back(mor(e));
  for (const auto& triple : need(j, "compose")) {
    if (!triple.is_array() || triple.size() != 3) {
      parse_fail("compose entries must be [g, f, gf] triples");
    }
    raw.compose.push_back({mor(triple[0]), mor(triple[1]), mor(triple[2])});
  }
  return raw;
}

int mor_id(const RawCategoryData& c, const std::string& name) {
  auto it = std::find(c.mor_names.begin(), c.mor_names.end(), name);
  if (it == c.mor_names.end()) {
    parse_fail("unknown morphism '" + name + "'");
  }
  return static_cast<int>(it - c.mor_names.begin());
}

// {"dom-mor": "cod-mor", ...} resolved against the two categories.
MorIndexMap parse_map(const ordered_json& j, const RawCategoryData& dom,
                      const RawCategoryData& cod) {
  if (!j.is_object()) parse_fail("morphism map must be an object");
  MorIndexMap map(dom.mor_names.size(), -1);
  for (const auto& [key, value] : j.items()) {
    map[static_cast<std::size_t>(mor_id(dom, key))] =
        mor_id(cod, value.get<std::string>());
  }
  for (std::size_t m = 0; m < map.size(); ++m) {
    if (map[m] == -1) {
      parse_fail("map is missing an entry for '" + dom.mor_names[m] + "'");
    }
  }
  return map;
}

std::vector<int> parse_action_table(const ordered_json& j,
                                    const RawCategoryData& base,
                                    const RawCategoryData& fiber) {
  std::vector<int> table(base.mor_names.size() * fiber.mor_names.size(), -1);
  for (const auto& triple : j) {
    if (!triple.is_array() || triple.size() != 3) {
      parse_fail("action entries must be [b, y, result] triples");
    }
    const int b = mor_id(base, triple[0].get<std::string>());
    const int y = mor_id(fiber, triple[1].get<std::string>());
    table[static_cast<std::size_t>(b) * fiber.mor_names.size() + y] =
        mor_id(fiber, triple[2].get<std::string>());
  }
  return table;
}

}  // namespace

RawDocument parse_document(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(e.what());
  }
  if (!j.is_object()) parse_fail("document must be a JSON object");
  RawDocument raw;
  raw.kind = need(j, "kind").get<std::string>();
  if (auto it = j.find("meta"); it != j.end()) {
    if (auto n = it->find("name"); n != it->end()) {
      raw.meta_name = n->get<std::string>();
    }
    if (auto c = it->find("comments"); c != it->end()) {
      raw.meta_comments = c->get<std::string>();
    }
  }
  if (raw.kind == "category") {
    raw.cats.emplace("category", parse_category_body(j));
    return raw;
  }
  if (raw.kind == "splitepi" || raw.kind == "reflgraph" ||
      raw.kind == "relcat") {
    const RawCategoryData base = parse_category_body(need(j, "base"));
    const RawCategoryData total = parse_category_body(need(j, "total"));
    raw.maps.emplace("i", parse_map(need(j, "i"), base, total));
    raw.maps.emplace("s", parse_map(need(j, "s"), total, base));
    if (raw.kind != "splitepi") {
      raw.maps.emplace("t", parse_map(need(j, "t"), total, base));
    }
    if (raw.kind == "relcat") {
      for (const auto& triple : need(j, "d")) {
        if (!triple.is_array() || triple.size() != 3) {
          parse_fail("d entries must be [a1, a2, result] triples");
        }
        raw.d_triples.push_back({mor_id(total, triple[0].get<std::string>()),
                                 mor_id(total, triple[1].get<std::string>()),
                                 mor_id(total, triple[2].get<std::string>())});
      }
    }
    raw.cats.emplace("base", base);
    raw.cats.emplace("total", total);
    return raw;
  }
  if (raw.kind == "action" || raw.kind == "prexmod" || raw.kind == "xmod") {
    const RawCategoryData base = parse_category_body(need(j, "base"));
    const RawCategoryData fiber = parse_category_body(need(j, "fiber"));
    if (raw.kind != "action") {
      raw.maps.emplace("kappa", parse_map(need(j, "kappa"), fiber, base));
    }
    raw.action_table = parse_action_table(need(j, "action"), base, fiber);
    raw.cats.emplace("base", base);
    raw.cats.emplace("fiber", fiber);
    return raw;
  }
  parse_fail("unknown kind '" + raw.kind + "'");
}

namespace {

Document build_document(const RawDocument& raw, bool validated) {
  Document doc;
  doc.kind = raw.kind;
  doc.meta_name = raw.meta_name;
  doc.meta_comments = raw.meta_comments;

  if (raw.kind == "category") {
    doc.body = validate_category(raw.cats.at("category"));
    return doc;
  }
  if (raw.kind == "splitepi" || raw.kind == "reflgraph" ||
      raw.kind == "relcat") {
    SplitEpiPair se;
    se.base = validate_category(raw.cats.at("base"));
    se.total = validate_category(raw.cats.at("total"));
    se.i = raw.maps.at("i");
    se.s = raw.maps.at("s");
    splitepi_basic_checks(se);
    if (raw.kind == "splitepi") {
      if (validated) validate_splitepi(se);
      doc.body = std::move(se);
      return doc;
    }
    ReflexiveGraph rg;
    rg.se = std::move(se);
    rg.t = raw.maps.at("t");
    if (rg.t.size() != rg.se.total.mor_count()) {
      throw xmod_error("BadStructureMap", "t must be total");
    }
    if (raw.kind == "reflgraph") {
      if (validated) validate_reflgraph(rg);
      doc.body = std::move(rg);
      return doc;
    }
    InternalCat ic;
    ic.comp_pairs = build_iterated(IteratedKind::qn, rg, 2).cod;
    ic.rg = std::move(rg);
    ic.d.assign(ic.comp_pairs.size(), -1);
    for (const auto& [a1, a2, r] : raw.d_triples) {
      const int p = ic.comp_pairs.find({a1, a2});
      if (p == -1) {
        throw xmod_error("BadStructureMap",
                         "d entry on a pair outside A[x]A",
                         {ic.rg.se.total.name(a1), ic.rg.se.total.name(a2)});
      }
      ic.d[p] = r;
    }
    for (std::size_t p = 0; p < ic.d.size(); ++p) {
      if (ic.d[p] == -1) {
        const auto& e = ic.comp_pairs.elems[p];
        throw xmod_error("BadStructureMap", "d is missing an entry",
                         {ic.rg.se.total.name(e[0]),
                          ic.rg.se.total.name(e[1])});
      }
    }
    if (validated) validate_internal_cat(ic);
    doc.body = std::move(ic);
    return doc;
  }

  FinCatX base = validate_category(raw.cats.at("base"));
  FinCatX fiber = validate_category(raw.cats.at("fiber"));
  ActionSystem act;
  if (validated) {
    act = validate_action(base, fiber, raw.action_table);
  } else {
    act.base = std::move(base);
    act.fiber = std::move(fiber);
    act.act = raw.action_table;
  }
  if (raw.kind == "action") {
    doc.body = std::move(act);
    return doc;
  }
  PreCrossedModule pxm;
  if (validated) {
    pxm = validate_precrossed(act, raw.maps.at("kappa"));
  } else {
    pxm.action = std::move(act);
    pxm.kappa = raw.maps.at("kappa");
  }
  if (raw.kind == "prexmod") {
    doc.body = std::move(pxm);
    return doc;
  }
  if (validated) {
    doc.body = validate_xmod(pxm);
  } else {
    doc.body = CrossedModule{std::move(pxm)};
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Serialization

ordered_json category_json(const FinCatX& c) {
  std::vector<std::string> objects = c.objects().labels;
  std::sort(objects.begin(), objects.end());

  std::vector<int> order(c.mor_count());
  for (std::size_t m = 0; m < order.size(); ++m) order[m] = static_cast<int>(m);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return c.name(a) < c.name(b); });

  ordered_json j;
  j["kind"] = "category";
  j["objects"] = objects;
  ordered_json mors = ordered_json::array();
  for (int m : order) {
    ordered_json e;
    e["name"] = c.name(m);
    e["src"] = c.objects().labels[static_cast<std::size_t>(c.src(m))];
    e["tgt"] = c.objects().labels[static_cast<std::size_t>(c.tgt(m))];
    mors.push_back(std::move(e));
  }
  j["morphisms"] = std::move(mors);
  ordered_json ids = ordered_json::array();
  for (const std::string& label : objects) {
    ids.push_back(c.name(c.id_of(c.objects().index_of(label))));
  }
  j["identities"] = std::move(ids);
  std::vector<std::array<std::string, 3>> triples;
  for (int g = 0; g < static_cast<int>(c.mor_count()); ++g) {
    for (int f = 0; f < static_cast<int>(c.mor_count()); ++f) {
      const int gf = c.compose(g, f);
      if (gf != -1) triples.push_back({c.name(g), c.name(f), c.name(gf)});
    }
  }
  std::sort(triples.begin(), triples.end());
  ordered_json comp = ordered_json::array();
  for (const auto& t : triples) comp.push_back({t[0], t[1], t[2]});
  j["compose"] = std::move(comp);
  return j;
}

ordered_json map_json(const MorIndexMap& map, const FinCatX& dom,
                      const FinCatX& cod) {
  std::vector<std::pair<std::string, std::string>> entries;
  for (std::size_t m = 0; m < map.size(); ++m) {
    entries.emplace_back(dom.name(static_cast<int>(m)), cod.name(map[m]));
  }
  std::sort(entries.begin(), entries.end());
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : entries) j[k] = v;
  return j;
}

ordered_json action_json(const ActionSystem& act) {
  std::vector<std::array<std::string, 3>> triples;
  for (int b = 0; b < static_cast<int>(act.base.mor_count()); ++b) {
    for (int y = 0; y < static_cast<int>(act.fiber.mor_count()); ++y) {
      const int r = act.apply(b, y);
      if (r != -1) {
        triples.push_back({act.base.name(b), act.fiber.name(y),
                           act.fiber.name(r)});
      }
    }
  }
  std::sort(triples.begin(), triples.end());
  ordered_json j = ordered_json::array();
  for (const auto& t : triples) j.push_back({t[0], t[1], t[2]});
  return j;
}

void put_meta(ordered_json& j, const Document& doc) {
  if (!doc.meta_name && !doc.meta_comments) return;
  ordered_json meta;
  if (doc.meta_name) meta["name"] = *doc.meta_name;
  if (doc.meta_comments) meta["comments"] = *doc.meta_comments;
  j["meta"] = std::move(meta);
}

}  // namespace

Document validate_document(const RawDocument& raw) {
  return build_document(raw, true);
}

Document structural_document(const RawDocument& raw) {
  return build_document(raw, false);
}

std::string serialize_document(const Document& doc) {
  ordered_json j;
  j["kind"] = doc.kind;
  put_meta(j, doc);
  if (doc.kind == "category") {
    const auto& c = std::get<FinCatX>(doc.body);
    ordered_json body = category_json(c);
    for (auto& [key, value] : body.items()) {
      if (key != "kind") j[key] = value;
    }
  } else if (doc.kind == "splitepi" || doc.kind == "reflgraph" ||
             doc.kind == "relcat") {
    const SplitEpiPair* se = nullptr;
    const ReflexiveGraph* rg = nullptr;
    const InternalCat* ic = nullptr;
    if (doc.kind == "splitepi") {
      se = &std::get<SplitEpiPair>(doc.body);
    } else if (doc.kind == "reflgraph") {
      rg = &std::get<ReflexiveGraph>(doc.body);
      se = &rg->se;
    } else {
      ic = &std::get<InternalCat>(doc.body);
      rg = &ic->rg;
      se = &rg->se;
    }
    j["base"] = category_json(se->base);
    j["total"] = category_json(se->total);
    j["i"] = map_json(se->i, se->base, se->total);
    j["s"] = map_json(se->s, se->total, se->base);
    if (rg) j["t"] = map_json(rg->t, se->total, se->base);
    if (ic) {
      std::vector<std::array<std::string, 3>> triples;
      for (std::size_t p = 0; p < ic->comp_pairs.size(); ++p) {
        const auto& e = ic->comp_pairs.elems[p];
        triples.push_back({se->total.name(e[0]), se->total.name(e[1]),
                           se->total.name(ic->d[p])});
      }
      std::sort(triples.begin(), triples.end());
      ordered_json d = ordered_json::array();
      for (const auto& t : triples) d.push_back({t[0], t[1], t[2]});
      j["d"] = std::move(d);
    }
  } else {
    const ActionSystem* act = nullptr;
    const PreCrossedModule* pxm = nullptr;
    if (doc.kind == "action") {
      act = &std::get<ActionSystem>(doc.body);
    } else if (doc.kind == "prexmod") {
      pxm = &std::get<PreCrossedModule>(doc.body);
      act = &pxm->action;
    } else {
      pxm = &std::get<CrossedModule>(doc.body).pre;
      act = &pxm->action;
    }
    j["base"] = category_json(act->base);
    j["fiber"] = category_json(act->fiber);
    if (pxm) j["kappa"] = map_json(pxm->kappa, act->fiber, act->base);
    j["action"] = action_json(*act);
  }
  return j.dump(2) + "\n";
}

Document make_document(std::string kind, DocumentBody body,
                       std::optional<std::string> name,
                       std::optional<std::string> comments) {
  Document doc;
  doc.kind = std::move(kind);
  doc.body = std::move(body);
  doc.meta_name = std::move(name);
  doc.meta_comments = std::move(comments);
  return doc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw xmod_error("ParseError", "cannot open file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw xmod_error("IOError", "cannot write file " + path);
  out << text;
}

}  // namespace xmodkit
