#include "xmodkit/fincat.hpp"

#include <algorithm>
#include <set>

namespace xmodkit {

int FinCatX::mor_index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

Span FinCatX::underlying_span() const {
  Span s;
  s.objects = objects_;
  s.left = tgt_;
  s.right = src_;
  return s;
}

FinCatX FinCatX::from_tables(ObjSet objects, std::vector<std::string> names,
                             std::vector<int> src, std::vector<int> tgt,
                             std::vector<int> id_of, std::vector<int> comp) {
  FinCatX c;
  c.objects_ = std::move(objects);
  c.names_ = std::move(names);
  c.src_ = std::move(src);
  c.tgt_ = std::move(tgt);
  c.id_of_ = std::move(id_of);
  c.comp_ = std::move(comp);
  return c;
}

FinCatX validate_category(const RawCategoryData& raw) {
  validate_objset(raw.objects);
  const std::size_t n = raw.mor_names.size();
  const int nobj = static_cast<int>(raw.objects.size());

  std::set<std::string> seen;
  for (const auto& name : raw.mor_names) {
    if (!seen.insert(name).second) {
      throw xmod_error("DuplicateMorphismName", "morphism name repeated",
                       {name});
    }
  }
  if (raw.src.size() != n || raw.tgt.size() != n) {
    throw xmod_error("BadStructureMap", "src/tgt tables must be total");
  }
  for (std::size_t m = 0; m < n; ++m) {
    if (raw.src[m] < 0 || raw.src[m] >= nobj || raw.tgt[m] < 0 ||
        raw.tgt[m] >= nobj) {
      throw xmod_error("BadStructureMap", "src/tgt out of range",
                       {raw.mor_names[m]});
    }
  }
  if (raw.id_of.size() != raw.objects.size()) {
    throw xmod_error("MissingIdentity", "one identity required per object");
  }
  for (int x = 0; x < nobj; ++x) {
    const int e = raw.id_of[x];
    if (e < 0 || e >= static_cast<int>(n)) {
      throw xmod_error("MissingIdentity", "identity out of range",
                       {raw.objects.labels[x]});
    }
    if (raw.src[e] != x || raw.tgt[e] != x) {
      throw xmod_error("MissingIdentity",
                       "identity must be an endomorphism of its object",
                       {raw.objects.labels[x], raw.mor_names[e]});
    }
  }

  std::vector<int> comp(n * n, -1);
  for (const auto& [g, f, gf] : raw.compose) {
    if (g < 0 || f < 0 || gf < 0 || g >= static_cast<int>(n) ||
        f >= static_cast<int>(n) || gf >= static_cast<int>(n)) {
      throw xmod_error("BadComposabilityDomain",
                       "composition triple out of range");
    }
    if (raw.tgt[f] != raw.src[g]) {
      throw xmod_error("BadComposabilityDomain",
                       "comp(g,f) defined but tgt(f) != src(g)",
                       {raw.mor_names[g], raw.mor_names[f]});
    }
    int& cell = comp[static_cast<std::size_t>(g) * n + f];
    if (cell != -1 && cell != gf) {
      throw xmod_error("BadComposabilityDomain",
                       "conflicting composition triples",
                       {raw.mor_names[g], raw.mor_names[f]});
    }
    cell = gf;
  }
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t f = 0; f < n; ++f) {
      const int cell = comp[g * n + f];
      if (raw.tgt[f] == raw.src[g]) {
        if (cell == -1) {
          throw xmod_error("BadComposabilityDomain",
                           "composable pair without a composite",
                           {raw.mor_names[g], raw.mor_names[f]});
        }
        if (raw.src[cell] != raw.src[f] || raw.tgt[cell] != raw.tgt[g]) {
          throw xmod_error("BadComposabilityDomain",
                           "composite has wrong src/tgt",
                           {raw.mor_names[g], raw.mor_names[f]});
        }
      }
    }
  }
  for (std::size_t f = 0; f < n; ++f) {
    const int lid = raw.id_of[raw.tgt[f]];
    const int rid = raw.id_of[raw.src[f]];
    if (comp[static_cast<std::size_t>(lid) * n + f] != static_cast<int>(f) ||
        comp[f * n + rid] != static_cast<int>(f)) {
      throw xmod_error("UnitLawViolation", "identity is not neutral",
                       {raw.mor_names[f]});
    }
  }
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t g = 0; g < n; ++g) {
      if (raw.tgt[g] != raw.src[h]) continue;
      const int hg = comp[h * n + g];
      for (std::size_t f = 0; f < n; ++f) {
        if (raw.tgt[f] != raw.src[g]) continue;
        const int gf = comp[g * n + f];
        if (comp[static_cast<std::size_t>(hg) * n + f] !=
            comp[h * n + gf]) {
          throw xmod_error(
              "AssociativityViolation", "h.(g.f) != (h.g).f",
              {raw.mor_names[h], raw.mor_names[g], raw.mor_names[f]});
        }
      }
    }
  }

  return FinCatX::from_tables(raw.objects, raw.mor_names, raw.src, raw.tgt,
                              raw.id_of, std::move(comp));
}

FinCatX discrete_category(const ObjSet& objects) {
  RawCategoryData raw;
  raw.objects = objects;
  for (std::size_t x = 0; x < objects.size(); ++x) {
    raw.mor_names.push_back("1_" + objects.labels[x]);
    raw.src.push_back(static_cast<int>(x));
    raw.tgt.push_back(static_cast<int>(x));
    raw.id_of.push_back(static_cast<int>(x));
    raw.compose.push_back({static_cast<int>(x), static_cast<int>(x),
                           static_cast<int>(x)});
  }
  return validate_category(raw);
}

void validate_functor(const MorIndexMap& map, const FinCatX& dom,
                      const FinCatX& cod) {
  if (!(dom.objects() == cod.objects())) {
    throw xmod_error("MismatchedObjSet",
                     "identity-on-objects functor needs a common object set");
  }
  if (map.size() != dom.mor_count()) {
    throw xmod_error("BadStructureMap", "functor map must be total");
  }
  const int n = static_cast<int>(dom.mor_count());
  for (int m = 0; m < n; ++m) {
    if (map[m] < 0 || map[m] >= static_cast<int>(cod.mor_count())) {
      throw xmod_error("BadStructureMap", "functor image out of range",
                       {dom.name(m)});
    }
    if (cod.src(map[m]) != dom.src(m) || cod.tgt(map[m]) != dom.tgt(m)) {
      throw xmod_error("SrcTgtNotPreserved", "functor moves src or tgt",
                       {dom.name(m)});
    }
  }
  for (std::size_t x = 0; x < dom.objects().size(); ++x) {
    if (map[dom.id_of(static_cast<int>(x))] !=
        cod.id_of(static_cast<int>(x))) {
      throw xmod_error("IdentityNotPreserved", "identity not sent to identity",
                       {dom.objects().labels[x]});
    }
  }
  for (int g = 0; g < n; ++g) {
    for (int f = 0; f < n; ++f) {
      const int gf = dom.compose(g, f);
      if (gf == -1) continue;
      if (cod.compose(map[g], map[f]) != map[gf]) {
        throw xmod_error("CompositionNotPreserved", "F(g.f) != F(g).F(f)",
                         {dom.name(g), dom.name(f)});
      }
    }
  }
}

InverseMap groupoid_inverses(const FinCatX& c) {
  const int n = static_cast<int>(c.mor_count());
  InverseMap inv(n, -1);
  for (int f = 0; f < n; ++f) {
    const int want_left = c.id_of(c.src(f));
    const int want_right = c.id_of(c.tgt(f));
    for (int g = 0; g < n; ++g) {
      if (c.compose(g, f) == want_left && c.compose(f, g) == want_right) {
        inv[f] = g;
        break;
      }
    }
    if (inv[f] == -1) {
      throw xmod_error("NotGroupoid", "morphism has no two-sided inverse",
                       {c.name(f)});
    }
  }
  return inv;
}

bool is_groupoid(const FinCatX& c) {
  try {
    groupoid_inverses(c);
    return true;
  } catch (const xmod_error&) {
    return false;
  }
}

bool is_bundle(const FinCatX& c) {
  return c.src_map() == c.tgt_map();
}

}  // namespace xmodkit
