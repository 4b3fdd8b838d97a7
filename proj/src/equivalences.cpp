#include "xmodkit/equivalences.hpp"

#include <algorithm>

namespace xmodkit {

namespace {

int point(const FinCatX& bundle, int y) { return bundle.src(y); }

ElementSet mor_set(const FinCatX& c, std::string desc) {
  ElementSet s;
  s.desc = std::move(desc);
  for (int m = 0; m < static_cast<int>(c.mor_count()); ++m) s.elems.push_back({m});
  return s;
}

// Composable (a, b) pairs with a a kernel element and pt(a) = tgt(b).
ElementSet kernel_pair_set(const SplitEpiPair& se, const KernelObject& k) {
  ElementSet s;
  s.desc = "(A|x|I)B";
  for (int a : k.embed) {
    for (int b = 0; b < static_cast<int>(se.base.mor_count()); ++b) {
      if (se.total.src(a) == se.base.tgt(b)) s.elems.push_back({a, b});
    }
  }
  std::sort(s.elems.begin(), s.elems.end());
  return s;
}

// A^{[x]_B n}: n-tuples with s(a_i) = t(a_{i+1}); the 0th power is B.
ElementSet box_power_set(const ReflexiveGraph& rg, int n) {
  ElementSet s;
  s.desc = "A^[x]" + std::to_string(n);
  if (n == 0) {
    for (int b = 0; b < static_cast<int>(rg.se.base.mor_count()); ++b) {
      s.elems.push_back({b});
    }
    return s;
  }
  ElementSet tail = box_power_set(rg, n - 1);
  for (int a = 0; a < static_cast<int>(rg.se.total.mor_count()); ++a) {
    if (n == 1) {
      s.elems.push_back({a});
      continue;
    }
    for (const auto& rest : tail.elems) {
      if (rg.se.s[a] == rg.t[rest[0]]) {
        std::vector<int> e{a};
        e.insert(e.end(), rest.begin(), rest.end());
        s.elems.push_back(std::move(e));
      }
    }
  }
  std::sort(s.elems.begin(), s.elems.end());
  return s;
}

// X-target of a box-power tuple: tgt of its first entry (tgt in B for n=0).
int box_tuple_xtgt(const ReflexiveGraph& rg, const std::vector<int>& e, int n) {
  return n == 0 ? rg.se.base.tgt(e[0]) : rg.se.total.tgt(e[0]);
}

// (A|x|I) A^{[x]_B n}: a kernel element (stored as a total morphism) in
// front of a box-power tuple at its base point.
ElementSet kernel_power_set(const ReflexiveGraph& rg, const KernelObject& k,
                            int n) {
  ElementSet s;
  s.desc = "(A|x|I)A^[x]" + std::to_string(n);
  ElementSet tail = box_power_set(rg, n);
  for (int a : k.embed) {
    for (const auto& rest : tail.elems) {
      if (rg.se.total.src(a) == box_tuple_xtgt(rg, rest, n)) {
        std::vector<int> e{a};
        e.insert(e.end(), rest.begin(), rest.end());
        s.elems.push_back(std::move(e));
      }
    }
  }
  std::sort(s.elems.begin(), s.elems.end());
  return s;
}

// (A|x|I)B |x|_B A^{[x]_B n}: ((k, b), tuple) with b = t(first entry).
ElementSet hn_cod_set(const ReflexiveGraph& rg, const KernelObject& k, int n) {
  ElementSet s;
  s.desc = "(A|x|I)B[x]A^[x]" + std::to_string(n);
  ElementSet tail = box_power_set(rg, n);
  for (int a : k.embed) {
    for (const auto& rest : tail.elems) {
      const int b = n == 0 ? rest[0] : rg.t[rest[0]];
      if (rg.se.total.src(a) != rg.se.base.tgt(b)) continue;
      std::vector<int> e{a, b};
      e.insert(e.end(), rest.begin(), rest.end());
      s.elems.push_back(std::move(e));
    }
  }
  std::sort(s.elems.begin(), s.elems.end());
  return s;
}

// Y^n B: n fiber morphisms at the X-target of a base morphism.
ElementSet ynb_set(const PreCrossedModule& pxm, int n) {
  ElementSet s;
  s.desc = "Y^" + std::to_string(n) + "B";
  const FinCatX& Y = pxm.action.fiber;
  const FinCatX& B = pxm.action.base;
  std::vector<std::vector<int>> acc{{}};
  for (int j = 0; j < n; ++j) {
    std::vector<std::vector<int>> next;
    for (const auto& pre : acc) {
      for (int y = 0; y < static_cast<int>(Y.mor_count()); ++y) {
        if (!pre.empty() && point(Y, pre.back()) != point(Y, y)) continue;
        auto e = pre;
        e.push_back(y);
        next.push_back(std::move(e));
      }
    }
    acc = std::move(next);
  }
  for (const auto& pre : acc) {
    for (int b = 0; b < static_cast<int>(B.mor_count()); ++b) {
      if (!pre.empty() && point(Y, pre.back()) != B.tgt(b)) continue;
      auto e = pre;
      e.push_back(b);
      s.elems.push_back(std::move(e));
    }
  }
  std::sort(s.elems.begin(), s.elems.end());
  return s;
}

// kappa(y_1)...kappa(y_m).b composed in B.
int kappa_chain(const PreCrossedModule& pxm, const std::vector<int>& ys,
                std::size_t from, int b) {
  const FinCatX& B = pxm.action.base;
  int c = b;
  for (std::size_t j = ys.size(); j-- > from;) {
    c = B.compose(pxm.kappa[ys[j]], c);
  }
  return c;
}

// YB |x|_B Y^{n-1}B: ((y, c), rest) with c the kappa-chain of rest.
ElementSet bn_cod_set(const PreCrossedModule& pxm, int n) {
  ElementSet s;
  s.desc = "YB[x]Y^" + std::to_string(n - 1) + "B";
  const FinCatX& Y = pxm.action.fiber;
  const FinCatX& B = pxm.action.base;
  ElementSet tail = ynb_set(pxm, n - 1);
  for (int y = 0; y < static_cast<int>(Y.mor_count()); ++y) {
    for (const auto& rest : tail.elems) {
      std::vector<int> ys(rest.begin(), rest.end() - 1);
      const int c = kappa_chain(pxm, ys, 0, rest.back());
      if (point(Y, y) != B.tgt(c)) continue;
      std::vector<int> e{y, c};
      e.insert(e.end(), rest.begin(), rest.end());
      s.elems.push_back(std::move(e));
    }
  }
  std::sort(s.elems.begin(), s.elems.end());
  return s;
}

OracleReport functor_report(const MorIndexMap& map, const FinCatX& dom,
                            const FinCatX& cod) {
  try {
    validate_functor(map, dom, cod);
  } catch (const xmod_error& e) {
    return OracleReport::fail(0, {}, e.what());
  }
  return OracleReport::pass(dom.mor_count());
}

std::string pair_name(const SplitEpiPair& se, int a, int b) {
  return "(" + se.total.name(a) + "," + se.base.name(b) + ")";
}

}  // namespace

int ElementSet::find(const std::vector<int>& e) const {
  auto it = std::lower_bound(elems.begin(), elems.end(), e);
  if (it == elems.end() || *it != e) return -1;
  return static_cast<int>(it - elems.begin());
}

OracleReport decide_bijective(MorphismMap& m) {
  std::vector<int> hit(m.cod.size(), -1);
  for (std::size_t j = 0; j < m.table.size(); ++j) {
    const int c = m.table[j];
    if (hit[c] != -1) {
      return OracleReport::fail(
          j + 1, {hit[c], static_cast<int>(j)},
          "NotInjective: domain elements " + std::to_string(hit[c]) + " and " +
              std::to_string(j) + " share an image");
    }
    hit[c] = static_cast<int>(j);
  }
  for (std::size_t c = 0; c < hit.size(); ++c) {
    if (hit[c] == -1) {
      return OracleReport::fail(m.table.size(), {static_cast<int>(c)},
                                "NotSurjective: codomain element " +
                                    std::to_string(c) + " is not reached");
    }
  }
  m.inverse = std::move(hit);
  return OracleReport::pass(m.table.size(), "bijective");
}

int KernelObject::index_of_total(int a) const {
  auto it = std::lower_bound(embed.begin(), embed.end(), a);
  if (it == embed.end() || *it != a) return -1;
  return static_cast<int>(it - embed.begin());
}

KernelObject kernel_object(const SplitEpiPair& se) {
  splitepi_basic_checks(se);
  KernelObject k;
  for (int a = 0; a < static_cast<int>(se.total.mor_count()); ++a) {
    if (se.base.is_identity(se.s[a])) k.embed.push_back(a);
  }
  RawCategoryData raw;
  raw.objects = se.total.objects();
  for (int a : k.embed) {
    raw.mor_names.push_back(se.total.name(a));
    raw.src.push_back(se.total.src(a));
    raw.tgt.push_back(se.total.src(a));
  }
  for (std::size_t x = 0; x < raw.objects.size(); ++x) {
    const int ida = se.total.id_of(static_cast<int>(x));
    const int idx = k.index_of_total(ida);
    if (idx == -1) {
      throw xmod_error("KernelNotClosed", "identity missing from the kernel",
                       {raw.objects.labels[x]});
    }
    raw.id_of.push_back(idx);
  }
  for (std::size_t p = 0; p < k.embed.size(); ++p) {
    for (std::size_t r = 0; r < k.embed.size(); ++r) {
      const int c = se.total.compose(k.embed[p], k.embed[r]);
      if (c == -1) continue;
      const int ci = k.index_of_total(c);
      if (ci == -1) {
        throw xmod_error("KernelNotClosed",
                         "kernel not closed under composition",
                         {se.total.name(k.embed[p]), se.total.name(k.embed[r])});
      }
      raw.compose.push_back(
          {static_cast<int>(p), static_cast<int>(r), ci});
    }
  }
  k.bundle = validate_category(raw);
  return k;
}

MorphismMap build_q(const SplitEpiPair& se) {
  KernelObject k = kernel_object(se);
  MorphismMap q;
  q.dom = kernel_pair_set(se, k);
  q.cod = mor_set(se.total, "mor(A)");
  for (const auto& e : q.dom.elems) {
    q.table.push_back(se.total.compose(e[0], se.i[e[1]]));
  }
  decide_bijective(q);
  return q;
}

MorphismMap groupoid_q_inverse(const SplitEpiPair& se,
                               const InverseMap& base_inverse) {
  KernelObject k = kernel_object(se);
  MorphismMap m;
  m.dom = mor_set(se.total, "mor(A)");
  m.cod = kernel_pair_set(se, k);
  for (int a = 0; a < static_cast<int>(se.total.mor_count()); ++a) {
    const int b = se.s[a];
    const int ka = se.total.compose(a, se.i[base_inverse[b]]);
    const int idx = m.cod.find({ka, b});
    if (idx == -1) {
      throw xmod_error("KernelNotClosed",
                       "a.i(s(a)^-1) landed outside the kernel",
                       {se.total.name(a)});
    }
    m.table.push_back(idx);
  }
  decide_bijective(m);
  return m;
}

void validate_splitepi(const SplitEpiPair& se) {
  splitepi_basic_checks(se);
  MorphismMap q = build_q(se);
  if (!q.bijective()) {
    OracleReport rep = decide_bijective(q);
    std::vector<std::string> witness;
    for (int j : *rep.witness) {
      if (rep.note.rfind("NotInjective", 0) == 0) {
        witness.push_back(pair_name(se, q.dom.elems[j][0], q.dom.elems[j][1]));
      } else {
        witness.push_back(se.total.name(q.cod.elems[j][0]));
      }
    }
    throw xmod_error("QNotInvertible", rep.note, witness);
  }
  validate_functor(se.s, se.total, se.base);
}

ActionSystem splitepi_to_distlaw(const SplitEpiPair& se) {
  KernelObject k = kernel_object(se);
  MorphismMap q = build_q(se);
  if (!q.bijective()) {
    OracleReport rep = decide_bijective(q);
    throw xmod_error("QNotInvertible", rep.note);
  }
  const int nb = static_cast<int>(se.base.mor_count());
  const int ny = static_cast<int>(k.bundle.mor_count());
  std::vector<int> table(static_cast<std::size_t>(nb) * ny, -1);
  for (int b = 0; b < nb; ++b) {
    for (int y = 0; y < ny; ++y) {
      if (se.base.src(b) != point(k.bundle, y)) continue;
      const int w = se.total.compose(se.i[b], k.embed[y]);
      const auto& pre = q.dom.elems[(*q.inverse)[w]];
      table[static_cast<std::size_t>(b) * ny + y] =
          k.index_of_total(pre[0]);
    }
  }
  return validate_action(se.base, k.bundle, std::move(table));
}

void validate_reflgraph(const ReflexiveGraph& rg) {
  validate_splitepi(rg.se);
  validate_functor(rg.t, rg.se.total, rg.se.base);
  for (int b = 0; b < static_cast<int>(rg.se.base.mor_count()); ++b) {
    if (rg.t[rg.se.i[b]] != b) {
      throw xmod_error("SectionLawViolation", "t.i != id",
                       {rg.se.base.name(b)});
    }
  }
}

PreCrossedModule validate_precrossed(const ActionSystem& action,
                                     MorIndexMap kappa) {
  const FinCatX& B = action.base;
  const FinCatX& Y = action.fiber;
  if (kappa.size() != Y.mor_count()) {
    throw xmod_error("BadStructureMap", "kappa must be total");
  }
  for (int y = 0; y < static_cast<int>(Y.mor_count()); ++y) {
    if (kappa[y] < 0 || kappa[y] >= static_cast<int>(B.mor_count()) ||
        B.src(kappa[y]) != Y.src(y) || B.tgt(kappa[y]) != Y.tgt(y)) {
      throw xmod_error("SrcTgtNotPreserved", "kappa moves src or tgt",
                       {Y.name(y)});
    }
  }
  // The compatibility law is swept before multiplicativity of kappa so a
  // corrupted table surfaces with a (b, y) witness.
  for (int b = 0; b < static_cast<int>(B.mor_count()); ++b) {
    for (int y = 0; y < static_cast<int>(Y.mor_count()); ++y) {
      const int by = action.apply(b, y);
      if (by == -1) continue;
      if (B.compose(kappa[by], b) != B.compose(b, kappa[y])) {
        throw xmod_error("PreCrossedViolated",
                         "kappa(b |> y).b != b.kappa(y)",
                         {B.name(b), Y.name(y)});
      }
    }
  }
  validate_functor(kappa, action.fiber, action.base);
  PreCrossedModule pxm;
  pxm.action = action;
  pxm.kappa = std::move(kappa);
  return pxm;
}

CrossedModule validate_xmod(const PreCrossedModule& pxm) {
  validate_precrossed(pxm.action, pxm.kappa);
  OracleReport rep = check_peiffer(pxm);
  if (!rep.ok) {
    const FinCatX& Y = pxm.action.fiber;
    throw xmod_error("PeifferViolated", rep.note,
                     {Y.name((*rep.witness)[0]), Y.name((*rep.witness)[1])});
  }
  return CrossedModule{pxm};
}

PreCrossedModule reflgraph_to_prex(const ReflexiveGraph& rg) {
  ActionSystem act = splitepi_to_distlaw(rg.se);
  KernelObject k = kernel_object(rg.se);
  MorIndexMap kappa;
  for (int a : k.embed) kappa.push_back(rg.t[a]);
  return validate_precrossed(act, std::move(kappa));
}

namespace {

ReflexiveGraph graph_of(const SemidirectProduct& sd,
                        const PreCrossedModule& pxm) {
  ReflexiveGraph rg;
  rg.se = sd.pair;
  const FinCatX& B = pxm.action.base;
  for (const auto& [y, b] : sd.carrier) {
    rg.t.push_back(B.compose(pxm.kappa[y], b));
  }
  return rg;
}

}  // namespace

ReflexiveGraph prex_to_reflgraph(const PreCrossedModule& pxm) {
  validate_precrossed(pxm.action, pxm.kappa);
  SemidirectProduct sd = semidirect_product(pxm.action);
  ReflexiveGraph rg = graph_of(sd, pxm);
  // t = m.k1 is a functor exactly by the pre-crossed law.
  validate_functor(rg.t, rg.se.total, rg.se.base);
  return rg;
}

OracleReport check_peiffer(const PreCrossedModule& pxm) {
  const FinCatX& Y = pxm.action.fiber;
  std::size_t checked = 0;
  for (int y = 0; y < static_cast<int>(Y.mor_count()); ++y) {
    for (int y2 = 0; y2 < static_cast<int>(Y.mor_count()); ++y2) {
      if (point(Y, y) != point(Y, y2)) continue;
      ++checked;
      const int lhs = Y.compose(pxm.action.apply(pxm.kappa[y], y2), y);
      const int rhs = Y.compose(y, y2);
      if (lhs != rhs) {
        return OracleReport::fail(
            checked, {y, y2},
            "Peiffer fails at (y=" + Y.name(y) + ", y'=" + Y.name(y2) + ")");
      }
    }
  }
  return OracleReport::pass(checked, "Peiffer identity holds");
}

MorphismMap build_iterated(IteratedKind kind, const ReflexiveGraph& rg,
                           int n) {
  if (kind == IteratedKind::bn) {
    throw xmod_error("StructureMismatch",
                     "b_n is built from a pre-crossed module");
  }
  if (n < 1 || n > 3) {
    throw xmod_error("UnsupportedN", "n must be 1..3");
  }
  KernelObject k = kernel_object(rg.se);
  MorphismMap m;
  if (kind == IteratedKind::qn) {
    m.dom = kernel_power_set(rg, k, n - 1);
    m.cod = box_power_set(rg, n);
    for (const auto& e : m.dom.elems) {
      const int b1 = n == 1 ? e[1] : rg.t[e[1]];
      std::vector<int> out{rg.se.total.compose(e[0], rg.se.i[b1])};
      if (n > 1) out.insert(out.end(), e.begin() + 1, e.end());
      m.table.push_back(m.cod.find(out));
    }
  } else {
    m.dom = kernel_power_set(rg, k, n);
    m.cod = hn_cod_set(rg, k, n);
    for (const auto& e : m.dom.elems) {
      std::vector<int> out{e[0], rg.t[e[1]]};
      out.insert(out.end(), e.begin() + 1, e.end());
      m.table.push_back(m.cod.find(out));
    }
  }
  // Images land in the codomain for any lawful reflexive graph; an escape
  // means s or t fails to be a functor.
  for (std::size_t p = 0; p < m.table.size(); ++p) {
    if (m.table[p] == -1) {
      throw xmod_error("StructureMismatch",
                       "iterated map image escapes its codomain; "
                       "s or t is not a functor");
    }
  }
  decide_bijective(m);
  return m;
}

MorphismMap build_iterated(IteratedKind kind, const PreCrossedModule& pxm,
                           int n) {
  if (kind != IteratedKind::bn) {
    throw xmod_error("StructureMismatch",
                     "q_n and h_n are built from a reflexive graph");
  }
  if (n < 1 || n > 3) {
    throw xmod_error("UnsupportedN", "n must be 1..3");
  }
  MorphismMap m;
  m.dom = ynb_set(pxm, n);
  m.cod = bn_cod_set(pxm, n);
  for (const auto& e : m.dom.elems) {
    std::vector<int> ys(e.begin(), e.end() - 1);
    const int c = kappa_chain(pxm, ys, 1, e.back());
    std::vector<int> out{e[0], c};
    out.insert(out.end(), e.begin() + 1, e.end());
    const int img = m.cod.find(out);
    if (img == -1) {
      throw xmod_error("StructureMismatch",
                       "b_n image escapes its codomain; kappa is not a "
                       "span morphism");
    }
    m.table.push_back(img);
  }
  decide_bijective(m);
  return m;
}

OracleReport check_b2_unit_identities(const PreCrossedModule& pxm) {
  const FinCatX& Y = pxm.action.fiber;
  const FinCatX& B = pxm.action.base;
  MorphismMap b2 = build_iterated(IteratedKind::bn, pxm, 2);
  SemidirectProduct sd = semidirect_product(pxm.action);

  std::size_t checked = 0;
  for (const auto& [y, b] : sd.carrier) {
    // (1) b_2 . u11 = u1 [] 1
    const int uy = Y.id_of(point(Y, y));
    int idx = b2.dom.find({uy, y, b});
    auto lhs = b2.cod.elems[b2.table[idx]];
    const int kb = B.compose(pxm.kappa[y], b);
    std::vector<int> rhs{Y.id_of(B.tgt(kb)), kb, y, b};
    ++checked;
    if (lhs != rhs) {
      return OracleReport::fail(checked, {y, b},
                                "b_2.u11 != u1[]1 at (" + Y.name(y) + "," +
                                    B.name(b) + ")");
    }
    // (2) b_2 . 1u1 = 1 [] u1
    const int ub = Y.id_of(B.tgt(b));
    idx = b2.dom.find({y, ub, b});
    lhs = b2.cod.elems[b2.table[idx]];
    rhs = {y, b, ub, b};
    ++checked;
    if (lhs != rhs) {
      return OracleReport::fail(checked, {y, b},
                                "b_2.1u1 != 1[]u1 at (" + Y.name(y) + "," +
                                    B.name(b) + ")");
    }
  }
  return OracleReport::pass(checked, "b_2 unit identities hold");
}

OracleReport check_bn_square(const PreCrossedModule& pxm, int n) {
  if (n < 0 || n > 2) {
    throw xmod_error("UnsupportedN", "square checked for n = 0..2");
  }
  SemidirectProduct sd = semidirect_product(pxm.action);
  ReflexiveGraph rg = graph_of(sd, pxm);

  std::vector<MorphismMap> bmaps, qmaps;
  for (int j = 1; j <= n + 1; ++j) {
    bmaps.push_back(build_iterated(IteratedKind::bn, pxm, j));
    qmaps.push_back(build_iterated(IteratedKind::qn, rg, j));
  }

  ElementSet dom = ynb_set(pxm, n + 1);
  std::size_t checked = 0;
  for (std::size_t e = 0; e < dom.elems.size(); ++e) {
    const auto& elem = dom.elems[e];
    // top: b_{n+1}, then 1 [] b_n, ..., then project away the trailing B.
    std::vector<int> top;
    std::vector<int> cur = elem;
    for (int j = n + 1; j >= 1; --j) {
      const MorphismMap& bj = bmaps[j - 1];
      const auto& out = bj.cod.elems[bj.table[bj.dom.find(cur)]];
      top.push_back(sd.pair_index(out[0], out[1]));
      cur.assign(out.begin() + 2, out.end());
    }
    // bottom: f...f1, then 1..1q_1, ..., q_{n+1}.
    std::vector<int> acc{elem.back()};
    for (int j = 1; j <= n + 1; ++j) {
      const MorphismMap& qj = qmaps[j - 1];
      const int kern = sd.fiber_embed[elem[n + 1 - j]];
      std::vector<int> in{kern};
      in.insert(in.end(), acc.begin(), acc.end());
      acc = qj.cod.elems[qj.table[qj.dom.find(in)]];
    }
    ++checked;
    if (top != acc) {
      return OracleReport::fail(checked, {static_cast<int>(e)},
                                "b/q square fails at domain element " +
                                    std::to_string(e));
    }
  }
  return OracleReport::pass(checked,
                            "b/q square commutes for n = " + std::to_string(n));
}

InternalCat build_composition_d(const ReflexiveGraph& rg) {
  MorphismMap q1 = build_q(rg.se);
  if (!q1.bijective()) {
    OracleReport rep = decide_bijective(q1);
    throw xmod_error("QNotInvertible", rep.note);
  }
  MorphismMap q2 = build_iterated(IteratedKind::qn, rg, 2);
  if (!q2.bijective()) {
    OracleReport rep = decide_bijective(q2);
    throw xmod_error("Q2NotInvertible", rep.note);
  }
  const FinCatX& A = rg.se.total;
  KernelObject kern = kernel_object(rg.se);

  // Existence: m.(p_A 1).q_2^-1.m.((i[]1)(1[]i)).(1 p_A) = m.(1 p_A) on
  // the product of A with the kernel.
  for (int a = 0; a < static_cast<int>(A.mor_count()); ++a) {
    for (int k : kern.embed) {
      if (A.src(a) != A.src(k)) continue;
      const int w = A.compose(rg.se.i[rg.t[a]], k);
      const int cod_idx = q2.cod.find({w, a});
      if (cod_idx == -1) {
        throw xmod_error("NoComposition", "pair (i t(a).k, a) escapes A[x]A",
                         {A.name(a), A.name(k)});
      }
      const auto& pre = q2.dom.elems[(*q2.inverse)[cod_idx]];
      const int lhs = A.compose(pre[0], a);
      const int rhs = A.compose(a, k);
      if (lhs != rhs) {
        throw xmod_error("NoComposition",
                         "existence diagram fails at (a=" + A.name(a) +
                             ", k=" + A.name(k) + ")",
                         {A.name(a), A.name(k)});
      }
    }
  }

  InternalCat ic;
  ic.rg = rg;
  ic.comp_pairs = q2.cod;
  for (std::size_t p = 0; p < ic.comp_pairs.size(); ++p) {
    const auto& pre = q2.dom.elems[(*q2.inverse)[p]];
    ic.d.push_back(A.compose(pre[0], pre[1]));
  }
  return ic;
}

OracleReport check_internal_cat_laws(const InternalCat& ic) {
  const FinCatX& A = ic.rg.se.total;
  const MorIndexMap& s = ic.rg.se.s;
  const MorIndexMap& t = ic.rg.t;
  const MorIndexMap& i = ic.rg.se.i;
  std::size_t checked = 0;

  for (std::size_t p = 0; p < ic.comp_pairs.size(); ++p) {
    const auto& e = ic.comp_pairs.elems[p];
    ++checked;
    if (s[ic.d[p]] != s[e[1]] || t[ic.d[p]] != t[e[0]]) {
      return OracleReport::fail(checked, {static_cast<int>(p)},
                                "d moves src or tgt at (" + A.name(e[0]) +
                                    "," + A.name(e[1]) + ")");
    }
  }
  for (int a = 0; a < static_cast<int>(A.mor_count()); ++a) {
    const int right = ic.comp_pairs.find({a, i[s[a]]});
    const int left = ic.comp_pairs.find({i[t[a]], a});
    checked += 2;
    if (right == -1 || ic.d[right] != a) {
      return OracleReport::fail(checked, {a},
                                "d(a, i s(a)) != a at " + A.name(a));
    }
    if (left == -1 || ic.d[left] != a) {
      return OracleReport::fail(checked, {a},
                                "d(i t(a), a) != a at " + A.name(a));
    }
  }
  // interchange: d is a functor A [x]_B A -> A
  for (std::size_t p = 0; p < ic.comp_pairs.size(); ++p) {
    const auto& pe = ic.comp_pairs.elems[p];
    for (std::size_t r = 0; r < ic.comp_pairs.size(); ++r) {
      const auto& re = ic.comp_pairs.elems[r];
      const int c1 = A.compose(pe[0], re[0]);
      const int c2 = A.compose(pe[1], re[1]);
      if (c1 == -1 || c2 == -1) continue;
      const int prod = ic.comp_pairs.find({c1, c2});
      ++checked;
      if (prod == -1 || ic.d[prod] != A.compose(ic.d[p], ic.d[r])) {
        return OracleReport::fail(
            checked, {static_cast<int>(p), static_cast<int>(r)},
            "interchange fails at ((" + A.name(pe[0]) + "," + A.name(pe[1]) +
                "),(" + A.name(re[0]) + "," + A.name(re[1]) + "))");
      }
    }
  }
  // associativity over A [x]_B A [x]_B A
  for (std::size_t p = 0; p < ic.comp_pairs.size(); ++p) {
    const auto& pe = ic.comp_pairs.elems[p];
    for (int a3 = 0; a3 < static_cast<int>(A.mor_count()); ++a3) {
      if (ic.rg.se.s[pe[1]] != t[a3]) continue;
      const int inner = ic.comp_pairs.find({pe[1], a3});
      const int left = ic.comp_pairs.find({ic.d[p], a3});
      const int right = ic.comp_pairs.find({pe[0], ic.d[inner]});
      ++checked;
      if (ic.d[left] != ic.d[right]) {
        return OracleReport::fail(
            checked, {static_cast<int>(p), a3},
            "d(d[]1) != d(1[]d) at ((" + A.name(pe[0]) + "," + A.name(pe[1]) +
                ")," + A.name(a3) + ")");
      }
    }
  }
  return OracleReport::pass(checked, "internal category laws hold");
}

void validate_internal_cat(const InternalCat& ic) {
  validate_reflgraph(ic.rg);
  MorphismMap q2 = build_iterated(IteratedKind::qn, ic.rg, 2);
  if (!(ic.comp_pairs == q2.cod) ||
      ic.d.size() != ic.comp_pairs.size()) {
    throw xmod_error("BadStructureMap",
                     "composition table does not match A[x]A");
  }
  OracleReport rep = check_internal_cat_laws(ic);
  if (!rep.ok) {
    throw xmod_error("InternalCatLawViolation", rep.note);
  }
}

InternalCat xmod_to_relcat(const CrossedModule& xm) {
  validate_xmod(xm.pre);
  ReflexiveGraph rg = prex_to_reflgraph(xm.pre);
  // NoComposition cannot fire here: the Peiffer identity is exactly the
  // existence condition for d.
  return build_composition_d(rg);
}

CrossedModule relcat_to_xmod(const InternalCat& ic) {
  PreCrossedModule pxm = reflgraph_to_prex(ic.rg);
  return validate_xmod(pxm);
}

OracleReport check_graph_morphism_is_functor(const MorIndexMap& base_map,
                                             const MorIndexMap& total_map,
                                             const InternalCat& dom,
                                             const InternalCat& cod) {
  validate_functor(base_map, dom.rg.se.base, cod.rg.se.base);
  validate_functor(total_map, dom.rg.se.total, cod.rg.se.total);
  const int na = static_cast<int>(dom.rg.se.total.mor_count());
  for (int a = 0; a < na; ++a) {
    if (cod.rg.se.s[total_map[a]] != base_map[dom.rg.se.s[a]] ||
        cod.rg.t[total_map[a]] != base_map[dom.rg.t[a]]) {
      throw xmod_error("GraphMorphismViolation",
                       "morphism incompatible with s or t",
                       {dom.rg.se.total.name(a)});
    }
  }
  for (int b = 0; b < static_cast<int>(dom.rg.se.base.mor_count()); ++b) {
    if (total_map[dom.rg.se.i[b]] != cod.rg.se.i[base_map[b]]) {
      throw xmod_error("GraphMorphismViolation",
                       "morphism incompatible with i",
                       {dom.rg.se.base.name(b)});
    }
  }
  std::size_t checked = 0;
  for (std::size_t p = 0; p < dom.comp_pairs.size(); ++p) {
    const auto& e = dom.comp_pairs.elems[p];
    const int image = cod.comp_pairs.find({total_map[e[0]], total_map[e[1]]});
    ++checked;
    if (image == -1 || cod.d[image] != total_map[dom.d[p]]) {
      return OracleReport::fail(
          checked, {static_cast<int>(p)},
          "d not preserved at (" + dom.rg.se.total.name(e[0]) + "," +
              dom.rg.se.total.name(e[1]) + ")");
    }
  }
  return OracleReport::pass(checked, "graph morphism preserves d");
}

namespace {

// Shared data of the split-epi round trip: the induced action on the kernel,
// its semidirect product, and the comparison map q : A' -> A.
struct RoundTripData {
  KernelObject kernel;
  ActionSystem act;
  SemidirectProduct sd;
  MorphismMap q;  // mor(A') -> mor(A)
};

RoundTripData splitepi_roundtrip(const SplitEpiPair& se) {
  RoundTripData rt;
  rt.kernel = kernel_object(se);
  rt.act = splitepi_to_distlaw(se);
  rt.sd = semidirect_product(rt.act);
  rt.q.dom = mor_set(rt.sd.pair.total, "mor(A')");
  rt.q.cod = mor_set(se.total, "mor(A)");
  for (const auto& [k, b] : rt.sd.carrier) {
    rt.q.table.push_back(se.total.compose(rt.kernel.embed[k], se.i[b]));
  }
  decide_bijective(rt.q);
  return rt;
}

OracleReport check_q_component(const SplitEpiPair& se, const RoundTripData& rt,
                               const MorIndexMap* t_outer,
                               const MorIndexMap* t_inner) {
  const FinCatX& A2 = rt.sd.pair.total;
  const FinCatX& A = se.total;
  if (!rt.q.bijective()) {
    return OracleReport::fail(A2.mor_count(), {}, "q is not bijective");
  }
  OracleReport fr = functor_report(rt.q.table, A2, A);
  if (!fr.ok) {
    fr.note = "q is not a functor: " + fr.note;
    return fr;
  }
  std::size_t checked = A2.mor_count();
  for (int b = 0; b < static_cast<int>(se.base.mor_count()); ++b) {
    ++checked;
    if (rt.q.table[rt.sd.pair.i[b]] != se.i[b]) {
      return OracleReport::fail(checked, {b}, "q.i' != i at " +
                                                  se.base.name(b));
    }
  }
  for (int p = 0; p < static_cast<int>(A2.mor_count()); ++p) {
    ++checked;
    if (se.s[rt.q.table[p]] != rt.sd.pair.s[p]) {
      return OracleReport::fail(checked, {p}, "s.q != s' at " + A2.name(p));
    }
    if (t_outer && t_inner && (*t_outer)[rt.q.table[p]] != (*t_inner)[p]) {
      return OracleReport::fail(checked, {p}, "t.q != t' at " + A2.name(p));
    }
  }
  return OracleReport::pass(checked,
                            "(1,q) is an isomorphism, " +
                                std::to_string(A2.mor_count()) +
                                " points checked");
}

// The component f : Y -> kernel(Y x| B), y -> (y, 1).
struct FComponent {
  SemidirectProduct sd;
  KernelObject kernel2;   // kernel of the semidirect pair
  ActionSystem act2;      // induced action on it
  MorIndexMap f;          // fiber -> kernel2 index
};

FComponent f_component(const ActionSystem& act) {
  FComponent fc;
  fc.sd = semidirect_product(act);
  fc.kernel2 = kernel_object(fc.sd.pair);
  fc.act2 = splitepi_to_distlaw(fc.sd.pair);
  for (int y = 0; y < static_cast<int>(act.fiber.mor_count()); ++y) {
    fc.f.push_back(fc.kernel2.index_of_total(fc.sd.fiber_embed[y]));
  }
  return fc;
}

OracleReport check_f_component(const ActionSystem& act, const FComponent& fc) {
  const FinCatX& Y = act.fiber;
  MorphismMap fm;
  fm.dom = mor_set(Y, "mor(Y)");
  fm.cod = mor_set(fc.kernel2.bundle, "mor(kernel)");
  fm.table = fc.f;
  if (!decide_bijective(fm).ok) {
    return OracleReport::fail(Y.mor_count(), {}, "f is not bijective");
  }
  OracleReport fr = functor_report(fc.f, Y, fc.kernel2.bundle);
  if (!fr.ok) {
    fr.note = "f is not a functor: " + fr.note;
    return fr;
  }
  std::size_t checked = Y.mor_count();
  for (int b = 0; b < static_cast<int>(act.base.mor_count()); ++b) {
    for (int y = 0; y < static_cast<int>(Y.mor_count()); ++y) {
      const int by = act.apply(b, y);
      if (by == -1) continue;
      ++checked;
      if (fc.act2.apply(b, fc.f[y]) != fc.f[by]) {
        return OracleReport::fail(checked, {b, y},
                                  "f does not intertwine the actions at (" +
                                      act.base.name(b) + "," + Y.name(y) +
                                      ")");
      }
    }
  }
  return OracleReport::pass(checked,
                            "(1,f) is an isomorphism, " +
                                std::to_string(Y.mor_count()) +
                                " points checked");
}

}  // namespace

OracleReport natural_iso_check(const SplitEpiPair& se) {
  RoundTripData rt = splitepi_roundtrip(se);
  return check_q_component(se, rt, nullptr, nullptr);
}

OracleReport natural_iso_check(const ActionSystem& act) {
  FComponent fc = f_component(act);
  return check_f_component(act, fc);
}

OracleReport natural_iso_check(const ReflexiveGraph& rg) {
  PreCrossedModule pxm = reflgraph_to_prex(rg);
  RoundTripData rt = splitepi_roundtrip(rg.se);
  ReflexiveGraph rg2 = graph_of(rt.sd, pxm);
  OracleReport rep = check_q_component(rg.se, rt, &rg.t, &rg2.t);
  if (!rep.ok) return rep;
  // t is reproduced by m.k1.q^-1.
  MorphismMap q = build_q(rg.se);
  const FinCatX& A = rg.se.total;
  for (int a = 0; a < static_cast<int>(A.mor_count()); ++a) {
    const auto& pre = q.dom.elems[(*q.inverse)[a]];
    ++rep.checked;
    if (rg.t[a] != rg.se.base.compose(rg.t[pre[0]], pre[1])) {
      return OracleReport::fail(rep.checked, {a},
                                "t != m.k1.q^-1 at " + A.name(a));
    }
  }
  return rep;
}

OracleReport natural_iso_check(const PreCrossedModule& pxm) {
  validate_precrossed(pxm.action, pxm.kappa);
  FComponent fc = f_component(pxm.action);
  OracleReport rep = check_f_component(pxm.action, fc);
  if (!rep.ok) return rep;
  ReflexiveGraph rg = graph_of(fc.sd, pxm);
  PreCrossedModule pxm2 = reflgraph_to_prex(rg);
  const FinCatX& Y = pxm.action.fiber;
  for (int y = 0; y < static_cast<int>(Y.mor_count()); ++y) {
    ++rep.checked;
    if (pxm2.kappa[fc.f[y]] != pxm.kappa[y]) {
      return OracleReport::fail(rep.checked, {y},
                                "kappa'.f != kappa at " + Y.name(y));
    }
  }
  return rep;
}

OracleReport natural_iso_check(const InternalCat& ic) {
  OracleReport rep = natural_iso_check(ic.rg);
  if (!rep.ok) return rep;
  CrossedModule xm = relcat_to_xmod(ic);
  InternalCat ic2 = xmod_to_relcat(xm);
  RoundTripData rt = splitepi_roundtrip(ic.rg.se);
  for (std::size_t p = 0; p < ic2.comp_pairs.size(); ++p) {
    const auto& e = ic2.comp_pairs.elems[p];
    const int image =
        ic.comp_pairs.find({rt.q.table[e[0]], rt.q.table[e[1]]});
    ++rep.checked;
    if (image == -1 || ic.d[image] != rt.q.table[ic2.d[p]]) {
      return OracleReport::fail(rep.checked, {static_cast<int>(p)},
                                "q does not transport d at pair " +
                                    std::to_string(p));
    }
  }
  rep.note = "(1,q) transports the whole internal category";
  return rep;
}

OracleReport natural_iso_check(const CrossedModule& xm) {
  return natural_iso_check(xm.pre);
}

}  // namespace xmodkit
