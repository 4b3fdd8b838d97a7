#include "xmodkit/oracle.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <string>

namespace xmodkit::oracle {

namespace {

struct Budget {
  std::size_t limit;
  std::size_t used = 0;

  void spend() {
    if (++used > limit) {
      throw xmod_error("BudgetExceeded",
                       "search budget of " + std::to_string(limit) +
                           " candidate evaluations exhausted");
    }
  }
};

std::string tuple_name(const std::vector<int>& e) {
  std::string s = "(";
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(e[j]);
  }
  return s + ")";
}

int point(const FinCatX& bundle, int y) { return bundle.src(y); }

std::vector<int> fiber_at(const FinCatX& bundle, int x) {
  std::vector<int> ys;
  for (int y = 0; y < static_cast<int>(bundle.mor_count()); ++y) {
    if (point(bundle, y) == x) ys.push_back(y);
  }
  return ys;
}

bool is_fiber_hom(const FinCatX& bundle, const std::vector<int>& dom,
                  const std::vector<int>& img, int from, int to) {
  for (std::size_t j = 0; j < dom.size(); ++j) {
    if (dom[j] == bundle.id_of(from) && img[j] != bundle.id_of(to)) {
      return false;
    }
  }
  for (std::size_t j = 0; j < dom.size(); ++j) {
    for (std::size_t l = 0; l < dom.size(); ++l) {
      const int prod = bundle.compose(dom[j], dom[l]);
      const auto pos = std::find(dom.begin(), dom.end(), prod) - dom.begin();
      if (bundle.compose(img[j], img[l]) !=
          img[static_cast<std::size_t>(pos)]) {
        return false;
      }
    }
  }
  return true;
}

// All unital multiplicative maps between the monoids of a bundle at two
// objects, as image rows aligned with fiber_at(from), in lexicographic
// order.
std::vector<std::vector<int>> fiber_homs(const FinCatX& bundle, int from,
                                         int to, Budget& budget) {
  const std::vector<int> dom = fiber_at(bundle, from);
  const std::vector<int> cod = fiber_at(bundle, to);
  std::vector<std::vector<int>> homs;
  if (dom.empty()) {
    homs.push_back({});
    return homs;
  }
  std::vector<int> img(dom.size());
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == dom.size()) {
      budget.spend();
      if (is_fiber_hom(bundle, dom, img, from, to)) homs.push_back(img);
      return;
    }
    for (int c : cod) {
      img[j] = c;
      self(self, j + 1);
    }
  };
  rec(rec, 0);
  return homs;
}

}  // namespace

MorphismMap brute_force_inverse(const MorphismMap& f) {
  MorphismMap copy = f;
  OracleReport rep = decide_bijective(copy);
  if (!rep.ok) {
    const auto& w = *rep.witness;
    if (rep.note.rfind("NotInjective", 0) == 0) {
      throw xmod_error("NotInjective", rep.note,
                       {tuple_name(f.dom.elems[w[0]]),
                        tuple_name(f.dom.elems[w[1]])});
    }
    throw xmod_error("NotSurjective", rep.note,
                     {tuple_name(f.cod.elems[w[0]])});
  }
  MorphismMap inv;
  inv.dom = f.cod;
  inv.cod = f.dom;
  inv.table = *copy.inverse;
  inv.inverse = f.table;
  return inv;
}

std::vector<ActionSystem> enumerate_actions(const FinCatX& base,
                                            const FinCatX& fiber,
                                            std::size_t budget_limit) {
  if (!(base.objects() == fiber.objects())) {
    throw xmod_error("MismatchedObjSet", "enumeration needs a common object set");
  }
  if (!is_bundle(fiber)) {
    throw xmod_error("NotABundle", "enumeration fiber must be a bundle");
  }
  Budget budget{budget_limit};
  const int nb = static_cast<int>(base.mor_count());
  const int ny = static_cast<int>(fiber.mor_count());

  // Candidate rows per actor: identity actors are forced to the identity
  // map by the unit half of axiom (iii).
  std::vector<std::vector<int>> doms(nb);
  std::vector<std::vector<std::vector<int>>> rows(nb);
  for (int b = 0; b < nb; ++b) {
    doms[b] = fiber_at(fiber, base.src(b));
    if (base.is_identity(b)) {
      rows[b].push_back(doms[b]);
    } else {
      rows[b] = fiber_homs(fiber, base.src(b), base.tgt(b), budget);
    }
  }

  std::vector<ActionSystem> found;
  std::vector<int> choice(nb, -1);
  std::vector<int> table(static_cast<std::size_t>(nb) * ny, -1);
  auto entry = [&](int b, int y) -> int& {
    return table[static_cast<std::size_t>(b) * ny + y];
  };
  auto set_row = [&](int b, const std::vector<int>& img) {
    for (std::size_t j = 0; j < doms[b].size(); ++j) {
      entry(b, doms[b][j]) = img[j];
    }
  };
  // axiom (iii) on all composable pairs whose three actors are assigned
  auto consistent_upto = [&](int upto) {
    for (int b2 = 0; b2 <= upto; ++b2) {
      for (int b1 = 0; b1 <= upto; ++b1) {
        const int b21 = base.compose(b2, b1);
        if (b21 == -1 || b21 > upto) continue;
        for (int y : doms[b1]) {
          budget.spend();
          if (entry(b21, y) != entry(b2, entry(b1, y))) return false;
        }
      }
    }
    return true;
  };
  auto rec = [&](auto&& self, int b) -> void {
    if (b == nb) {
      budget.spend();
      found.push_back(validate_action(base, fiber, table));
      return;
    }
    for (const auto& img : rows[b]) {
      set_row(b, img);
      if (consistent_upto(b)) self(self, b + 1);
    }
    for (int y : doms[b]) entry(b, y) = -1;
  };
  rec(rec, 0);
  return found;
}

std::vector<PreCrossedModule> enumerate_prexmods(const FinCatX& base,
                                                 const FinCatX& fiber,
                                                 std::size_t budget_limit) {
  std::vector<ActionSystem> actions =
      enumerate_actions(base, fiber, budget_limit);
  Budget budget{budget_limit};

  // kappa candidates: identity-on-objects functors Y -> B.
  const int ny = static_cast<int>(fiber.mor_count());
  std::vector<std::vector<int>> kappas;
  std::vector<int> kappa(ny, -1);
  auto rec = [&](auto&& self, int y) -> void {
    if (y == ny) {
      budget.spend();
      try {
        validate_functor(kappa, fiber, base);
      } catch (const xmod_error&) {
        return;
      }
      kappas.push_back(kappa);
      return;
    }
    for (int b = 0; b < static_cast<int>(base.mor_count()); ++b) {
      if (base.src(b) != point(fiber, y) || base.tgt(b) != point(fiber, y)) {
        continue;
      }
      kappa[y] = b;
      self(self, y + 1);
    }
  };
  rec(rec, 0);

  std::vector<PreCrossedModule> found;
  for (const ActionSystem& act : actions) {
    for (const auto& k : kappas) {
      budget.spend();
      try {
        found.push_back(validate_precrossed(act, k));
      } catch (const xmod_error&) {
      }
    }
  }
  return found;
}

std::vector<CrossedModule> enumerate_xmods(const FinCatX& base,
                                           const FinCatX& fiber,
                                           std::size_t budget_limit) {
  std::vector<CrossedModule> found;
  for (const PreCrossedModule& pxm :
       enumerate_prexmods(base, fiber, budget_limit)) {
    if (check_peiffer(pxm).ok) found.push_back(CrossedModule{pxm});
  }
  return found;
}

namespace {

struct DPropagation {
  const FinCatX& A;
  const ElementSet& pairs;
  Budget& budget;

  // -1 unassigned; -2 contradiction sentinel is never stored, a flag is
  // returned instead.
  bool propagate(std::vector<int>& d) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (d[p] == -1) continue;
        const auto& pe = pairs.elems[p];
        for (std::size_t r = 0; r < pairs.size(); ++r) {
          if (d[r] == -1) continue;
          const auto& re = pairs.elems[r];
          const int c1 = A.compose(pe[0], re[0]);
          const int c2 = A.compose(pe[1], re[1]);
          if (c1 == -1 || c2 == -1) continue;
          budget.spend();
          const int cell = pairs.find({c1, c2});
          const int v = A.compose(d[p], d[r]);
          if (d[cell] == -1) {
            d[cell] = v;
            changed = true;
          } else if (d[cell] != v) {
            return false;
          }
        }
      }
    }
    return true;
  }

  // Counts solutions up to the cap, branching on unassigned cells.
  int count(std::vector<int> d, int cap,
            std::optional<std::vector<int>>* solution) const {
    if (!propagate(d)) return 0;
    const auto unassigned = std::find(d.begin(), d.end(), -1);
    if (unassigned == d.end()) {
      if (solution) *solution = d;
      return 1;
    }
    const std::size_t cell =
        static_cast<std::size_t>(unassigned - d.begin());
    const auto& e = pairs.elems[cell];
    int total = 0;
    for (int v = 0; v < static_cast<int>(A.mor_count()); ++v) {
      if (A.src(v) != A.src(e[1]) || A.tgt(v) != A.tgt(e[0])) continue;
      budget.spend();
      std::vector<int> next = d;
      next[cell] = v;
      total += count(std::move(next), cap - total, solution);
      if (total >= cap) return total;
    }
    return total;
  }
};

}  // namespace

DSearchResult solve_d_by_search(const ReflexiveGraph& rg,
                                std::size_t budget_limit) {
  Budget budget{budget_limit};
  const FinCatX& A = rg.se.total;
  ElementSet pairs = build_iterated(IteratedKind::qn, rg, 2).cod;
  std::vector<int> d(pairs.size(), -1);

  // Seed with the two unit laws.
  for (int a = 0; a < static_cast<int>(A.mor_count()); ++a) {
    const int right = pairs.find({a, rg.se.i[rg.se.s[a]]});
    const int left = pairs.find({rg.se.i[rg.t[a]], a});
    for (int cell : {right, left}) {
      if (d[cell] != -1 && d[cell] != a) {
        return {0, std::nullopt, budget.used};
      }
      d[cell] = a;
    }
  }

  DSearchResult out;
  std::optional<std::vector<int>> solution;
  DPropagation prop{A, pairs, budget};
  out.solutions = prop.count(std::move(d), 2, &solution);
  if (out.solutions == 1) out.d = std::move(solution);
  out.steps = budget.used;
  return out;
}

FinCatX generic_distlaw_multiplication(const DistLawMap& xl) {
  const FinCatX& B = xl.base;
  const FinCatX& Y = xl.fiber;
  std::vector<int> x1(B.mor_count() * Y.mor_count(), -1);
  std::vector<int> x2(B.mor_count() * Y.mor_count(), -1);
  for (std::size_t k = 0; k < xl.dom.size(); ++k) {
    const auto idx =
        static_cast<std::size_t>(xl.dom[k].first) * Y.mor_count() +
        xl.dom[k].second;
    x1[idx] = xl.img[k].first;
    x2[idx] = xl.img[k].second;
  }
  auto law = [&](int b, int y) {
    const auto idx = static_cast<std::size_t>(b) * Y.mor_count() + y;
    return std::pair{x1[idx], x2[idx]};
  };

  std::vector<std::pair<int, int>> carrier;
  for (int y = 0; y < static_cast<int>(Y.mor_count()); ++y) {
    for (int b = 0; b < static_cast<int>(B.mor_count()); ++b) {
      if (point(Y, y) == B.tgt(b)) carrier.emplace_back(y, b);
    }
  }
  auto index = [&](int y, int b) {
    auto it = std::lower_bound(carrier.begin(), carrier.end(),
                               std::pair{y, b});
    return it != carrier.end() && *it == std::pair{y, b}
               ? static_cast<int>(it - carrier.begin())
               : -1;
  };

  RawCategoryData raw;
  raw.objects = B.objects();
  for (const auto& [y, b] : carrier) {
    raw.mor_names.push_back("(" + Y.name(y) + "," + B.name(b) + ")");
    raw.src.push_back(B.src(b));
    raw.tgt.push_back(B.tgt(b));
  }
  for (std::size_t x = 0; x < B.objects().size(); ++x) {
    const int xi = static_cast<int>(x);
    raw.id_of.push_back(index(Y.id_of(xi), B.id_of(xi)));
  }
  const int n = static_cast<int>(carrier.size());
  for (int p = 0; p < n; ++p) {
    const auto [y, b] = carrier[p];
    for (int r = 0; r < n; ++r) {
      const auto [y2, b2] = carrier[r];
      if (B.src(b) != B.tgt(b2)) continue;
      const auto [my, mb] = law(b, y2);
      raw.compose.push_back(
          {p, r, index(Y.compose(y, my), B.compose(mb, b2))});
    }
  }
  return validate_category(raw);
}

std::vector<FinCatX> enumerate_monoids(int size, std::size_t budget_limit) {
  if (size < 1 || size > 4) {
    throw xmod_error("UnsupportedN", "monoid enumeration covers sizes 1..4");
  }
  Budget budget{budget_limit};
  const int n = size;
  std::vector<std::vector<int>> tables;

  std::vector<int> t(static_cast<std::size_t>(n) * n, -1);
  auto cell = [&](int i, int j) -> int& {
    return t[static_cast<std::size_t>(i) * n + j];
  };
  for (int j = 0; j < n; ++j) {
    cell(0, j) = j;
    cell(j, 0) = j;
  }
  auto assoc_ok = [&]() {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          const int ij = cell(i, j);
          const int jk = cell(j, k);
          if (ij == -1 || jk == -1) continue;
          const int a = cell(ij, k);
          const int b = cell(i, jk);
          if (a != -1 && b != -1 && a != b) return false;
        }
      }
    }
    return true;
  };
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == (n - 1) * (n - 1)) {
      budget.spend();
      tables.push_back(t);
      return;
    }
    const int i = 1 + pos / (n - 1);
    const int j = 1 + pos % (n - 1);
    for (int v = 0; v < n; ++v) {
      budget.spend();
      cell(i, j) = v;
      if (assoc_ok()) self(self, pos + 1);
    }
    cell(i, j) = -1;
  };
  if (n >= 1) rec(rec, 0);

  // Keep one table per isomorphism class: the lexicographically least
  // relabeling with the identity pinned at 0.
  std::vector<int> perm(n);
  std::vector<std::vector<int>> canon;
  for (const auto& table : tables) {
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best = table;
    std::vector<int> relabeled(table.size());
    std::vector<int> inv(n);
    do {
      for (int i = 0; i < n; ++i) inv[perm[i]] = i;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          relabeled[static_cast<std::size_t>(inv[i]) * n + inv[j]] =
              inv[table[static_cast<std::size_t>(i) * n + j]];
        }
      }
      if (relabeled < best) best = relabeled;
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    if (best == table) canon.push_back(table);
  }

  std::vector<FinCatX> out;
  const std::array<const char*, 4> letters{"1", "a", "b", "c"};
  for (const auto& table : canon) {
    RawCategoryData raw;
    raw.objects.labels = {"*"};
    for (int i = 0; i < n; ++i) {
      raw.mor_names.push_back(letters[static_cast<std::size_t>(i)]);
      raw.src.push_back(0);
      raw.tgt.push_back(0);
    }
    raw.id_of = {0};
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        raw.compose.push_back(
            {i, j, table[static_cast<std::size_t>(i) * n + j]});
      }
    }
    out.push_back(validate_category(raw));
  }
  return out;
}

namespace {

using Perm = std::array<int, 3>;

Perm pcompose(const Perm& g, const Perm& f) {
  return {g[f[0]], g[f[1]], g[f[2]]};
}

// One-object group from permutations, reordered by name so that in-memory
// ids match the canonical (name-sorted) file order.
FinCatX perm_group(std::vector<std::pair<std::string, Perm>> elems) {
  std::sort(elems.begin(), elems.end());
  RawCategoryData raw;
  raw.objects.labels = {"*"};
  int unit = -1;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    raw.mor_names.push_back(elems[i].first);
    raw.src.push_back(0);
    raw.tgt.push_back(0);
    if (elems[i].second == Perm{0, 1, 2}) unit = static_cast<int>(i);
  }
  raw.id_of = {unit};
  auto find = [&](const Perm& p) {
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (elems[i].second == p) return static_cast<int>(i);
    }
    return -1;
  };
  for (std::size_t g = 0; g < elems.size(); ++g) {
    for (std::size_t f = 0; f < elems.size(); ++f) {
      raw.compose.push_back({static_cast<int>(g), static_cast<int>(f),
                             find(pcompose(elems[g].second, elems[f].second))});
    }
  }
  return validate_category(raw);
}

const Perm kId{0, 1, 2};
const Perm kT12{1, 0, 2};
const Perm kT13{2, 1, 0};
const Perm kT23{0, 2, 1};
const Perm kC123{1, 2, 0};  // 1 -> 2 -> 3 -> 1
const Perm kC132{2, 0, 1};

}  // namespace

FinCatX trivial_group() {
  return perm_group({{"1", kId}});
}

FinCatX cyclic_group_z2() {
  return perm_group({{"1", kId}, {"g", kT12}});
}

FinCatX alternating_group_a3() {
  return perm_group({{"e", kId}, {"(123)", kC123}, {"(132)", kC132}});
}

FinCatX symmetric_group_s3() {
  return perm_group({{"e", kId},
                     {"(12)", kT12},
                     {"(13)", kT13},
                     {"(23)", kT23},
                     {"(123)", kC123},
                     {"(132)", kC132}});
}

namespace {

// Conjugation b |> y = b.y.b^-1 computed on the permutations behind the
// morphism names.
std::vector<int> conjugation_table(const FinCatX& base, const FinCatX& fiber) {
  auto perm_of = [](const FinCatX& c, int m) -> Perm {
    const std::string& name = c.name(m);
    if (name == "(12)") return kT12;
    if (name == "(13)") return kT13;
    if (name == "(23)") return kT23;
    if (name == "(123)") return kC123;
    if (name == "(132)") return kC132;
    return kId;
  };
  auto pinv = [](const Perm& p) {
    Perm q{};
    for (int i = 0; i < 3; ++i) q[p[i]] = i;
    return q;
  };
  std::vector<int> table(base.mor_count() * fiber.mor_count(), -1);
  for (int b = 0; b < static_cast<int>(base.mor_count()); ++b) {
    for (int y = 0; y < static_cast<int>(fiber.mor_count()); ++y) {
      const Perm conj = pcompose(
          pcompose(perm_of(base, b), perm_of(fiber, y)), pinv(perm_of(base, b)));
      for (int y2 = 0; y2 < static_cast<int>(fiber.mor_count()); ++y2) {
        if (perm_of(fiber, y2) == conj) {
          table[static_cast<std::size_t>(b) * fiber.mor_count() + y] = y2;
        }
      }
    }
  }
  return table;
}

}  // namespace

CrossedModule fix_a() {
  FinCatX base = symmetric_group_s3();
  FinCatX fiber = alternating_group_a3();
  ActionSystem act =
      validate_action(base, fiber, conjugation_table(base, fiber));
  MorIndexMap kappa;
  for (int y = 0; y < static_cast<int>(fiber.mor_count()); ++y) {
    kappa.push_back(base.mor_index(fiber.name(y)));
  }
  return validate_xmod(validate_precrossed(act, kappa));
}

CrossedModule fix_b() {
  FinCatX base = cyclic_group_z2();
  FinCatX fiber = cyclic_group_z2();
  ActionSystem act = trivial_action(base, fiber);
  MorIndexMap kappa{0, 1};
  return validate_xmod(validate_precrossed(act, kappa));
}

CrossedModule fix_c() {
  ObjSet objects{{"0", "1"}};
  RawCategoryData braw;
  braw.objects = objects;
  braw.mor_names = {"b00", "b01", "b10", "b11"};
  braw.src = {0, 0, 1, 1};
  braw.tgt = {0, 1, 0, 1};
  braw.id_of = {0, 3};
  auto bmor = [&](int from, int to) {
    return from == 0 ? (to == 0 ? 0 : 1) : (to == 0 ? 2 : 3);
  };
  for (int f0 = 0; f0 < 2; ++f0) {
    for (int f1 = 0; f1 < 2; ++f1) {
      for (int g1 = 0; g1 < 2; ++g1) {
        braw.compose.push_back({bmor(f1, g1), bmor(f0, f1), bmor(f0, g1)});
      }
    }
  }
  FinCatX base = validate_category(braw);

  RawCategoryData yraw;
  yraw.objects = objects;
  yraw.mor_names = {"g0", "g1", "id0", "id1"};
  yraw.src = {0, 1, 0, 1};
  yraw.tgt = {0, 1, 0, 1};
  yraw.id_of = {2, 3};
  yraw.compose = {{0, 0, 2}, {0, 2, 0}, {2, 0, 0}, {2, 2, 2},
                  {1, 1, 3}, {1, 3, 1}, {3, 1, 1}, {3, 3, 3}};
  FinCatX fiber = validate_category(yraw);

  // transport: the unique fiber isomorphism over each base morphism
  std::vector<int> table(base.mor_count() * fiber.mor_count(), -1);
  for (int b = 0; b < 4; ++b) {
    for (int y = 0; y < 4; ++y) {
      if (fiber.src(y) != base.src(b)) continue;
      const bool flip = fiber.name(y)[0] == 'g';
      const int to = base.tgt(b);
      table[static_cast<std::size_t>(b) * 4 + y] =
          flip ? (to == 0 ? 0 : 1) : (to == 0 ? 2 : 3);
    }
  }
  ActionSystem act = validate_action(base, fiber, std::move(table));
  MorIndexMap kappa{0, 3, 0, 3};  // everything to the identity at its object
  return validate_xmod(validate_precrossed(act, kappa));
}

SplitEpiPair fix_d() {
  RawCategoryData raw;
  raw.objects.labels = {"*"};
  raw.mor_names = {"1", "a", "g"};
  raw.src = {0, 0, 0};
  raw.tgt = {0, 0, 0};
  raw.id_of = {0};
  // the multiplicative monoid {1, 0, -1} with a = 0, g = -1
  raw.compose = {{0, 0, 0}, {0, 1, 1}, {0, 2, 2}, {1, 0, 1}, {1, 1, 1},
                 {1, 2, 1}, {2, 0, 2}, {2, 1, 1}, {2, 2, 0}};
  SplitEpiPair se;
  se.total = validate_category(raw);
  se.base = cyclic_group_z2();
  se.i = {se.total.mor_index("1"), se.total.mor_index("g")};
  se.s = {0, 0, 1};  // 1 -> 1, a -> 1, g -> g
  splitepi_basic_checks(se);
  return se;
}

PreCrossedModule fix_e() {
  FinCatX base = trivial_group();
  FinCatX fiber = symmetric_group_s3();
  ActionSystem act = trivial_action(base, fiber);
  MorIndexMap kappa(fiber.mor_count(), 0);
  return validate_precrossed(act, kappa);
}

}  // namespace xmodkit::oracle
