#include "xmodkit/distlaw.hpp"

#include <algorithm>

namespace xmodkit {

namespace {

// Bundle morphisms sit at a single object.
int point(const FinCatX& bundle, int y) { return bundle.src(y); }

}  // namespace

ActionSystem validate_action(const FinCatX& base, const FinCatX& fiber,
                             std::vector<int> table) {
  if (!(base.objects() == fiber.objects())) {
    throw xmod_error("MismatchedObjSet",
                     "action needs base and fiber over the same object set");
  }
  if (!is_bundle(fiber)) {
    throw xmod_error("NotABundle", "action fiber must have src = tgt");
  }
  const int nb = static_cast<int>(base.mor_count());
  const int ny = static_cast<int>(fiber.mor_count());
  if (table.size() != static_cast<std::size_t>(nb) * ny) {
    throw xmod_error("BadActionDomain", "action table has wrong size");
  }
  auto cell = [&](int b, int y) -> int& {
    return table[static_cast<std::size_t>(b) * ny + y];
  };

  for (int b = 0; b < nb; ++b) {
    for (int y = 0; y < ny; ++y) {
      const bool composable = base.src(b) == point(fiber, y);
      if (composable && (cell(b, y) < 0 || cell(b, y) >= ny)) {
        throw xmod_error("BadActionDomain", "missing entry on composable pair",
                         {base.name(b), fiber.name(y)});
      }
      if (!composable && cell(b, y) != -1) {
        throw xmod_error("BadActionDomain",
                         "entry on non-composable pair",
                         {base.name(b), fiber.name(y)});
      }
    }
  }

  // (i) the result sits at tgt(b)
  for (int b = 0; b < nb; ++b) {
    for (int y = 0; y < ny; ++y) {
      if (cell(b, y) == -1) continue;
      if (point(fiber, cell(b, y)) != base.tgt(b)) {
        throw xmod_error("AxiomIViolation", "tgt(b |> y) != tgt(b)",
                         {base.name(b), fiber.name(y)});
      }
    }
  }

  // (iii) associativity over the actor, then unitality of identity actors.
  // Checked before (ii) so that pointwise corruptions of a valid table
  // surface as actor-level failures with a (b', b, y) witness.
  for (int b2 = 0; b2 < nb; ++b2) {
    for (int b1 = 0; b1 < nb; ++b1) {
      const int b21 = base.compose(b2, b1);
      if (b21 == -1) continue;
      for (int y = 0; y < ny; ++y) {
        if (cell(b1, y) == -1) continue;
        if (cell(b21, y) != cell(b2, cell(b1, y))) {
          throw xmod_error("AxiomIIIViolation",
                           "(b'.b) |> y != b' |> (b |> y)",
                           {base.name(b2), base.name(b1), fiber.name(y)});
        }
      }
    }
  }
  for (int y = 0; y < ny; ++y) {
    const int e = base.id_of(point(fiber, y));
    if (cell(e, y) != y) {
      throw xmod_error("AxiomIIIViolation", "1 |> y != y", {fiber.name(y)});
    }
  }

  // (ii) each actor is multiplicative and unital on its fiber.
  for (int b = 0; b < nb; ++b) {
    for (int y2 = 0; y2 < ny; ++y2) {
      if (cell(b, y2) == -1) continue;
      for (int y1 = 0; y1 < ny; ++y1) {
        const int y21 = fiber.compose(y2, y1);
        if (y21 == -1) continue;
        if (cell(b, y21) == -1) continue;
        if (cell(b, y21) != fiber.compose(cell(b, y2), cell(b, y1))) {
          throw xmod_error("AxiomIIViolation",
                           "b |> (y.y') != (b |> y).(b |> y')",
                           {base.name(b), fiber.name(y2), fiber.name(y1)});
        }
      }
    }
    const int e = fiber.id_of(base.src(b));
    if (cell(b, e) != fiber.id_of(base.tgt(b))) {
      throw xmod_error("AxiomIIViolation", "b |> 1 != 1", {base.name(b)});
    }
  }

  ActionSystem out;
  out.base = base;
  out.fiber = fiber;
  out.act = std::move(table);
  return out;
}

ActionSystem trivial_action(const FinCatX& base, const FinCatX& fiber) {
  const int nb = static_cast<int>(base.mor_count());
  const int ny = static_cast<int>(fiber.mor_count());
  std::vector<int> table(static_cast<std::size_t>(nb) * ny, -1);
  for (int b = 0; b < nb; ++b) {
    for (int y = 0; y < ny; ++y) {
      if (base.src(b) == point(fiber, y) && base.src(b) == base.tgt(b)) {
        table[static_cast<std::size_t>(b) * ny + y] = y;
      }
    }
  }
  return validate_action(base, fiber, std::move(table));
}

DistLawMap action_to_distlaw(const ActionSystem& act) {
  DistLawMap x;
  x.base = act.base;
  x.fiber = act.fiber;
  const int nb = static_cast<int>(act.base.mor_count());
  const int ny = static_cast<int>(act.fiber.mor_count());
  for (int b = 0; b < nb; ++b) {
    for (int y = 0; y < ny; ++y) {
      const int r = act.apply(b, y);
      if (r == -1) continue;
      x.dom.emplace_back(b, y);
      x.img.emplace_back(r, b);
    }
  }
  return x;
}

ActionSystem distlaw_to_action(const DistLawMap& x) {
  const int nb = static_cast<int>(x.base.mor_count());
  const int ny = static_cast<int>(x.fiber.mor_count());
  std::vector<int> table(static_cast<std::size_t>(nb) * ny, -1);
  for (std::size_t k = 0; k < x.dom.size(); ++k) {
    const auto [b, y] = x.dom[k];
    const auto [y2, b2] = x.img[k];
    if (b2 != b) {
      throw xmod_error("NotFirstComponentForm",
                       "(e[]1).x = 1[]e forces x(b,y) = (b |> y, b)",
                       {x.base.name(b), x.fiber.name(y)});
    }
    table[static_cast<std::size_t>(b) * ny + y] = y2;
  }
  return validate_action(x.base, x.fiber, std::move(table));
}

OracleReport check_distlaw_equations(const DistLawMap& xl) {
  const FinCatX& B = xl.base;
  const FinCatX& Y = xl.fiber;
  std::vector<int> first(B.mor_count() * Y.mor_count(), -1);
  std::vector<int> second(B.mor_count() * Y.mor_count(), -1);
  for (std::size_t k = 0; k < xl.dom.size(); ++k) {
    const auto idx =
        static_cast<std::size_t>(xl.dom[k].first) * Y.mor_count() +
        xl.dom[k].second;
    first[idx] = xl.img[k].first;
    second[idx] = xl.img[k].second;
  }
  auto x1 = [&](int b, int y) {
    return first[static_cast<std::size_t>(b) * Y.mor_count() + y];
  };
  auto x2 = [&](int b, int y) {
    return second[static_cast<std::size_t>(b) * Y.mor_count() + y];
  };

  std::size_t checked = 0;
  // x.u1 = 1u : x(1, y) = (y, 1)
  for (int y = 0; y < static_cast<int>(Y.mor_count()); ++y) {
    const int e = B.id_of(Y.src(y));
    ++checked;
    if (x1(e, y) != y || x2(e, y) != e) {
      return OracleReport::fail(checked, {e, y},
                                "x(1," + Y.name(y) + ") != (" + Y.name(y) +
                                    ",1)");
    }
  }
  // x.1u = u1 : x(b, 1) = (1, b)
  for (int b = 0; b < static_cast<int>(B.mor_count()); ++b) {
    const int e = Y.id_of(B.src(b));
    ++checked;
    if (x1(b, e) != Y.id_of(B.tgt(b)) || x2(b, e) != b) {
      return OracleReport::fail(checked, {b, e},
                                "x(" + B.name(b) + ",1) != (1," + B.name(b) +
                                    ")");
    }
  }
  // x.m1 = 1m.x1.1x : compatibility with the multiplication of B
  for (int b2 = 0; b2 < static_cast<int>(B.mor_count()); ++b2) {
    for (int b1 = 0; b1 < static_cast<int>(B.mor_count()); ++b1) {
      const int b21 = B.compose(b2, b1);
      if (b21 == -1) continue;
      for (int y = 0; y < static_cast<int>(Y.mor_count()); ++y) {
        if (x1(b1, y) == -1) continue;
        ++checked;
        const int inner = x1(b1, y);
        const bool ok = x1(b21, y) == x1(b2, inner) &&
                        B.compose(x2(b2, inner), x2(b1, y)) == x2(b21, y);
        if (!ok) {
          return OracleReport::fail(
              checked, {b2, b1, y},
              "x incompatible with m_B at (" + B.name(b2) + "," + B.name(b1) +
                  "," + Y.name(y) + ")");
        }
      }
    }
  }
  // x.1m = m1.1x.x1 : compatibility with the multiplication of Y
  for (int b = 0; b < static_cast<int>(B.mor_count()); ++b) {
    for (int y2 = 0; y2 < static_cast<int>(Y.mor_count()); ++y2) {
      if (x1(b, y2) == -1) continue;
      for (int y1 = 0; y1 < static_cast<int>(Y.mor_count()); ++y1) {
        const int y21 = Y.compose(y2, y1);
        if (y21 == -1 || x1(b, y21) == -1) continue;
        ++checked;
        const int mid = x2(b, y2);
        if (x1(mid, y1) == -1) {
          return OracleReport::fail(checked, {b, y2, y1},
                                    "x undefined on a required pair");
        }
        const bool ok =
            Y.compose(x1(b, y2), x1(mid, y1)) == x1(b, y21) &&
            x2(mid, y1) == x2(b, y21);
        if (!ok) {
          return OracleReport::fail(
              checked, {b, y2, y1},
              "x incompatible with m_Y at (" + B.name(b) + "," + Y.name(y2) +
                  "," + Y.name(y1) + ")");
        }
      }
    }
  }
  return OracleReport::pass(checked, "distributive law equations hold");
}

void splitepi_basic_checks(const SplitEpiPair& se) {
  if (!(se.total.objects() == se.base.objects())) {
    throw xmod_error("MismatchedObjSet",
                     "split epi needs a common object set");
  }
  if (se.i.size() != se.base.mor_count() ||
      se.s.size() != se.total.mor_count()) {
    throw xmod_error("BadStructureMap", "i and s must be total");
  }
  // i is a full identity-on-objects functor.
  validate_functor(se.i, se.base, se.total);
  // s preserves the graph structure; multiplicativity is checked by
  // validate_splitepi after q.
  for (int a = 0; a < static_cast<int>(se.total.mor_count()); ++a) {
    const int b = se.s[a];
    if (b < 0 || b >= static_cast<int>(se.base.mor_count())) {
      throw xmod_error("BadStructureMap", "s image out of range",
                       {se.total.name(a)});
    }
    if (se.base.src(b) != se.total.src(a) ||
        se.base.tgt(b) != se.total.tgt(a)) {
      throw xmod_error("SrcTgtNotPreserved", "s moves src or tgt",
                       {se.total.name(a)});
    }
  }
  for (std::size_t x = 0; x < se.total.objects().size(); ++x) {
    if (se.s[se.total.id_of(static_cast<int>(x))] !=
        se.base.id_of(static_cast<int>(x))) {
      throw xmod_error("IdentityNotPreserved",
                       "s does not preserve identities",
                       {se.total.objects().labels[x]});
    }
  }
  for (int b = 0; b < static_cast<int>(se.base.mor_count()); ++b) {
    if (se.s[se.i[b]] != b) {
      throw xmod_error("SectionLawViolation", "s.i != id", {se.base.name(b)});
    }
  }
}

int SemidirectProduct::pair_index(int y, int b) const {
  auto it = std::lower_bound(carrier.begin(), carrier.end(), std::pair{y, b});
  if (it == carrier.end() || *it != std::pair{y, b}) return -1;
  return static_cast<int>(it - carrier.begin());
}

SemidirectProduct semidirect_product(const ActionSystem& act) {
  const FinCatX& B = act.base;
  const FinCatX& Y = act.fiber;
  SemidirectProduct out;
  for (int y = 0; y < static_cast<int>(Y.mor_count()); ++y) {
    for (int b = 0; b < static_cast<int>(B.mor_count()); ++b) {
      if (point(Y, y) == B.tgt(b)) out.carrier.emplace_back(y, b);
    }
  }
  const int n = static_cast<int>(out.carrier.size());

  RawCategoryData raw;
  raw.objects = B.objects();
  for (const auto& [y, b] : out.carrier) {
    raw.mor_names.push_back("(" + Y.name(y) + "," + B.name(b) + ")");
    raw.src.push_back(B.src(b));
    raw.tgt.push_back(B.tgt(b));
  }
  for (std::size_t x = 0; x < B.objects().size(); ++x) {
    const int xi = static_cast<int>(x);
    auto it = std::lower_bound(out.carrier.begin(), out.carrier.end(),
                               std::pair{Y.id_of(xi), B.id_of(xi)});
    raw.id_of.push_back(static_cast<int>(it - out.carrier.begin()));
  }
  for (int p = 0; p < n; ++p) {
    const auto [y, b] = out.carrier[p];
    for (int r = 0; r < n; ++r) {
      const auto [y2, b2] = out.carrier[r];
      if (B.src(b) != B.tgt(b2)) continue;  // tgt(r) != src(p)
      const int moved = act.apply(b, y2);
      const int yy = moved == -1 ? -1 : Y.compose(y, moved);
      const int bb = B.compose(b, b2);
      const int q = out.pair_index(yy, bb);
      if (moved == -1 || yy == -1 || bb == -1 || q == -1) {
        throw xmod_error("BadActionDomain",
                         "semidirect composite fell outside the carrier",
                         {raw.mor_names[p], raw.mor_names[r]});
      }
      raw.compose.push_back({p, r, q});
    }
  }
  SplitEpiPair pair;
  pair.total = validate_category(raw);
  pair.base = B;
  for (int b = 0; b < static_cast<int>(B.mor_count()); ++b) {
    pair.i.push_back(out.pair_index(Y.id_of(B.tgt(b)), b));
  }
  for (const auto& [y, b] : out.carrier) {
    (void)y;
    pair.s.push_back(b);
  }
  out.pair = std::move(pair);
  for (int y = 0; y < static_cast<int>(Y.mor_count()); ++y) {
    out.fiber_embed.push_back(out.pair_index(y, B.id_of(point(Y, y))));
  }
  splitepi_basic_checks(out.pair);
  return out;
}

}  // namespace xmodkit
