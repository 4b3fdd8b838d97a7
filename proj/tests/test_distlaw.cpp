#include "doctest.h"

#include <array>

#include "xmodkit/distlaw.hpp"
#include "xmodkit/oracle.hpp"

using namespace xmodkit;

namespace {

// Independent permutation arithmetic for the S3/A3 fixtures.
using Perm = std::array<int, 3>;

Perm perm_of(const std::string& name) {
  if (name == "(12)") return {1, 0, 2};
  if (name == "(13)") return {2, 1, 0};
  if (name == "(23)") return {0, 2, 1};
  if (name == "(123)") return {1, 2, 0};
  if (name == "(132)") return {2, 0, 1};
  return {0, 1, 2};
}

Perm pmul(const Perm& g, const Perm& f) { return {g[f[0]], g[f[1]], g[f[2]]}; }

Perm pinv(const Perm& p) {
  Perm q{};
  for (int i = 0; i < 3; ++i) q[p[i]] = i;
  return q;
}

int by_perm(const FinCatX& c, const Perm& p) {
  for (int m = 0; m < static_cast<int>(c.mor_count()); ++m) {
    if (perm_of(c.name(m)) == p) return m;
  }
  return -1;
}

}  // namespace

TEST_CASE("trivial action on a bundle over a discrete base validates") {
  FinCatX base = discrete_category(ObjSet{{"0", "1"}});
  FinCatX fiber = oracle::fix_c().pre.action.fiber;
  ActionSystem act = trivial_action(base, fiber);
  for (int y = 0; y < 4; ++y) {
    CHECK(act.apply(base.id_of(fiber.src(y)), y) == y);
  }
}

TEST_CASE("conjugation of S3 on A3 validates and matches the perm oracle") {
  ActionSystem act = oracle::fix_a().pre.action;
  const FinCatX& s3 = act.base;
  const FinCatX& a3 = act.fiber;
  std::size_t entries = 0;
  for (int b = 0; b < 6; ++b) {
    for (int y = 0; y < 3; ++y) {
      ++entries;
      const Perm expected =
          pmul(pmul(perm_of(s3.name(b)), perm_of(a3.name(y))),
               pinv(perm_of(s3.name(b))));
      CHECK(act.apply(b, y) == by_perm(a3, expected));
    }
  }
  CHECK(entries == 18);
}

TEST_CASE("a corrupted conjugation entry fails axiom (iii) with a witness") {
  ActionSystem act = oracle::fix_a().pre.action;
  const FinCatX& s3 = act.base;
  const FinCatX& a3 = act.fiber;
  std::vector<int> table = act.act;
  const int b12 = s3.mor_index("(12)");
  const int y123 = a3.mor_index("(123)");
  table[static_cast<std::size_t>(b12) * 3 + y123] = y123;  // was (132)
  try {
    validate_action(s3, a3, table);
    FAIL("expected an axiom violation");
  } catch (const xmod_error& e) {
    CHECK(e.code() == "AxiomIIIViolation");
    CHECK(e.witness() ==
          std::vector<std::string>{"(12)", "(12)", "(132)"});
  }
}

TEST_CASE("action_to_distlaw has the first-component form") {
  ActionSystem act = oracle::fix_a().pre.action;
  DistLawMap x = action_to_distlaw(act);
  for (std::size_t k = 0; k < x.dom.size(); ++k) {
    CHECK(x.img[k].second == x.dom[k].first);
    CHECK(x.img[k].first == act.apply(x.dom[k].first, x.dom[k].second));
  }
  // b = (12), y = (123): x(b, y) = ((132), (12))
  const int b = act.base.mor_index("(12)");
  const int y = act.fiber.mor_index("(123)");
  for (std::size_t k = 0; k < x.dom.size(); ++k) {
    if (x.dom[k] == std::pair{b, y}) {
      CHECK(x.img[k] ==
            std::pair{act.fiber.mor_index("(132)"), b});
    }
  }
}

TEST_CASE("FIX-C transport moves fiber elements along the unique iso") {
  ActionSystem act = oracle::fix_c().pre.action;
  const int b01 = act.base.mor_index("b01");
  const int g0 = act.fiber.mor_index("g0");
  CHECK(act.apply(b01, g0) == act.fiber.mor_index("g1"));
  CHECK(act.apply(b01, act.fiber.mor_index("id0")) ==
        act.fiber.mor_index("id1"));
}

TEST_CASE("distlaw_to_action inverts action_to_distlaw") {
  for (const ActionSystem& act :
       {oracle::fix_a().pre.action, oracle::fix_b().pre.action,
        oracle::fix_c().pre.action}) {
    ActionSystem back = distlaw_to_action(action_to_distlaw(act));
    CHECK(back == act);
  }
}

TEST_CASE("a law whose second component moves b is rejected") {
  DistLawMap x = action_to_distlaw(oracle::fix_a().pre.action);
  // swap the acting element on one entry to a parallel morphism
  const int b12 = x.base.mor_index("(12)");
  const int b13 = x.base.mor_index("(13)");
  for (std::size_t k = 0; k < x.dom.size(); ++k) {
    if (x.dom[k].first == b12) {
      x.img[k].second = b13;
      break;
    }
  }
  CHECK_THROWS_WITH_AS(distlaw_to_action(x),
                       doctest::Contains("NotFirstComponentForm"), xmod_error);
}

TEST_CASE("distributive law equations hold on all fixtures") {
  for (const ActionSystem& act :
       {oracle::fix_a().pre.action, oracle::fix_b().pre.action,
        oracle::fix_c().pre.action, oracle::fix_e().action}) {
    OracleReport rep = check_distlaw_equations(action_to_distlaw(act));
    CHECK(rep.ok);
    CHECK(rep.checked > 0);
  }
}

TEST_CASE("semidirect product by a trivial base is the fiber") {
  FinCatX base = oracle::trivial_group();
  FinCatX fiber = oracle::alternating_group_a3();
  SemidirectProduct sd = semidirect_product(trivial_action(base, fiber));
  REQUIRE(sd.pair.total.mor_count() == fiber.mor_count());
  for (int y = 0; y < 3; ++y) {
    for (int y2 = 0; y2 < 3; ++y2) {
      const int lhs = sd.pair.total.compose(sd.fiber_embed[y],
                                            sd.fiber_embed[y2]);
      CHECK(lhs == sd.fiber_embed[fiber.compose(y, y2)]);
    }
  }
}

TEST_CASE("FIX-A semidirect product is A3 x| S3 with the stated multiplication") {
  ActionSystem act = oracle::fix_a().pre.action;
  SemidirectProduct sd = semidirect_product(act);
  const FinCatX& a = sd.pair.total;
  REQUIRE(a.mor_count() == 18);
  // (y,b).(y',b') = (y.(b |> y'), b.b') against permutation arithmetic
  for (int p = 0; p < 18; ++p) {
    for (int r = 0; r < 18; ++r) {
      const auto [y, b] = sd.carrier[p];
      const auto [y2, b2] = sd.carrier[r];
      const Perm pb = perm_of(act.base.name(b));
      const Perm conj = pmul(pmul(pb, perm_of(act.fiber.name(y2))), pinv(pb));
      const int yy =
          by_perm(act.fiber, pmul(perm_of(act.fiber.name(y)), conj));
      const int bb = by_perm(act.base, pmul(pb, perm_of(act.base.name(b2))));
      CHECK(a.compose(p, r) == sd.pair_index(yy, bb));
    }
  }
}

TEST_CASE("FIX-C semidirect product has 8 morphisms over two objects") {
  SemidirectProduct sd = semidirect_product(oracle::fix_c().pre.action);
  CHECK(sd.pair.total.mor_count() == 8);
  CHECK(sd.pair.total.objects().size() == 2);
}

TEST_CASE("s.i = id and the fibers of s over identities form the kernel") {
  for (const ActionSystem& act :
       {oracle::fix_a().pre.action, oracle::fix_c().pre.action}) {
    SemidirectProduct sd = semidirect_product(act);
    for (int b = 0; b < static_cast<int>(act.base.mor_count()); ++b) {
      CHECK(sd.pair.s[sd.pair.i[b]] == b);
    }
    std::vector<int> kernel;
    for (int p = 0; p < static_cast<int>(sd.pair.total.mor_count()); ++p) {
      if (act.base.is_identity(sd.pair.s[p])) kernel.push_back(p);
    }
    std::vector<int> embedded = sd.fiber_embed;
    std::sort(embedded.begin(), embedded.end());
    CHECK(kernel == embedded);
  }
}

TEST_CASE("action validation rejects non-bundles and mismatched object sets") {
  FinCatX b = oracle::fix_c().pre.action.base;
  std::vector<int> empty_table(b.mor_count() * b.mor_count(), -1);
  CHECK_THROWS_WITH_AS(validate_action(b, b, empty_table),
                       doctest::Contains("NotABundle"), xmod_error);

  FinCatX z2 = oracle::cyclic_group_z2();
  std::vector<int> table(b.mor_count() * z2.mor_count(), -1);
  CHECK_THROWS_WITH_AS(validate_action(b, z2, table),
                       doctest::Contains("MismatchedObjSet"), xmod_error);
}
