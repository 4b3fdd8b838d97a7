#include "doctest.h"

#include "xmodkit/fincat.hpp"
#include "xmodkit/oracle.hpp"

using namespace xmodkit;

namespace {

RawCategoryData fix_d_raw() {
  RawCategoryData raw;
  raw.objects.labels = {"*"};
  raw.mor_names = {"1", "a", "g"};
  raw.src = {0, 0, 0};
  raw.tgt = {0, 0, 0};
  raw.id_of = {0};
  raw.compose = {{0, 0, 0}, {0, 1, 1}, {0, 2, 2}, {1, 0, 1}, {1, 1, 1},
                 {1, 2, 1}, {2, 0, 2}, {2, 1, 1}, {2, 2, 0}};
  return raw;
}

}  // namespace

TEST_CASE("discrete category on three objects is valid") {
  FinCatX d = discrete_category(ObjSet{{"x", "y", "z"}});
  CHECK(d.mor_count() == 3);
  CHECK(is_bundle(d));
  for (int m = 0; m < 3; ++m) CHECK(d.compose(m, m) == m);
}

TEST_CASE("the FIX-D monoid validates; associativity confirmed by sweep") {
  RawCategoryData raw = fix_d_raw();
  FinCatX c = validate_category(raw);
  CHECK(c.mor_count() == 3);
  // independent triple sweep against the raw triples
  auto mult = [&](int g, int f) {
    for (const auto& [a, b, ab] : raw.compose) {
      if (a == g && b == f) return ab;
    }
    return -1;
  };
  std::size_t triples = 0;
  for (int h = 0; h < 3; ++h) {
    for (int g = 0; g < 3; ++g) {
      for (int f = 0; f < 3; ++f) {
        ++triples;
        CHECK(mult(mult(h, g), f) == mult(h, mult(g, f)));
      }
    }
  }
  CHECK(triples == 27);
}

TEST_CASE("composition defined off the composability domain is rejected") {
  FinCatX b = oracle::fix_c().pre.action.base;
  RawCategoryData raw;
  raw.objects = b.objects();
  raw.mor_names = b.names();
  raw.src = b.src_map();
  raw.tgt = b.tgt_map();
  raw.id_of = {0, 3};
  for (int g = 0; g < 4; ++g) {
    for (int f = 0; f < 4; ++f) {
      if (b.compose(g, f) != -1) raw.compose.push_back({g, f, b.compose(g, f)});
    }
  }
  // b01 : 0 -> 1 and b10 : 1 -> 0; comp(b01, b01) has tgt != src
  raw.compose.push_back({1, 1, 0});
  CHECK_THROWS_WITH_AS(validate_category(raw),
                       doctest::Contains("BadComposabilityDomain"), xmod_error);
}

TEST_CASE("unit and associativity violations carry witnesses") {
  RawCategoryData raw = fix_d_raw();
  raw.compose[3] = {1, 0, 0};  // a.1 = 1 breaks the right unit law
  CHECK_THROWS_WITH_AS(validate_category(raw),
                       doctest::Contains("UnitLawViolation"), xmod_error);

  raw = fix_d_raw();
  raw.compose[5] = {1, 2, 0};  // a.g = 1: units fine, associativity broken
  try {
    validate_category(raw);
    FAIL("expected a violation");
  } catch (const xmod_error& e) {
    CHECK(e.code() == "AssociativityViolation");
    CHECK(e.witness().size() == 3);
  }
}

TEST_CASE("validate_category accepts exactly the law-abiding tables") {
  RawCategoryData raw = fix_d_raw();
  auto lawful = [](const RawCategoryData& r) {
    auto mult = [&](int g, int f) { return r.compose[g * 3 + f][2]; };
    for (int f = 0; f < 3; ++f) {
      if (mult(0, f) != f || mult(f, 0) != f) return false;
    }
    for (int h = 0; h < 3; ++h) {
      for (int g = 0; g < 3; ++g) {
        for (int f = 0; f < 3; ++f) {
          if (mult(mult(h, g), f) != mult(h, mult(g, f))) return false;
        }
      }
    }
    return true;
  };
  std::size_t rejected = 0;
  for (std::size_t cell = 0; cell < raw.compose.size(); ++cell) {
    for (int v = 0; v < 3; ++v) {
      if (v == raw.compose[cell][2]) continue;
      RawCategoryData mutated = raw;
      mutated.compose[cell][2] = v;
      bool accepted = true;
      try {
        validate_category(mutated);
      } catch (const xmod_error&) {
        accepted = false;
        ++rejected;
      }
      CHECK(accepted == lawful(mutated));
    }
  }
  CHECK(rejected > 0);
}

TEST_CASE("identity functor and subgroup inclusion validate") {
  FinCatX s3 = oracle::symmetric_group_s3();
  MorIndexMap id(s3.mor_count());
  for (std::size_t m = 0; m < id.size(); ++m) id[m] = static_cast<int>(m);
  validate_functor(id, s3, s3);

  FinCatX a3 = oracle::alternating_group_a3();
  MorIndexMap incl;
  for (int y = 0; y < 3; ++y) incl.push_back(s3.mor_index(a3.name(y)));
  validate_functor(incl, a3, s3);
}

TEST_CASE("swapping the two 3-cycles of S3 is not a functor") {
  FinCatX s3 = oracle::symmetric_group_s3();
  MorIndexMap swap(s3.mor_count());
  for (int m = 0; m < 6; ++m) swap[m] = m;
  std::swap(swap[s3.mor_index("(123)")], swap[s3.mor_index("(132)")]);
  try {
    validate_functor(swap, s3, s3);
    FAIL("expected CompositionNotPreserved");
  } catch (const xmod_error& e) {
    CHECK(e.code() == "CompositionNotPreserved");
    REQUIRE(e.witness().size() == 2);
    const int g = s3.mor_index(e.witness()[0]);
    const int f = s3.mor_index(e.witness()[1]);
    CHECK(swap[s3.compose(g, f)] != s3.compose(swap[g], swap[f]));
  }
}

TEST_CASE("composite of valid functors validates") {
  FinCatX a3 = oracle::alternating_group_a3();
  FinCatX s3 = oracle::symmetric_group_s3();
  MorIndexMap incl;
  for (int y = 0; y < 3; ++y) incl.push_back(s3.mor_index(a3.name(y)));
  MorIndexMap inner(a3.mor_count());  // inversion is an automorphism of A3
  InverseMap inv = groupoid_inverses(a3);
  for (int y = 0; y < 3; ++y) inner[y] = inv[y];
  validate_functor(inner, a3, a3);
  MorIndexMap comp(a3.mor_count());
  for (int y = 0; y < 3; ++y) comp[y] = incl[inner[y]];
  validate_functor(comp, a3, s3);
}

TEST_CASE("groupoid inverses: discrete, S3, and the FIX-D monoid") {
  FinCatX d = discrete_category(ObjSet{{"x", "y"}});
  InverseMap di = groupoid_inverses(d);
  CHECK(di == InverseMap{0, 1});

  FinCatX s3 = oracle::symmetric_group_s3();
  InverseMap inv = groupoid_inverses(s3);
  for (int f = 0; f < 6; ++f) {
    CHECK(s3.compose(inv[f], f) == s3.id_of(0));
    CHECK(s3.compose(f, inv[f]) == s3.id_of(0));
    CHECK(inv[inv[f]] == f);
  }
  CHECK(inv[s3.mor_index("(123)")] == s3.mor_index("(132)"));

  FinCatX m = validate_category(fix_d_raw());
  try {
    groupoid_inverses(m);
    FAIL("expected NotGroupoid");
  } catch (const xmod_error& e) {
    CHECK(e.code() == "NotGroupoid");
    CHECK(e.witness() == std::vector<std::string>{"a"});
  }
  CHECK_FALSE(is_groupoid(m));
}

TEST_CASE("bundle detection") {
  CHECK(is_bundle(discrete_category(ObjSet{{"x", "y", "z"}})));
  CHECK_FALSE(is_bundle(oracle::fix_c().pre.action.base));
  CHECK(is_bundle(oracle::alternating_group_a3()));
}
