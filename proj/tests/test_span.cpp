#include "doctest.h"

#include "xmodkit/oracle.hpp"
#include "xmodkit/span.hpp"

using namespace xmodkit;

namespace {

// Universal property oracle: every cone (alpha, gamma) with f.alpha =
// g.gamma factors uniquely through the pullback.
bool satisfies_universal_property(const PullbackResult& pb,
                                  const std::vector<int>& f,
                                  const std::vector<int>& g,
                                  const std::vector<int>& alpha,
                                  const std::vector<int>& gamma) {
  for (std::size_t t = 0; t < alpha.size(); ++t) {
    if (f[alpha[t]] != g[gamma[t]]) return false;  // not a cone
  }
  for (std::size_t t = 0; t < alpha.size(); ++t) {
    int u = -1;
    for (std::size_t p = 0; p < pb.pairs.size(); ++p) {
      if (pb.proj1[p] == alpha[t] && pb.proj2[p] == gamma[t]) {
        if (u != -1) return false;  // not unique
        u = static_cast<int>(p);
      }
    }
    if (u == -1) return false;  // no factorization
  }
  return true;
}

}  // namespace

TEST_CASE("pullback of identity legs is the diagonal") {
  std::vector<int> id{0, 1};
  PullbackResult pb = pullback(id, id);
  REQUIRE(pb.pairs == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
}

TEST_CASE("pullback over a point is the full product") {
  std::vector<int> f{0, 0, 0};
  std::vector<int> g{0, 0};
  PullbackResult pb = pullback(f, g);
  CHECK(pb.pairs.size() == 6);
  for (int a = 0; a < 3; ++a) {
    for (int c = 0; c < 2; ++c) CHECK(pb.find(a, c) != -1);
  }
}

TEST_CASE("pullback of the FIX-A source/target legs matches enumeration") {
  SemidirectProduct sd = semidirect_product(oracle::fix_a().pre.action);
  const FinCatX& a = sd.pair.total;
  PullbackResult pb = pullback(a.src_map(), a.tgt_map());
  std::size_t expected = 0;
  for (int p = 0; p < static_cast<int>(a.mor_count()); ++p) {
    for (int r = 0; r < static_cast<int>(a.mor_count()); ++r) {
      if (a.src(p) == a.tgt(r)) ++expected;
    }
  }
  CHECK(pb.pairs.size() == expected);
  CHECK(pb.pairs.size() == 18u * 18u);  // one object

  for (int p = 0; p < static_cast<int>(a.mor_count()); ++p) {
    for (int r = 0; r < static_cast<int>(a.mor_count()); ++r) {
      CHECK((pb.find(p, r) != -1) == (a.src(p) == a.tgt(r)));
    }
  }
}

TEST_CASE("pullback satisfies the universal property on small cones") {
  const FinCatX b = oracle::fix_c().pre.action.base;
  PullbackResult pb = pullback(b.src_map(), b.tgt_map());
  std::size_t cones = 0;
  for (int a0 = 0; a0 < 4; ++a0) {
    for (int a1 = 0; a1 < 4; ++a1) {
      for (int c0 = 0; c0 < 4; ++c0) {
        for (int c1 = 0; c1 < 4; ++c1) {
          std::vector<int> alpha{a0, a1};
          std::vector<int> gamma{c0, c1};
          bool cone = b.src(a0) == b.tgt(c0) && b.src(a1) == b.tgt(c1);
          if (!cone) continue;
          ++cones;
          CHECK(satisfies_universal_property(pb, b.src_map(), b.tgt_map(),
                                             alpha, gamma));
        }
      }
    }
  }
  CHECK(cones == 64);  // 8 composable pairs, squared
}

TEST_CASE("span product against the trivial span is the identity") {
  ObjSet x{{"0", "1"}};
  Span unit = trivial_span(x);
  Span q;
  q.objects = x;
  q.left = {0, 1, 0};
  q.right = {1, 1, 0};
  SpanProduct left = span_product(unit, q);
  REQUIRE(left.result.size() == q.size());
  std::vector<bool> hit(q.size(), false);
  for (std::size_t e = 0; e < q.size(); ++e) {
    const int img = left.provenance[e].second;  // the canonical bijection
    CHECK_FALSE(hit[img]);
    hit[img] = true;
    CHECK(left.result.left[e] == q.left[img]);
    CHECK(left.result.right[e] == q.right[img]);
  }
  SpanProduct right = span_product(q, unit);
  REQUIRE(right.result.size() == q.size());
  for (std::size_t e = 0; e < q.size(); ++e) {
    CHECK(right.provenance[e].first == static_cast<int>(e));
    CHECK(right.result.left[e] == q.left[e]);
    CHECK(right.result.right[e] == q.right[e]);
  }
}

TEST_CASE("FIX-C base span has 8 composable pairs") {
  const FinCatX b = oracle::fix_c().pre.action.base;
  SpanProduct prod = span_product(b.underlying_span(), b.underlying_span());
  std::size_t expected = 0;
  for (int p = 0; p < 4; ++p) {
    for (int r = 0; r < 4; ++r) {
      if (b.src(p) == b.tgt(r)) ++expected;
    }
  }
  CHECK(expected == 8);
  CHECK(prod.result.size() == 8);
}

TEST_CASE("span product is associative up to the canonical relabeling") {
  const FinCatX b = oracle::fix_c().pre.action.base;
  const FinCatX y = oracle::fix_c().pre.action.fiber;
  Span sb = b.underlying_span();
  Span sy = y.underlying_span();

  SpanProduct by = span_product(sb, sy);
  SpanProduct by_b = span_product(by.result, sb);
  SpanProduct yb = span_product(sy, sb);
  SpanProduct b_yb = span_product(sb, yb.result);

  REQUIRE(by_b.result.size() == b_yb.result.size());
  for (std::size_t e = 0; e < by_b.result.size(); ++e) {
    auto [pq, r] = by_b.provenance[e];
    auto [p, q] = by.provenance[pq];
    // ((p,q),r) -> (p,(q,r))
    int qr = -1;
    for (std::size_t j = 0; j < yb.provenance.size(); ++j) {
      if (yb.provenance[j] == std::pair{q, r}) qr = static_cast<int>(j);
    }
    REQUIRE(qr != -1);
    int rhs = -1;
    for (std::size_t j = 0; j < b_yb.provenance.size(); ++j) {
      if (b_yb.provenance[j] == std::pair{p, qr}) rhs = static_cast<int>(j);
    }
    REQUIRE(rhs != -1);
    CHECK(by_b.result.left[e] == b_yb.result.left[rhs]);
    CHECK(by_b.result.right[e] == b_yb.result.right[rhs]);
  }
}

TEST_CASE("empty object sets and carriers are legal") {
  ObjSet empty;
  Span none = trivial_span(empty);
  CHECK(none.size() == 0);
  SpanProduct prod = span_product(none, none);
  CHECK(prod.result.size() == 0);
  PullbackResult pb = pullback(std::vector<int>{}, std::vector<int>{});
  CHECK(pb.pairs.empty());
  FinCatX d = discrete_category(empty);
  CHECK(d.mor_count() == 0);
  CHECK(is_bundle(d));
}

TEST_CASE("mismatched object sets are rejected") {
  Span p = trivial_span(ObjSet{{"0"}});
  Span q = trivial_span(ObjSet{{"0", "1"}});
  CHECK_THROWS_WITH_AS(span_product(p, q),
                       doctest::Contains("MismatchedObjSet"), xmod_error);
}
