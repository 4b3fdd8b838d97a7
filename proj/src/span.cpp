#include "xmodkit/span.hpp"

#include <algorithm>
#include <set>

namespace xmodkit {

int ObjSet::index_of(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  return it == labels.end() ? -1 : static_cast<int>(it - labels.begin());
}

void validate_objset(const ObjSet& objects) {
  std::set<std::string> seen;
  for (const auto& label : objects.labels) {
    if (!seen.insert(label).second) {
      throw xmod_error("DuplicateObjectLabel", "object label repeated",
                       {label});
    }
  }
}

Span trivial_span(const ObjSet& objects) {
  Span s;
  s.objects = objects;
  s.left.resize(objects.size());
  s.right.resize(objects.size());
  for (std::size_t x = 0; x < objects.size(); ++x) {
    s.left[x] = static_cast<int>(x);
    s.right[x] = static_cast<int>(x);
  }
  return s;
}

int PullbackResult::find(int a, int c) const {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), std::pair{a, c});
  if (it == pairs.end() || *it != std::pair{a, c}) return -1;
  return static_cast<int>(it - pairs.begin());
}

PullbackResult pullback(std::span<const int> f, std::span<const int> g) {
  PullbackResult pb;
  for (int a = 0; a < static_cast<int>(f.size()); ++a) {
    for (int c = 0; c < static_cast<int>(g.size()); ++c) {
      if (f[a] == g[c]) pb.pairs.emplace_back(a, c);
    }
  }
  pb.proj1.reserve(pb.pairs.size());
  pb.proj2.reserve(pb.pairs.size());
  for (const auto& [a, c] : pb.pairs) {
    pb.proj1.push_back(a);
    pb.proj2.push_back(c);
  }
  return pb;
}

SpanProduct span_product(const Span& p, const Span& q) {
  if (!(p.objects == q.objects)) {
    throw xmod_error("MismatchedObjSet",
                     "span product requires a common object set");
  }
  PullbackResult pb = pullback(p.right, q.left);
  SpanProduct out;
  out.result.objects = p.objects;
  out.provenance = pb.pairs;
  out.result.left.reserve(pb.pairs.size());
  out.result.right.reserve(pb.pairs.size());
  for (const auto& [a, c] : pb.pairs) {
    out.result.left.push_back(p.left[a]);
    out.result.right.push_back(q.right[c]);
  }
  return out;
}

}  // namespace xmodkit
