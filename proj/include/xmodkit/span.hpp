#ifndef XMODKIT_SPAN_HPP
#define XMODKIT_SPAN_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "xmodkit/report.hpp"

namespace xmodkit {

// The fixed object set X. Objects are addressed by index; labels are the
// authoritative external names.
struct ObjSet {
  std::vector<std::string> labels;

  std::size_t size() const { return labels.size(); }
  int index_of(const std::string& label) const;  // -1 if absent

  friend bool operator==(const ObjSet&, const ObjSet&) = default;
};

// Throws DuplicateObjectLabel on repeated labels.
void validate_objset(const ObjSet& objects);

// A span X <- E -> X over a fixed object set. Elements are dense ids
// 0..size-1; `left` and `right` are total maps into object indices.
struct Span {
  ObjSet objects;
  std::vector<int> left;
  std::vector<int> right;

  std::size_t size() const { return left.size(); }
};

// Trivial span (X, id, id): the monoidal unit.
Span trivial_span(const ObjSet& objects);

// Set pullback of a cospan f: A -> B <- C :g, with f and g given as value
// tables (codomain elements are whatever integers the tables contain).
struct PullbackResult {
  std::vector<std::pair<int, int>> pairs;  // dense id -> (a, c), lex order
  std::vector<int> proj1;                  // id -> a
  std::vector<int> proj2;                  // id -> c

  int find(int a, int c) const;  // -1 if absent
};

PullbackResult pullback(std::span<const int> f, std::span<const int> g);

// Monoidal product of spans over the same X: carrier is the pullback of
// right(P) against left(Q). The provenance table keeps the pair of component
// ids behind each fresh dense id.
struct SpanProduct {
  Span result;
  std::vector<std::pair<int, int>> provenance;  // fresh id -> (p, q)
};

// Throws MismatchedObjSet when the spans live over different object sets.
SpanProduct span_product(const Span& p, const Span& q);

}  // namespace xmodkit

#endif
