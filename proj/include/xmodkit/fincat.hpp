#ifndef XMODKIT_FINCAT_HPP
#define XMODKIT_FINCAT_HPP

#include <array>
#include <string>
#include <vector>

#include "xmodkit/span.hpp"

namespace xmodkit {

// Raw tables for a to-be category: everything a file or a builder provides
// before any law has been checked.
struct RawCategoryData {
  ObjSet objects;
  std::vector<std::string> mor_names;
  std::vector<int> src;                       // mor -> object index
  std::vector<int> tgt;                       // mor -> object index
  std::vector<int> id_of;                     // object -> mor
  std::vector<std::array<int, 3>> compose;    // (g, f, g.f) triples, f first
};

// A finite small category with object set X, i.e. a monoid in the category
// of spans over X. Composition comp(g, f) means "f first, then g" and is
// defined exactly when tgt(f) = src(g). The composition table is dense with
// -1 marking undefined cells.
class FinCatX {
public:
  FinCatX() = default;

  const ObjSet& objects() const { return objects_; }
  std::size_t mor_count() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int m) const { return names_[m]; }
  int mor_index(const std::string& name) const;  // -1 if absent

  int src(int m) const { return src_[m]; }
  int tgt(int m) const { return tgt_[m]; }
  int id_of(int x) const { return id_of_[x]; }
  bool is_identity(int m) const { return id_of_[src_[m]] == m; }

  // -1 when tgt(f) != src(g).
  int compose(int g, int f) const {
    return comp_[static_cast<std::size_t>(g) * names_.size() + f];
  }

  const std::vector<int>& src_map() const { return src_; }
  const std::vector<int>& tgt_map() const { return tgt_; }

  // Underlying span: left leg = tgt, right leg = src, so the span product
  // pairs exactly the composable pairs.
  Span underlying_span() const;

  // Trusted constructor for internally derived categories; callers are
  // expected to have run (or to run) validate_category on equivalent data.
  static FinCatX from_tables(ObjSet objects, std::vector<std::string> names,
                             std::vector<int> src, std::vector<int> tgt,
                             std::vector<int> id_of, std::vector<int> comp);

  friend bool operator==(const FinCatX&, const FinCatX&) = default;

private:
  ObjSet objects_;
  std::vector<std::string> names_;
  std::vector<int> src_, tgt_, id_of_;
  std::vector<int> comp_;  // dense n*n, -1 sentinel
};

// Checks all category laws and returns the validated category.
// Throws xmod_error with codes: DuplicateObjectLabel, DuplicateMorphismName,
// BadStructureMap, MissingIdentity, BadComposabilityDomain,
// UnitLawViolation, AssociativityViolation. Witnesses name the
// lexicographically first violation.
FinCatX validate_category(const RawCategoryData& raw);

// Discrete category D(X): identities only.
FinCatX discrete_category(const ObjSet& objects);

// An identity-on-objects functor is carried by its morphism map; dom and cod
// are owned by the surrounding structure.
using MorIndexMap = std::vector<int>;

// Throws: MismatchedObjSet, SrcTgtNotPreserved, IdentityNotPreserved,
// CompositionNotPreserved (with a witness pair g, f).
void validate_functor(const MorIndexMap& map, const FinCatX& dom,
                      const FinCatX& cod);

// inv with comp(inv(f), f) = id(src f) and comp(f, inv(f)) = id(tgt f).
using InverseMap = std::vector<int>;

// Throws NotGroupoid naming the first morphism without a two-sided inverse.
InverseMap groupoid_inverses(const FinCatX& c);

bool is_groupoid(const FinCatX& c);

// True iff src = tgt pointwise (a bundle: a family of monoids indexed by X).
bool is_bundle(const FinCatX& c);

}  // namespace xmodkit

#endif
