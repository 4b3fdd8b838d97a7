#ifndef XMODKIT_EQUIVALENCES_HPP
#define XMODKIT_EQUIVALENCES_HPP

#include <optional>
#include <string>
#include <vector>

#include "xmodkit/distlaw.hpp"

namespace xmodkit {

// A constructed finite set: flat integer tuples in lexicographic order.
struct ElementSet {
  std::string desc;
  std::vector<std::vector<int>> elems;

  int find(const std::vector<int>& e) const;  // -1 if absent
  std::size_t size() const { return elems.size(); }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;
};

// A finite map between constructed sets. `inverse` is materialized by
// decide_bijective when the map is bijective.
struct MorphismMap {
  ElementSet dom;
  ElementSet cod;
  std::vector<int> table;
  std::optional<std::vector<int>> inverse;

  bool bijective() const { return inverse.has_value(); }
};

// Fills m.inverse when m is bijective. On failure reports NotInjective
// (witness: the two colliding domain indices) or NotSurjective (witness:
// the first uncovered codomain index).
OracleReport decide_bijective(MorphismMap& m);

// ---------------------------------------------------------------------------
// Split epimorphism layer

// The kernel A |x|_B I: morphisms of A sent by s to an identity, as a bundle
// category with the inclusion into A.
struct KernelObject {
  FinCatX bundle;
  MorIndexMap embed;  // kernel mor -> total mor

  int index_of_total(int a) const;  // -1 if a is not a kernel element
};

// Requires only splitepi_basic_checks to hold (q may be non-invertible).
// Throws KernelNotClosed if the kernel fails to be a subcategory, which
// cannot happen when s preserves composition.
KernelObject kernel_object(const SplitEpiPair& se);

// q: {(a, b) | s(a) = 1, pt(a) = tgt(b)} -> mor(A), (a, b) -> a.i(b).
// Bijectivity is decided exhaustively; non-bijectivity is recorded (empty
// inverse), not an error. Domain tuples are (total mor id, base mor id).
MorphismMap build_q(const SplitEpiPair& se);

// The groupoid closed form a -> (a.i(s(a)^-1), s(a)). Equals the exhaustive
// inverse of build_q whenever the pair is a valid split epi.
MorphismMap groupoid_q_inverse(const SplitEpiPair& se,
                               const InverseMap& base_inverse);

// Full validation: basic checks, then q bijective (QNotInvertible with the
// colliding pair witness), then multiplicativity of s.
void validate_splitepi(const SplitEpiPair& se);

// act(b, y) = first component of q^-1(i(b).y) on the kernel bundle.
// Throws QNotInvertible when q is not bijective.
ActionSystem splitepi_to_distlaw(const SplitEpiPair& se);

// ---------------------------------------------------------------------------
// Reflexive graph / pre-crossed module layer

struct ReflexiveGraph {
  SplitEpiPair se;
  MorIndexMap t;  // total -> base, with t.i = id

  friend bool operator==(const ReflexiveGraph&, const ReflexiveGraph&) =
      default;
};

void validate_reflgraph(const ReflexiveGraph& rg);

struct PreCrossedModule {
  ActionSystem action;
  MorIndexMap kappa;  // fiber -> base

  friend bool operator==(const PreCrossedModule&, const PreCrossedModule&) =
      default;
};

// kappa a functor and kappa(b |> y).b = b.kappa(y); throws
// PreCrossedViolated with the first failing (b, y).
PreCrossedModule validate_precrossed(const ActionSystem& action,
                                     MorIndexMap kappa);

struct CrossedModule {
  PreCrossedModule pre;

  friend bool operator==(const CrossedModule&, const CrossedModule&) = default;
};

// Additionally requires the Peiffer identity; throws PeifferViolated.
CrossedModule validate_xmod(const PreCrossedModule& pxm);

// kappa := t restricted to the kernel. Throws QNotInvertible.
PreCrossedModule reflgraph_to_prex(const ReflexiveGraph& rg);

// Semidirect product with t(y, b) = kappa(y).b. Throws PreCrossedViolated
// when the input fails its own law.
ReflexiveGraph prex_to_reflgraph(const PreCrossedModule& pxm);

// (kappa(y) |> y').y = y.y' for all same-object pairs.
OracleReport check_peiffer(const PreCrossedModule& pxm);

// ---------------------------------------------------------------------------
// Iterated comparison maps q_n, b_n, h_n (n = 1..3)

enum class IteratedKind { qn, bn, hn };

// q_n, h_n over a reflexive graph. Throws UnsupportedN, StructureMismatch.
MorphismMap build_iterated(IteratedKind kind, const ReflexiveGraph& rg, int n);

// b_n over a pre-crossed module.
MorphismMap build_iterated(IteratedKind kind, const PreCrossedModule& pxm,
                           int n);

// b_2.u11 = u1 [] 1 and b_2.1u1 = 1 [] u1, pointwise on mor(YB).
OracleReport check_b2_unit_identities(const PreCrossedModule& pxm);

// The square relating b_{n+1} to q_{n+1} through f and the smaller maps:
// both composites are evaluated pointwise on Y^{n+1}B and compared.
OracleReport check_bn_square(const PreCrossedModule& pxm, int n);

// ---------------------------------------------------------------------------
// Internal categories

struct InternalCat {
  ReflexiveGraph rg;
  ElementSet comp_pairs;   // A |x|_B A, tuples (a1, a2) with s(a1) = t(a2)
  std::vector<int> d;      // comp_pairs -> mor(A)

  friend bool operator==(const InternalCat&, const InternalCat&) = default;
};

// d = m.(p_A 1).q_2^-1 when the existence diagram commutes; otherwise
// throws NoComposition with the first failing point. Also throws
// QNotInvertible / Q2NotInvertible.
InternalCat build_composition_d(const ReflexiveGraph& rg);

// Unit laws, src/tgt compatibility, interchange, associativity of d.
OracleReport check_internal_cat_laws(const InternalCat& ic);

void validate_internal_cat(const InternalCat& ic);

// Throws PeifferViolated on invalid input; NoComposition cannot occur for a
// valid crossed module.
InternalCat xmod_to_relcat(const CrossedModule& xm);

// Underlying graph through reflgraph_to_prex; the Peiffer identity is
// asserted to hold. Throws QNotInvertible.
CrossedModule relcat_to_xmod(const InternalCat& ic);

// d'.(a [] a) = a.d for a morphism (base_map, total_map) of reflexive
// graphs between internal categories. The graph-morphism laws themselves
// are preconditions and are validated (throwing on violation).
OracleReport check_graph_morphism_is_functor(const MorIndexMap& base_map,
                                             const MorIndexMap& total_map,
                                             const InternalCat& dom,
                                             const InternalCat& cod);

// ---------------------------------------------------------------------------
// Natural isomorphisms of the equivalence round trips. The overload set is
// the direction: each structure is sent through its layer's two functors and
// the components (1, q) resp. (1, f) are verified to be isomorphisms
// commuting with all structure maps.

OracleReport natural_iso_check(const SplitEpiPair& se);
OracleReport natural_iso_check(const ActionSystem& act);
OracleReport natural_iso_check(const ReflexiveGraph& rg);
OracleReport natural_iso_check(const PreCrossedModule& pxm);
OracleReport natural_iso_check(const InternalCat& ic);
OracleReport natural_iso_check(const CrossedModule& xm);

}  // namespace xmodkit

#endif
