#ifndef XMODKIT_DISTLAW_HPP
#define XMODKIT_DISTLAW_HPP

#include <utility>
#include <vector>

#include "xmodkit/fincat.hpp"

namespace xmodkit {

// An action of a base category B on a bundle Y over the same object set.
// act(b, y) is defined iff src(b) = tgt(y); the table is dense with -1 on
// non-composable cells.
struct ActionSystem {
  FinCatX base;   // B
  FinCatX fiber;  // Y, a bundle
  std::vector<int> act;  // act[b * |mor Y| + y]

  int apply(int b, int y) const {
    return act[static_cast<std::size_t>(b) * fiber.mor_count() + y];
  }

  friend bool operator==(const ActionSystem&, const ActionSystem&) = default;
};

// Throws: MismatchedObjSet, NotABundle, BadActionDomain,
// AxiomIViolation, AxiomIIViolation, AxiomIIIViolation.
// Witnesses are the lexicographically first violating morphisms.
ActionSystem validate_action(const FinCatX& base, const FinCatX& fiber,
                             std::vector<int> table);

// Trivial action of a discrete base: act(1_x, y) = y.
ActionSystem trivial_action(const FinCatX& base, const FinCatX& fiber);

// A map x: B [] Y -> Y [] B with (e[]1).x = 1[]e, i.e. second component the
// acting b itself. Domain pairs are the composable (b, y) in lex order.
struct DistLawMap {
  FinCatX base;
  FinCatX fiber;
  std::vector<std::pair<int, int>> dom;  // (b, y) with src(b) = tgt(y)
  std::vector<std::pair<int, int>> img;  // (y', b')

  friend bool operator==(const DistLawMap&, const DistLawMap&) = default;
};

// x(b, y) = (act(b, y), b).
DistLawMap action_to_distlaw(const ActionSystem& act);

// First component of x; throws NotFirstComponentForm when some second
// component differs from the acting b. Revalidates the action axioms.
ActionSystem distlaw_to_action(const DistLawMap& x);

// Pointwise check of the four distributive-law unit/multiplicativity
// equations for x against the structures of B and Y.
OracleReport check_distlaw_equations(const DistLawMap& x);

// A split epimorphism of categories over a common object set: s.i = id.
// The maps are stored raw; validate_splitepi (equivalences) runs the full
// check including invertibility of q.
struct SplitEpiPair {
  FinCatX total;  // A
  FinCatX base;   // B
  MorIndexMap i;  // base -> total
  MorIndexMap s;  // total -> base

  friend bool operator==(const SplitEpiPair&, const SplitEpiPair&) = default;
};

// Structure-level checks that kernel and q constructions rely on: common
// object set, total maps preserving src/tgt/identities, i a functor, and
// s.i = id. Deliberately does not require s to preserve composition.
void splitepi_basic_checks(const SplitEpiPair& se);

// The semidirect product Y x| B: morphisms are pairs (y, b) with
// tgt(y) = tgt(b)... carrier pairs (y, b) with pt(y) = tgt(b), composition
// (y,b).(y',b') = (y.(b |> y'), b.b'), i(b) = (1, b), s(y,b) = b.
struct SemidirectProduct {
  SplitEpiPair pair;
  MorIndexMap fiber_embed;                     // y -> (y, 1)
  std::vector<std::pair<int, int>> carrier;    // total mor id -> (y, b)

  int pair_index(int y, int b) const;          // -1 if absent
};

SemidirectProduct semidirect_product(const ActionSystem& act);

}  // namespace xmodkit

#endif
