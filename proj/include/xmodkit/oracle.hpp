#ifndef XMODKIT_ORACLE_HPP
#define XMODKIT_ORACLE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "xmodkit/equivalences.hpp"

namespace xmodkit::oracle {

inline constexpr std::size_t kDefaultBudget = 10'000'000;

// Exhaustive inversion. Throws NotInjective (witness: the two colliding
// domain tuples) or NotSurjective (witness: the unreached codomain tuple).
MorphismMap brute_force_inverse(const MorphismMap& f);

// All action tables satisfying the three axioms, in lexicographic order of
// the flattened table. Throws BudgetExceeded past `budget` candidate
// evaluations.
std::vector<ActionSystem> enumerate_actions(const FinCatX& base,
                                            const FinCatX& fiber,
                                            std::size_t budget = kDefaultBudget);

// All (action, kappa) pairs satisfying the pre-crossed law, ordered by
// (action, kappa) lexicographically.
std::vector<PreCrossedModule> enumerate_prexmods(
    const FinCatX& base, const FinCatX& fiber,
    std::size_t budget = kDefaultBudget);

// The sublist of enumerate_prexmods that also satisfies Peiffer.
std::vector<CrossedModule> enumerate_xmods(const FinCatX& base,
                                           const FinCatX& fiber,
                                           std::size_t budget = kDefaultBudget);

// Propagation search for monoid morphisms d satisfying the two unit laws.
// Reports the number of solutions (0 or 1 on valid input) and the table of
// the unique one when found.
struct DSearchResult {
  int solutions = 0;
  std::optional<std::vector<int>> d;  // indexed like A [x]_B A
  std::size_t steps = 0;
};

DSearchResult solve_d_by_search(const ReflexiveGraph& rg,
                                std::size_t budget = kDefaultBudget);

// The category on the carrier of Y [] B whose composition is derived only
// from x and the multiplications of Y and B; certifies the closed semidirect
// formula. Carrier enumeration matches semidirect_product.
FinCatX generic_distlaw_multiplication(const DistLawMap& x);

// All one-object monoids of the given order up to isomorphism, as
// composition tables with the identity first, in lexicographic order of the
// canonical table.
std::vector<FinCatX> enumerate_monoids(int size,
                                       std::size_t budget = kDefaultBudget);

// Building blocks for the canonical fixtures.
FinCatX trivial_group();
FinCatX cyclic_group_z2();
FinCatX alternating_group_a3();
FinCatX symmetric_group_s3();

// FIX-A: B = S3, Y = A3, conjugation, kappa = inclusion.
CrossedModule fix_a();
// FIX-B: B = Z2, Y = Z2, trivial action, kappa = identity.
CrossedModule fix_b();
// FIX-C: |X| = 2, B indiscrete on two objects, Y = Z2 u Z2, transport.
CrossedModule fix_c();
// FIX-D: split epi over the monoid {1, a, g} with non-invertible q.
SplitEpiPair fix_d();
// FIX-E: B trivial, Y = S3, trivial action and kappa; Peiffer fails.
PreCrossedModule fix_e();

}  // namespace xmodkit::oracle

#endif
