#ifndef CMLAT_REDUCTION_HPP
#define CMLAT_REDUCTION_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cmlat/cm.hpp"
#include "cmlat/weil.hpp"

namespace cmlat {

/* Reduction data: the decomposition subgroup D = D(w0) of a fixed prime w0
 * over p, and the prime set X = G/D with base point w0 = the coset of the
 * identity. */
struct ReductionContext {
    ReductionContext(const FiniteGaloisGroup& g, SubgroupHandle d);
    const FiniteGaloisGroup* g;
    SubgroupHandle d;
    CosetSpace x;  // G/D, base coset index 0
    int n0() const { return d.order(); }
};

/* Slope of the reduction of a CM factor (E, Phi): s(v) = |Phi(v)| / |Sigma_E(v)|
 * on the primes v of E over p, transported to a germ symbol on X.  Throws if
 * some |Phi(v)| * n0 / |Sigma_E(v)| is not an integer (K does not split the
 * reduction). */
WeilGermSymbol reduce_cm_factor(const CMTypeSpec& factor, const ReductionContext& ctx);
std::vector<WeilGermSymbol> reduce_cm(const AVCharZeroSpec& spec,
                                      const ReductionContext& ctx);

/* f |-> fbar, fbar(w) = sum_{tau w0 = w} f(tau), on ambient vectors of
 * Z^{Sigma_K}; the weil-lattice image carries (fbar, wt f). */
ZVec pushforward_function(const ZVec& f, const ReductionContext& ctx);
EquivariantMap pushforward_map(const CharacterLattice& serre,
                               const CharacterLattice& weil, const ReductionContext& ctx);

/* The commutative ladder relating X*(S^K) to W^K(p-infinity):
 *
 *   0 -> X*(S^K) -> Z^{Sigma_K} x Z -> Z^{Sigma_F} -> 0
 *           |              |                 |
 *   0 ->  W^K    ->  Z^X x Z       ->  Z^Y        -> 0
 *
 * with verticals induced by tau -> tau.w0 and sigma -> sigma.v0.  When iota
 * lies in D the bottom row collapses and only the degenerate report is
 * returned. */
struct FundamentalDiagram {
    bool degenerate = false;
    // exactness certificates
    bool top_exact = false;
    bool bottom_exact = false;
    // square commutation on all ambient basis vectors
    bool left_square_commutes = false;
    bool right_square_commutes = false;
    bool all_pass() const {
        return !degenerate && top_exact && bottom_exact && left_square_commutes &&
               right_square_commutes;
    }
};
FundamentalDiagram fundamental_diagram(const ReductionContext& ctx);

/* The reduced Lefschetz lattice X*(L(A_0)) for a product: ambient indexed by
 * the distinct conjugate germs of all factors, with labels pi0..., rho0...
 * for the factor ordering, and the collapse map X*(L(A)) -> X*(L(A_0)). */
struct ReducedLefschetz {
    std::vector<WeilGermSymbol> germs;              // ambient order
    std::vector<std::string> labels;
    std::shared_ptr<CharacterLattice> lattice;      // Quot; stable address
    std::vector<int> germ_of_embedding;             // src ambient index -> germ index
};

struct RestrictionResult {
    ReducedLefschetz reduced;
    EquivariantMap map;  // X*(L(A)) -> X*(L(A_0))
};
RestrictionResult restriction_map(const AVCharZeroSpec& spec,
                                  const CharacterLattice& lefChar0,
                                  const ReductionContext& ctx);

/* X*(L(A_0)) built directly from germ symbols (one per simple factor). */
ReducedLefschetz reduced_lefschetz_from_germs(const std::vector<WeilGermSymbol>& germs,
                                              const std::vector<std::string>& factorNames,
                                              const ReductionContext& ctx);

/* Same, but from an explicitly ordered and labelled germ list; factorRanges
 * delimits the conjugate set of each simple factor for the collision check. */
ReducedLefschetz reduced_lefschetz_explicit(
    std::vector<WeilGermSymbol> germs, std::vector<std::string> labels,
    const std::vector<std::pair<std::size_t, std::size_t>>& factorRanges,
    const ReductionContext& ctx);

/* Characters of L(A_0) trivial on the Frobenius group: the kernel of
 * X*(L(A_0)) -> X*(P^K).  Both the lattice-map kernel and the slope-sum
 * criterion are computed and must agree. */
struct PKernel {
    Sublattice kernel;
    bool exotic_tate_exists = false;
    std::optional<ZVec> generator;  // canonical when the kernel has rank 1
    bool routes_agree = false;      // lattice kernel == slope-sum kernel
    bool saturated = false;
};
PKernel p_kernel(const ReducedLefschetz& red, const ReductionContext& ctx);

/* Germ map X*(L(A_0)) -> X*(P^K) as an equivariant map. */
EquivariantMap germ_map(const ReducedLefschetz& red, const CharacterLattice& weil,
                        const ReductionContext& ctx);

/* Exhaustive search for a CM-type on E (given as a coset space) whose
 * reduction is the given germ.  Distinguishes "E incompatible" (the centre
 * Q[pi] does not embed into E, i.e. H_E is not contained in Stab(f)) from
 * "searched and none found". */
struct LiftingResult {
    std::optional<std::vector<int>> phi;  // a CM-type on E, when found
    bool searched = false;                // false when E was rejected upfront
};
LiftingResult lifting_search(const WeilGermSymbol& germ, const CosetSpace& eSpace,
                             const ReductionContext& ctx);

}  // namespace cmlat

#endif
