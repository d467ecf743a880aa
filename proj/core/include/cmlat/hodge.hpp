#ifndef CMLAT_HODGE_HPP
#define CMLAT_HODGE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "cmlat/cm.hpp"

namespace cmlat {

/* Symbolic model of H*(A^{s_1} x ...) for a CM product: a basis of 2g
 * one-forms omega_sigma indexed by the embeddings of the factors (each
 * factor replicated by its multiplicity), and square-free monomials
 * omega_{I,J} = prod_{I} omega_sigma prod_{J} omega_sigma with I inside Phi
 * and J inside iota.Phi.  A monomial is encoded as the bitmask of its index
 * set; only the even-degree commutative operations are exposed, so no sign
 * conventions enter. */
class HodgeModel {
public:
    HodgeModel(const AVCharZeroSpec& spec, std::vector<int> replication);
    static HodgeModel for_spec(const AVCharZeroSpec& spec);  // replication = 1 each

    int g() const { return gDim_; }              // dim of the modelled product
    int form_count() const { return 2 * gDim_; }  // = |index set|
    bool in_phi(int idx) const { return inPhi_[idx]; }
    int iota_of(int idx) const { return iotaOf_[idx]; }
    int base_coordinate(int idx) const { return baseCoord_[idx]; }  // into X*(L) ambient
    const CharacterLattice& lefschetz() const { return *lef_; }

    /* L(A)-character of omega_mask twisted m times: the canonical class of
     * (multiplicity vector of the mask) - m*(sigma0 + iota sigma0). */
    ZVec character_class(std::uint32_t mask, int twist) const;
    std::pair<mpz_class, mpz_class> hodge_type(std::uint32_t mask, int twist) const;
    mpz_class weight(std::uint32_t mask, int twist) const { return mpz_class(popcount(mask)) - 2 * twist; }

    std::vector<std::uint32_t> basis(int degree) const;  // all masks of that size

    static int popcount(std::uint32_t m);

private:
    const AVCharZeroSpec* spec_;
    int gDim_ = 0;
    std::vector<char> inPhi_;
    std::vector<int> iotaOf_;
    std::vector<int> baseCoord_;
    std::shared_ptr<CharacterLattice> lef_;  // X*(L) of the multiplicity-free product
};

/* Finite Q-linear combination of twisted monomials. */
struct SymbolicClass {
    std::map<std::pair<std::uint32_t, int>, mpq_class> terms;  // (mask, twist) -> coeff
    SymbolicClass& add(std::uint32_t mask, int twist, const mpq_class& c);
    bool operator==(const SymbolicClass& o) const { return terms == o.terms; }
};

/* Product of even-degree classes: masks multiply by disjoint union (zero
 * otherwise), twists add. */
SymbolicClass multiply(const SymbolicClass& a, const SymbolicClass& b);

/* L^k = sum over M in Phi, |M| = k of k! * omega_{M, iota M} (untwisted).
 * The basis one-forms are normalized so that every (sigma, iota.sigma)
 * component of the polarization class has coefficient 1; any nonzero
 * rescaling gives the same answers for every check performed here. */
SymbolicClass lefschetz_power(const HodgeModel& model, int k);

/* L^k * omega_mask: only M disjoint from the mask contribute. */
SymbolicClass l_multiply(const HodgeModel& model, int k, std::uint32_t mask, int twist = 0);

/* Number of basis monomials of H^{2r}((model))(r) whose L-character equals
 * the given class; when `collapse` is supplied the character is first pushed
 * through it (used for the reduced lattice over F). */
int eigenspace_dimension(const HodgeModel& model, const ZVec& target, int r,
                         const EquivariantMap* collapse = nullptr);

/* Closure of an iota-stable seed of monomials under the three rules used in
 * the numerical-equivalence induction: all omega_{M, iota M} are algebraic;
 * stripping omega_{I0 u M, J0 u iota M} -> omega_{I0,J0}; conjugation.  The
 * pairing on the closure is nondegenerate iff the complement of every member
 * is again a member. */
struct NondegeneracyResult {
    std::set<std::uint32_t> closure;
    bool seed_iota_stable = false;
    bool closure_stable = false;      // fixed point reached (always true on return)
    bool pairing_nondegenerate = false;
};
NondegeneracyResult nondegeneracy_induction(const HodgeModel& model,
                                            const std::set<std::uint32_t>& seed);

}  // namespace cmlat

#endif
