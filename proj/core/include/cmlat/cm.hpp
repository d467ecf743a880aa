#ifndef CMLAT_CM_HPP
#define CMLAT_CM_HPP

#include <optional>
#include <string>
#include <vector>

#include "cmlat/group.hpp"
#include "cmlat/lattice.hpp"

namespace cmlat {

/* A CM-algebra factor E = K^H together with a CM-type: a 0/1 function phi on
 * the embedding set Sigma_E = G/H with phi + iota.phi = 1.  In
 * characteristic zero a factor fixed by iota (a totally real, in particular
 * rational, factor) is rejected. */
struct CMTypeSpec {
    CMTypeSpec(CosetSpace space, std::vector<int> phi, std::string name = "A");

    CosetSpace space;       // Sigma_E
    std::vector<int> phi;   // 0/1 per coset
    std::string name;

    bool in_phi(int coset) const { return phi[coset] == 1; }
    /* psi_sigma(tau) = phi(tau^{-1} sigma) as a vector over Sigma_K = G. */
    ZVec psi(int sigmaCoset) const;
};

struct AVCharZeroSpec {
    explicit AVCharZeroSpec(std::vector<CMTypeSpec> factors,
                            std::vector<int> multiplicities = {});
    std::vector<CMTypeSpec> factors;
    std::vector<int> multiplicities;  // recorded, not used by group computations
    const FiniteGaloisGroup& group() const { return factors.front().space.group(); }
    std::size_t total_embeddings() const;
};

/* X*(S^K) = {f in Z^{Sigma_K} : f + iota.f constant}, as a Sub lattice with
 * weight functional f -> f(e) + f(iota). */
CharacterLattice serre_lattice(const FiniteGaloisGroup& g);

struct CMTypeTools {
    bool valid = false;
    std::optional<SubgroupHandle> reflex_subgroup;  // stabilizer of Phi in G
    bool primitive = false;
};
CMTypeTools cm_type_tools(const CosetSpace& space, const std::vector<int>& phi);

/* Ambient label set of X*(L(A)): the disjoint union of the factor coset
 * spaces, in factor order, cosets in coset-space order. */
struct LefschetzAmbient {
    std::vector<std::string> labels;
    std::vector<std::vector<int>> perm;
    std::vector<std::pair<std::size_t, std::size_t>> factor_ranges;  // [begin, end)
    std::vector<int> iota_of;  // iota as an index map on the ambient
};
LefschetzAmbient lefschetz_ambient(const AVCharZeroSpec& spec);

/* X*(L(A)) = Z^{Sigma_E} / {g : g = iota.g and sum g = 0}, as a Quot lattice
 * with weight functional [g] -> sum g(sigma) and Tate element
 * t = [-sigma - iota.sigma].  Characteristic-zero variant: rejects
 * iota-fixed embeddings. */
CharacterLattice lefschetz_lattice(const AVCharZeroSpec& spec);

/* Shared construction over an arbitrary labelled iota-set; iota-fixed points
 * are allowed iff allowFixed (used for the germ lattices over F). */
CharacterLattice lefschetz_lattice_over(const FiniteGaloisGroup& g,
                                        std::vector<std::string> labels,
                                        std::vector<std::vector<int>> perm,
                                        const std::vector<int>& iotaOf,
                                        bool allowFixed);

/* X*(rho_Phi): X*(L(A)) -> X*(S^K); the ambient unit of an embedding sigma
 * maps to psi_sigma. */
EquivariantMap rho_phi_map(const AVCharZeroSpec& spec, const CharacterLattice& lef,
                           const CharacterLattice& serre);

struct MTKernel {
    Sublattice kernel;
    bool exotic_hodge_exists = false;
    std::optional<ZVec> generator;  // canonical, when the kernel has rank 1
};
MTKernel mt_kernel_and_exotic(const EquivariantMap& rhoPhi);

/* Direct triviality criterion for a character class [g] of L(A):
 * sum_{sigma in Phi} g(tau sigma) = 0 for every tau.  Must agree with
 * membership in the kernel of rho_Phi. */
bool mt_trivial_direct(const AVCharZeroSpec& spec, const CharacterLattice& lef,
                       const ZVec& classVec);

/* The correspondence between triples (T, w, t) and pairs (T0, epsilon):
 * reconstruct X*(T) from the L(A)_0-lattice with the parity functional
 * chi -> chi(epsilon), and compare with the direct construction. */
struct A1Correspondence {
    bool isomorphic = false;
    bool weight_matches = false;
    bool tate_matches = false;
    bool tw_is_minus_two = false;
};
A1Correspondence a1_correspondence_check(const AVCharZeroSpec& spec);

/* Same check with a caller-supplied parity functional on the ambient of the
 * L(A)_0-lattice; throws if the functional is not iota-stable mod 2. */
A1Correspondence a1_correspondence_check(const AVCharZeroSpec& spec, const ZVec& parity);

}  // namespace cmlat

#endif
