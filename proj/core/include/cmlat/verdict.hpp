#ifndef CMLAT_VERDICT_HPP
#define CMLAT_VERDICT_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cmlat/hodge.hpp"
#include "cmlat/reduction.hpp"

namespace cmlat {

enum class Status { Holds, Fails, Conditional, Inconclusive, NotApplicable };
std::string to_string(Status s);

/* Arithmetic facts the engine cannot see from the group data alone.  Every
 * verdict that uses one lists it in the trace; computable ones are
 * cross-validated against the group data. */
struct DeclaredFacts {
    std::optional<bool> p_splits_in_q;
    std::optional<bool> q_cyclotomic;          // Q generated by a root of unity
    std::optional<bool> determinant_one;
    std::optional<bool> exotic_hodge_algebraic;
    std::optional<int> degree_e;
};

struct FactorSpec {
    std::string name;
    std::string space;      // subgroup name: Sigma_E = G / subgroups[space]
    std::vector<int> phi;   // 0/1 per coset of that space
    int multiplicity = 1;
};

struct GermInput {
    std::string name;
    std::vector<mpz_class> f;  // on X = G/D in coset order; weight 1
};

struct Scenario {
    std::string name;
    std::string preset;
    std::shared_ptr<FiniteGaloisGroup> group;
    std::map<std::string, SubgroupHandle> subgroups;
    std::vector<FactorSpec> factors;
    std::vector<GermInput> germs;
    std::string d_name;  // [reduction] subgroup, empty if none
    DeclaredFacts facts;
    std::vector<std::string> checks;

    const SubgroupHandle& subgroup(const std::string& n) const;
    bool has_reduction() const { return !d_name.empty(); }
};

/* Cross-validate declared facts against what the group data determines
 * (p splits in Q iff D lies in H_Q; degree of E as [G : H_E]).  Throws on a
 * contradiction. */
void validate_scenario(const Scenario& sc);

struct Verdict {
    std::string check;
    Status status = Status::NotApplicable;
    std::vector<std::string> trace;
    std::vector<std::pair<std::string, ZVec>> witnesses;
};

/* Materialized scenario: lattices and maps live here at stable addresses and
 * are built once on demand. */
class Workspace {
public:
    explicit Workspace(const Scenario& sc);
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;

    const Scenario& scenario() const { return *sc_; }
    const FiniteGaloisGroup& group() const { return *sc_->group; }

    bool has_factors() const { return !sc_->factors.empty(); }
    const AVCharZeroSpec& spec();
    const CharacterLattice& serre();
    const CharacterLattice& lef();
    const EquivariantMap& rho();
    const MTKernel& mt();

    const ReductionContext& rctx();
    const WeilLatticeResult& weil();
    const RestrictionResult& restriction();
    const PKernel& pkernel_of_restriction();
    /* germ symbols of all simple factors: reductions of the CM factors
     * followed by the [germ.*] inputs */
    const std::vector<std::pair<std::string, WeilGermSymbol>>& simple_germs();

private:
    const Scenario* sc_;
    std::optional<AVCharZeroSpec> spec_;
    std::optional<CharacterLattice> serre_, lef_;
    std::optional<EquivariantMap> rho_;
    std::optional<MTKernel> mt_;
    std::optional<ReductionContext> rctx_;
    std::optional<WeilLatticeResult> weil_;
    std::optional<RestrictionResult> restriction_;
    std::optional<PKernel> pk_;
    std::optional<std::vector<std::pair<std::string, WeilGermSymbol>>> simpleGerms_;
};

/* Characters of L(A) declared algebraic, for the Tate criterion. */
enum class AlgebraicCharacters { MTDerived, Declared };

/* Tate criterion: P(A_0) equals the intersection of the kernels of the
 * declared algebraic characters of L(A), decided exactly on character
 * subgroups.  MT-derived mode uses the characters trivial on MT(A). */
Verdict check_tate_criterion(Workspace& ws,
                             AlgebraicCharacters mode = AlgebraicCharacters::MTDerived,
                             const std::vector<ZVec>* declared = nullptr);

/* Hodge-input route: P(A_0) = L(A_0) cap MT(A) decided as K_P = K_1 + K_2 on
 * character kernels; the Hodge premise comes from the declared flag or from
 * MT(A) = L(A). */
Verdict check_tate_from_hodge(Workspace& ws);

/* Full analysis of the pair A (CM field E of degree 2n containing the
 * quadratic Q) and B (CM elliptic factor on Q): partition data, the kernel
 * generators chi and chi0, the ladder between them, and the exotic-class
 * eigenspace counts.  Part (b) is conditional on the declared algebraicity
 * flag. */
struct ExoticPairData {
    int n = 0, m = 0;
    std::vector<int> jmap;
    std::vector<ZVec> fj;                  // f_j on X, j = 0..m-1
    ZVec chi;                              // canonical generator, char-0 side
    ZVec chi0;                             // canonical generator, reduced side
    ZVec chi0_structural;                  // (n/m)(pi_0+..+pi_{m-1}) + (n-2)rho0 - (n-1)(rho0+i.rho0)
    int iso_sign = 0;                      // collapse(chi) = sign * chi0
    std::vector<int> mult_chi, mult_minus_chi;    // per r = 0..2n-2
    std::vector<std::string> reduced_labels;
    bool machine_ok = false;
};
Verdict check_exotic_pair(Workspace& ws, ExoticPairData* out = nullptr);

/* Weil-type family: root-of-unity field, determinant one, degree six, split
 * prime; delegates to the pair analysis with the algebraicity flag derived. */
Verdict check_weil_type_family(Workspace& ws);

/* The finite-field example families: elliptic products, the K3-type slope
 * pattern, and almost-ordinary varieties; each verifies P(A_0) = L(A_0). */
Verdict classify_finite_families(Workspace& ws);

/* E = K Galois: both horizontal maps surjective, the induced four-term
 * sequence exact, and the Frobenius kernel on X*(S^K) recovered from the
 * reduction kernel. */
Verdict check_serre_intersection(Workspace& ws);

/* Membership of a prime in the good set S(A_0) (iota lies in the
 * decomposition group) and the density of such primes. */
struct PrimeDensity {
    bool member = false;
    mpq_class density;
};
PrimeDensity good_prime_density(const FiniteGaloisGroup& gOmega,
                                const SubgroupHandle& dLambda);
Verdict check_prime_density(Workspace& ws);

/* Dispatch by scenario check name. */
Verdict run_check(Workspace& ws, const std::string& name,
                  ExoticPairData* pairData = nullptr);
std::vector<std::string> known_checks();

}  // namespace cmlat

#endif
