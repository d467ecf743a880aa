#ifndef CMLAT_WEIL_HPP
#define CMLAT_WEIL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cmlat/group.hpp"
#include "cmlat/lattice.hpp"

namespace cmlat {

/* A Weil germ represented by slope data over K: an integer function f on
 * the prime set X = G/D with f + iota.f = weight * n0, where n0 = |D| is the
 * common local degree [K_w : Q_p].  The slope at w is f(w)/n0; a germ is
 * determined by its slope function. */
class WeilGermSymbol {
public:
    WeilGermSymbol(const CosetSpace& x, std::vector<mpz_class> f, mpz_class weight);

    const CosetSpace& prime_space() const { return *x_; }
    const std::vector<mpz_class>& f() const { return f_; }
    const mpz_class& weight() const { return weight_; }
    int n0() const { return x_->subgroup().order(); }
    mpq_class slope(int w) const;

    WeilGermSymbol acted_by(int gElt) const;  // slope transport s(g^{-1} w)
    WeilGermSymbol conjugate() const { return acted_by(x_->group().iota()); }
    WeilGermSymbol operator+(const WeilGermSymbol& o) const;

    bool operator==(const WeilGermSymbol& o) const { return f_ == o.f_ && weight_ == o.weight_; }
    bool operator<(const WeilGermSymbol& o) const;

    bool effective() const;  // f >= 0
    std::string str() const;

private:
    const CosetSpace* x_;
    std::vector<mpz_class> f_;
    mpz_class weight_;
};

/* X*(P^K) = W^K(p-infinity) = {(f, m) : f + iota.f = m*n0} as a Sub lattice
 * of Z^X x Z.  When iota lies in D no prime of the maximal real subfield
 * splits and the lattice collapses to the p^{m/2} family of rank 1;
 * `degenerate` reports that branch.  Otherwise `exactness` certifies the
 * presentation 0 -> W^K -> Z^X x Z -> Z^Y -> 0 over the iota-orbit space Y. */
struct WeilLatticeResult {
    CharacterLattice lattice;   // Sub of Z^{X + 1}; last coordinate is the weight
    bool degenerate = false;
    std::vector<std::vector<int>> y_orbits;  // iota-orbits on X (the primes of F)
    bool first_injective = false;
    bool composite_zero = false;
    bool middle_exact = false;
    bool last_surjective = false;
    bool rank_identity = false;  // rank W = |X| + 1 - |Y|
};
WeilLatticeResult weil_lattice(const FiniteGaloisGroup& g, const SubgroupHandle& d);

/* (f, weight) of a germ as an ambient vector of the weil lattice. */
ZVec germ_vector(const WeilGermSymbol& s);

/* Per-prime data of Q[pi] for a simple class: each prime is an orbit of
 * Stab(f) on X; its local degree is n0 / |stabilizer of a point inside
 * Stab(f)|. */
struct GermPrime {
    std::vector<int> orbit;   // coset indices into X
    mpq_class slope;
    int local_degree = 0;
    mpq_class inv;            // slope * local_degree mod Z, in [0,1)
    bool iota_fixed = false;  // iota maps the orbit onto itself
};

struct GermInvariants {
    int deg_center = 0;                       // [Q[pi] : Q] = orbit size of the germ
    std::vector<GermPrime> primes;
    mpz_class e = 1;                          // lcm of the inv denominators
    mpz_class dim = 0;                        // 2 dim = e * deg_center
    std::map<mpq_class, mpz_class> slope_multiplicity;
    bool reduced_degree_ok = false;
    bool supersingular = false;               // constant slope 1/2
    /* real places of Q[pi]: none for a CM centre; when the germ is fixed by
     * iota the centre is totally real and the endomorphism algebra ramifies
     * there with invariant 1/2 */
    int real_places = 0;
    bool brauer_sum_integral = false;         // sum of inv over all places is in Z
};

struct SimpleAVClass {
    std::vector<WeilGermSymbol> orbit;  // sorted; front() is the representative
    GermInvariants invariants;
};

/* All effective weight-1 germs on X = G/D, grouped into Galois orbits, in a
 * deterministic order (classes sorted by their lexicographically least
 * member).  The returned symbols refer to the given coset space, which must
 * outlive them. */
std::vector<SimpleAVClass> enumerate_simple_classes(const CosetSpace& x);

GermInvariants germ_invariants(const WeilGermSymbol& rep);

/* The slope-1/2 local-degree restriction: a class whose slopes are 0, 1/2, 1
 * with total 1/2-multiplicity 2 cannot have a 1/2-prime of local degree 1
 * (the rank-2 isocrystal factor is simple).  Returns one diagnostic per
 * offending prime; empty for every class arising from consistent germ data. */
std::vector<std::string> dieudonne_degree_check(const GermInvariants& inv);

}  // namespace cmlat

#endif
