#ifndef CMLAT_LATTICE_HPP
#define CMLAT_LATTICE_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cmlat/group.hpp"
#include "cmlat/zmatrix.hpp"

namespace cmlat {

enum class Presentation { Sub, Quot };

/* A finitely generated abelian group with Gal(K/Q)-action, presented inside
 * an ambient Z^S where the group permutes the labelled basis S.  Two
 * presentations occur:
 *
 *   Sub:  the row span of `defining` inside Z^S       (e.g. X*(S^K), W^K)
 *   Quot: Z^S modulo the row span of `defining`       (e.g. X*(L(A)))
 *
 * The defining matrix is kept in HNF, so equal lattices have equal data.
 * Elements are ambient vectors; for Quot lattices the canonical
 * representative reduces every relation-pivot coordinate into [0, pivot). */
class CharacterLattice {
public:
    CharacterLattice(const FiniteGaloisGroup& g, Presentation pres,
                     std::vector<std::string> labels,
                     std::vector<std::vector<int>> perm,  // perm[gElt][s] = gElt . s
                     const ZMatrix& defining);

    const FiniteGaloisGroup& group() const { return *g_; }
    Presentation presentation() const { return pres_; }
    std::size_t ambient_dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const ZMatrix& defining() const { return defining_; }
    std::size_t rank() const;
    std::vector<mpz_class> torsion() const;  // invariant factors > 1 (Quot only)

    ZVec act(int gElt, const ZVec& v) const;
    int act_index(int gElt, std::size_t s) const { return perm_[gElt][s]; }

    ZVec canonical(const ZVec& v) const;
    bool element_equal(const ZVec& a, const ZVec& b) const;
    bool is_member(const ZVec& v) const;  // Sub: in the row span; Quot: always

    void set_weight(ZVec w) { weight_ = std::move(w); }
    void set_tate(ZVec t) { tate_ = std::move(t); }
    const std::optional<ZVec>& weight_functional() const { return weight_; }
    const std::optional<ZVec>& tate_element() const { return tate_; }
    mpz_class weight_of(const ZVec& v) const;

private:
    const FiniteGaloisGroup* g_;
    Presentation pres_;
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> perm_;
    ZMatrix defining_;  // HNF basis rows
    std::optional<ZVec> weight_;
    std::optional<ZVec> tate_;
};

/* Convenience: ambient Z^{coset space} with the left-translation action. */
std::vector<std::vector<int>> translation_action(const CosetSpace& x);

/* A subgroup of a CharacterLattice, stored as the HNF span of ambient rows.
 * For a Quot parent the rows always include the relation span, i.e. the
 * subgroup is stored as its full preimage in the ambient. */
class Sublattice {
public:
    Sublattice(const CharacterLattice& parent, const ZMatrix& rows);

    const CharacterLattice& parent() const { return *parent_; }
    const ZMatrix& rows() const { return rows_; }
    std::size_t rank_in_lattice() const;

    bool contains(const ZVec& v) const;
    bool operator==(const Sublattice& o) const;

    Sublattice sum(const Sublattice& o) const;
    Sublattice intersect(const Sublattice& o) const;
    Sublattice saturate() const;
    bool is_saturated() const;
    bool is_zero() const { return rank_in_lattice() == 0 && torsion_trivial(); }

    /* Invariant factors and free generators of the subgroup as an abstract
     * group (for a Quot parent, of rows/relations). */
    QuotientStructure structure() const;

private:
    const CharacterLattice* parent_;
    ZMatrix rows_;  // HNF
    bool torsion_trivial() const;
};

Sublattice zero_sublattice(const CharacterLattice& l);
Sublattice full_sublattice(const CharacterLattice& l);
Sublattice span_sublattice(const CharacterLattice& l, const std::vector<ZVec>& gens);

/* Outcome of subgroup comparison: sum, intersection, saturations and the
 * exact equality verdict (Hermite bases compared, not just ranks). */
struct SubgroupAlgebra {
    Sublattice sum;
    Sublattice intersection;
    Sublattice sat1, sat2;
    bool equal;
};
SubgroupAlgebra subgroup_algebra(const Sublattice& b1, const Sublattice& b2);

/* A map of lattices-with-action given by its values on the ambient basis of
 * the source (rows of `m`, written in ambient coordinates of the target).
 * For a Sub source only the restriction to the sublattice is meaningful;
 * validation and kernels are computed on the sublattice. */
class EquivariantMap {
public:
    EquivariantMap(const CharacterLattice& src, const CharacterLattice& dst, ZMatrix m);

    const CharacterLattice& src() const { return *src_; }
    const CharacterLattice& dst() const { return *dst_; }
    const ZMatrix& matrix() const { return m_; }

    ZVec apply(const ZVec& v) const { return mul_row(v, m_); }

    /* well-defined on the presentation and commuting with the group action */
    void validate() const;

    Sublattice kernel() const;
    Sublattice image() const;
    /* Cokernel of the map of lattices: free rank and invariant factors. */
    QuotientStructure cokernel() const;

private:
    const CharacterLattice* src_;
    const CharacterLattice* dst_;
    ZMatrix m_;
    ZMatrix source_generators() const;  // lattice generators as ambient rows
};

/* Z^S / relations, with the invariant factors reported. */
CharacterLattice quotient_lattice(const FiniteGaloisGroup& g,
                                  std::vector<std::string> labels,
                                  std::vector<std::vector<int>> perm,
                                  const ZMatrix& relations);

}  // namespace cmlat

#endif
