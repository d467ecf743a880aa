#include "cmlat/lattice.hpp"

#include <algorithm>

namespace cmlat {

CharacterLattice::CharacterLattice(const FiniteGaloisGroup& g, Presentation pres,
                                   std::vector<std::string> labels,
                                   std::vector<std::vector<int>> perm,
                                   const ZMatrix& defining)
    : g_(&g), pres_(pres), labels_(std::move(labels)), perm_(std::move(perm)),
      defining_(hnf_basis(defining)) {
    const std::size_t s = labels_.size();
    if (perm_.size() != static_cast<std::size_t>(g.order()))
        throw error("lattice: action table must have one row per group element");
    for (const auto& p : perm_) {
        if (p.size() != s) throw error("lattice: action row size mismatch");
        std::vector<char> hit(s, 0);
        for (int v : p) {
            if (v < 0 || static_cast<std::size_t>(v) >= s || hit[v])
                throw error("lattice: action is not a permutation");
            hit[v] = 1;
        }
    }
    if (defining_.cols() != s && defining_.rows() > 0)
        throw error("lattice: defining rows have wrong width");
    if (defining_.rows() == 0) defining_ = ZMatrix(0, s);
    // the action must stabilize the defining span
    for (int gElt = 0; gElt < g.order(); ++gElt)
        for (std::size_t i = 0; i < defining_.rows(); ++i)
            if (!in_row_span(act(gElt, defining_.row(i)), defining_))
                throw error("lattice: group action does not preserve the presentation");
    // iota acts as an involution on the ambient (hence on the lattice)
    for (std::size_t i = 0; i < s; ++i)
        if (perm_[g.iota()][perm_[g.iota()][i]] != static_cast<int>(i))
            throw error("lattice: iota does not act as an involution");
}

std::size_t CharacterLattice::rank() const {
    if (pres_ == Presentation::Sub) return defining_.rows();
    return ambient_dim() - defining_.rows();
}

std::vector<mpz_class> CharacterLattice::torsion() const {
    if (pres_ == Presentation::Sub) return {};
    SmithResult sm = smith_normal_form(defining_);
    std::vector<mpz_class> t;
    for (const auto& d : sm.invariants())
        if (d > 1) t.push_back(d);
    return t;
}

ZVec CharacterLattice::act(int gElt, const ZVec& v) const {
    ZVec out(v.size());
    for (std::size_t s = 0; s < v.size(); ++s)
        out[perm_[gElt][s]] = v[s];
    return out;
}

ZVec CharacterLattice::canonical(const ZVec& v) const {
    if (pres_ == Presentation::Sub) return v;
    return reduce_mod_rows(v, defining_);
}

bool CharacterLattice::element_equal(const ZVec& a, const ZVec& b) const {
    if (pres_ == Presentation::Sub) return a == b;
    return canonical(a) == canonical(b);
}

bool CharacterLattice::is_member(const ZVec& v) const {
    if (pres_ == Presentation::Sub) return in_row_span(v, defining_);
    return v.size() == ambient_dim();
}

mpz_class CharacterLattice::weight_of(const ZVec& v) const {
    if (!weight_) throw error("lattice: no weight functional attached");
    mpz_class w = 0;
    for (std::size_t i = 0; i < v.size(); ++i) w += (*weight_)[i] * v[i];
    return w;
}

std::vector<std::vector<int>> translation_action(const CosetSpace& x) {
    const FiniteGaloisGroup& g = x.group();
    std::vector<std::vector<int>> perm(g.order(), std::vector<int>(x.size()));
    for (int gElt = 0; gElt < g.order(); ++gElt)
        for (int c = 0; c < x.size(); ++c) perm[gElt][c] = x.act(gElt, c);
    return perm;
}

Sublattice::Sublattice(const CharacterLattice& parent, const ZMatrix& rows)
    : parent_(&parent) {
    ZMatrix all = rows;
    if (all.rows() == 0) all = ZMatrix(0, parent.ambient_dim());
    if (all.cols() != parent.ambient_dim())
        throw error("sublattice: ambient dimension mismatch");
    if (parent.presentation() == Presentation::Quot)
        for (std::size_t i = 0; i < parent.defining().rows(); ++i)
            all.append_row(parent.defining().row(i));
    else
        for (std::size_t i = 0; i < all.rows(); ++i)
            if (!in_row_span(all.row(i), parent.defining()))
                throw error("sublattice: generator outside the lattice");
    rows_ = hnf_basis(all);
}

std::size_t Sublattice::rank_in_lattice() const {
    if (parent_->presentation() == Presentation::Quot)
        return rows_.rows() - parent_->defining().rows();
    return rows_.rows();
}

bool Sublattice::torsion_trivial() const {
    if (parent_->presentation() != Presentation::Quot) return true;
    return quotient_structure(rows_, parent_->defining()).torsion.empty();
}

bool Sublattice::contains(const ZVec& v) const {
    return in_row_span(v, rows_);
}

bool Sublattice::operator==(const Sublattice& o) const {
    if (parent_ != o.parent_) throw error("sublattice compare: different parents");
    return rows_ == o.rows_;
}

Sublattice Sublattice::sum(const Sublattice& o) const {
    if (parent_ != o.parent_) throw error("sublattice sum: different parents");
    ZMatrix all = rows_;
    for (std::size_t i = 0; i < o.rows_.rows(); ++i) all.append_row(o.rows_.row(i));
    return Sublattice(*parent_, all);
}

Sublattice Sublattice::intersect(const Sublattice& o) const {
    if (parent_ != o.parent_) throw error("sublattice intersect: different parents");
    // x = u*B1 = v*B2  <=>  (u, v) in the left kernel of [B1; -B2]
    const ZMatrix& b1 = rows_;
    const ZMatrix& b2 = o.rows_;
    ZMatrix stacked = b1;
    for (std::size_t i = 0; i < b2.rows(); ++i) stacked.append_row(negate(b2.row(i)));
    ZMatrix k = left_kernel(stacked);
    ZMatrix inter(0, parent_->ambient_dim());
    for (std::size_t i = 0; i < k.rows(); ++i) {
        ZVec u(b1.rows());
        for (std::size_t j = 0; j < b1.rows(); ++j) u[j] = k.at(i, j);
        inter.append_row(mul_row(u, b1));
    }
    return Sublattice(*parent_, inter);
}

Sublattice Sublattice::saturate() const {
    return Sublattice(*parent_, row_saturation(rows_));
}

bool Sublattice::is_saturated() const {
    return rows_ == saturate().rows();
}

QuotientStructure Sublattice::structure() const {
    if (parent_->presentation() == Presentation::Quot)
        return quotient_structure(rows_, parent_->defining());
    return quotient_structure(rows_, ZMatrix(0, parent_->ambient_dim()));
}

Sublattice zero_sublattice(const CharacterLattice& l) {
    return Sublattice(l, ZMatrix(0, l.ambient_dim()));
}

Sublattice full_sublattice(const CharacterLattice& l) {
    if (l.presentation() == Presentation::Quot)
        return Sublattice(l, ZMatrix::identity(l.ambient_dim()));
    return Sublattice(l, l.defining());
}

Sublattice span_sublattice(const CharacterLattice& l, const std::vector<ZVec>& gens) {
    ZMatrix m(0, l.ambient_dim());
    for (const auto& v : gens) m.append_row(v);
    return Sublattice(l, m);
}

SubgroupAlgebra subgroup_algebra(const Sublattice& b1, const Sublattice& b2) {
    if (&b1.parent() != &b2.parent())
        throw error("subgroup_algebra: mismatched ambient lattices");
    return SubgroupAlgebra{
        b1.sum(b2),
        b1.intersect(b2),
        b1.saturate(),
        b2.saturate(),
        b1 == b2,
    };
}

EquivariantMap::EquivariantMap(const CharacterLattice& src, const CharacterLattice& dst,
                               ZMatrix m)
    : src_(&src), dst_(&dst), m_(std::move(m)) {
    if (m_.rows() != src.ambient_dim() || m_.cols() != dst.ambient_dim())
        throw error("equivariant map: matrix shape mismatch");
    validate();
}

ZMatrix EquivariantMap::source_generators() const {
    if (src_->presentation() == Presentation::Sub) return src_->defining();
    return ZMatrix::identity(src_->ambient_dim());
}

void EquivariantMap::validate() const {
    // well-defined: relations land in relations (Quot source), images land in
    // the target lattice
    if (src_->presentation() == Presentation::Quot) {
        for (std::size_t i = 0; i < src_->defining().rows(); ++i) {
            ZVec img = apply(src_->defining().row(i));
            bool ok = dst_->presentation() == Presentation::Quot
                          ? in_row_span(img, dst_->defining())
                          : is_zero(img);
            if (!ok) throw error("equivariant map: not well-defined on relations");
        }
    }
    ZMatrix gens = source_generators();
    for (std::size_t i = 0; i < gens.rows(); ++i) {
        ZVec img = apply(gens.row(i));
        if (dst_->presentation() == Presentation::Sub && !dst_->is_member(img))
            throw error("equivariant map: image leaves the target lattice");
        for (int gElt = 0; gElt < src_->group().order(); ++gElt) {
            ZVec lhs = apply(src_->act(gElt, gens.row(i)));
            ZVec rhs = dst_->act(gElt, img);
            if (!dst_->element_equal(lhs, rhs))
                throw error("equivariant map: does not commute with the group action");
        }
    }
}

Sublattice EquivariantMap::kernel() const {
    // solve x*m in relations(dst) with x ranging over the source lattice
    const ZMatrix gens = source_generators();
    ZMatrix imgs(0, dst_->ambient_dim());
    for (std::size_t i = 0; i < gens.rows(); ++i) imgs.append_row(apply(gens.row(i)));

    const ZMatrix& rel = dst_->presentation() == Presentation::Quot
                             ? dst_->defining()
                             : ZMatrix(0, dst_->ambient_dim());
    // (u, v) with u*imgs = v*rel
    ZMatrix stacked = imgs;
    for (std::size_t i = 0; i < rel.rows(); ++i) stacked.append_row(negate(rel.row(i)));
    ZMatrix k = left_kernel(stacked);
    ZMatrix kernelRows(0, src_->ambient_dim());
    for (std::size_t i = 0; i < k.rows(); ++i) {
        ZVec u(gens.rows());
        for (std::size_t j = 0; j < gens.rows(); ++j) u[j] = k.at(i, j);
        kernelRows.append_row(mul_row(u, gens));
    }
    return Sublattice(*src_, kernelRows);
}

Sublattice EquivariantMap::image() const {
    const ZMatrix gens = source_generators();
    ZMatrix imgs(0, dst_->ambient_dim());
    for (std::size_t i = 0; i < gens.rows(); ++i) imgs.append_row(apply(gens.row(i)));
    return Sublattice(*dst_, imgs);
}

QuotientStructure EquivariantMap::cokernel() const {
    Sublattice im = image();
    return quotient_structure(full_sublattice(*dst_).rows(), im.rows());
}

CharacterLattice quotient_lattice(const FiniteGaloisGroup& g,
                                  std::vector<std::string> labels,
                                  std::vector<std::vector<int>> perm,
                                  const ZMatrix& relations) {
    return CharacterLattice(g, Presentation::Quot, std::move(labels), std::move(perm),
                            relations);
}

}  // namespace cmlat
