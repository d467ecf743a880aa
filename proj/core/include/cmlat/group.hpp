#ifndef CMLAT_GROUP_HPP
#define CMLAT_GROUP_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cmlat/zmatrix.hpp"

namespace cmlat {

/* A finite Galois group Gal(K/Q) for a CM field K, given by its full
 * multiplication table, with a distinguished central involution iota
 * (complex conjugation).  Elements are dense indices 0..n-1 with a fixed
 * ordering per preset, so every downstream basis is reproducible. */
class FiniteGaloisGroup {
public:
    FiniteGaloisGroup(std::vector<std::vector<int>> table, int iota,
                      std::vector<std::string> labels);

    int order() const { return n_; }
    int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int id() const { return id_; }
    int iota() const { return iota_; }
    const std::string& label(int a) const { return labels_[a]; }
    std::optional<int> index_of(const std::string& label) const;

private:
    int n_ = 0;
    std::vector<int> mul_;
    std::vector<int> inv_;
    int id_ = 0;
    int iota_ = 0;
    std::vector<std::string> labels_;
    void validate();
};

/* Presets: C2, C4, C6, C2xC2, C2xC4, S3xC2.  Cyclic groups C2k are written
 * multiplicatively with generator t and iota = t^k; C2xC2 has generators
 * i (= iota) and c; C2xC4 has i (= iota) and t of order 4; S3xC2 is
 * {e,r,r2,s,sr,sr2} x {1,i} with iota = i central.  Ordering is the listed
 * one, id first. */
FiniteGaloisGroup build_group(const std::string& preset);
FiniteGaloisGroup build_group(const std::string& preset, const std::string& iotaLabel);
std::vector<std::string> known_presets();

class SubgroupHandle {
public:
    SubgroupHandle(const FiniteGaloisGroup& g, std::vector<int> members);

    static SubgroupHandle trivial(const FiniteGaloisGroup& g);
    static SubgroupHandle full(const FiniteGaloisGroup& g);
    static SubgroupHandle generated_by(const FiniteGaloisGroup& g, const std::vector<int>& gens);

    const FiniteGaloisGroup& parent() const { return *g_; }
    const std::vector<int>& members() const { return members_; }
    int order() const { return static_cast<int>(members_.size()); }
    bool contains(int x) const;
    bool contains_subgroup(const SubgroupHandle& h) const;
    bool operator==(const SubgroupHandle& o) const { return members_ == o.members_; }

private:
    const FiniteGaloisGroup* g_;
    std::vector<int> members_;  // sorted
};

/* All subgroups of G, ordered by (order, member list). */
std::vector<SubgroupHandle> all_subgroups(const FiniteGaloisGroup& g);

/* Left coset space G/H.  Cosets are ordered by their minimal element, so the
 * base coset (the one containing id) is always index 0. */
class CosetSpace {
public:
    CosetSpace(const FiniteGaloisGroup& g, SubgroupHandle h);

    const FiniteGaloisGroup& group() const { return *g_; }
    const SubgroupHandle& subgroup() const { return h_; }
    int size() const { return static_cast<int>(cosets_.size()); }
    const std::vector<int>& coset(int c) const { return cosets_[c]; }
    int rep(int c) const { return cosets_[c].front(); }  // minimal element
    int base() const { return 0; }
    int coset_of(int g) const { return cosetOf_[g]; }
    int act(int g, int c) const { return cosetOf_[g_->mul(g, rep(c))]; }
    int iota_act(int c) const { return act(g_->iota(), c); }
    bool iota_free() const;  // no coset fixed by iota

private:
    const FiniteGaloisGroup* g_;
    SubgroupHandle h_;
    std::vector<std::vector<int>> cosets_;
    std::vector<int> cosetOf_;
};

/* Whether H*D = D*H as element sets; when true, H*D is itself a subgroup and
 * is returned. */
struct DoubleCosetResult {
    bool commutes = false;
    std::optional<SubgroupHandle> product;
};
DoubleCosetResult double_coset_commute(const SubgroupHandle& h, const SubgroupHandle& d);

/* Partition of X = G/D induced by the translates Sigma_i * w0 of the cosets
 * Sigma_0..Sigma_{n-1} of a subgroup Sigma_0, under the hypothesis
 * Sigma_0*D = D*Sigma_0.  Returns the m distinct blocks (the first is
 * Sigma_0*w0), the index map i -> j(i), and checks the counting identities
 * |X_j| = (Sigma_0*D : D) and #{i : j(i)=j} = n/m. */
struct BlockPartition {
    std::vector<std::vector<int>> blocks;  // coset indices into X, each sorted
    int m = 0;
    std::vector<int> jmap;
    int block_size = 0;  // (Sigma_0*D : D)
};
BlockPartition block_partition(const std::vector<std::vector<int>>& sigmas,
                               const SubgroupHandle& sigma0, const SubgroupHandle& d,
                               const CosetSpace& x);

/* Cosets of `inner` lying inside `outer` (inner <= outer <= G), ordered by
 * minimal element; the first is `inner` itself. */
std::vector<std::vector<int>> cosets_within(const SubgroupHandle& inner,
                                            const SubgroupHandle& outer);

}  // namespace cmlat

#endif
