#include "cmlat/group.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cmlat {

FiniteGaloisGroup::FiniteGaloisGroup(std::vector<std::vector<int>> table, int iota,
                                     std::vector<std::string> labels)
    : n_(static_cast<int>(table.size())), iota_(iota), labels_(std::move(labels)) {
    if (n_ == 0 || n_ > 64) throw error("group: order must be in 1..64");
    mul_.resize(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i) {
        if (static_cast<int>(table[i].size()) != n_) throw error("group: ragged table");
        for (int j = 0; j < n_; ++j) {
            int v = table[i][j];
            if (v < 0 || v >= n_) throw error("group: table entry out of range");
            mul_[static_cast<std::size_t>(i) * n_ + j] = v;
        }
    }
    if (labels_.empty()) {
        for (int i = 0; i < n_; ++i) labels_.push_back("g" + std::to_string(i));
    }
    if (static_cast<int>(labels_.size()) != n_) throw error("group: label count mismatch");
    validate();
}

void FiniteGaloisGroup::validate() {
    // identity
    int id = -1;
    for (int e = 0; e < n_; ++e) {
        bool ok = true;
        for (int x = 0; x < n_ && ok; ++x)
            ok = mul(e, x) == x && mul(x, e) == x;
        if (ok) {
            id = e;
            break;
        }
    }
    if (id != 0) throw error("group: element 0 must be the identity");
    id_ = 0;
    // associativity (exhaustive; |G| <= 64)
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            for (int c = 0; c < n_; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw error("group: multiplication table is not associative");
    // inverses
    inv_.assign(n_, -1);
    for (int a = 0; a < n_; ++a) {
        for (int b = 0; b < n_; ++b)
            if (mul(a, b) == id_ && mul(b, a) == id_) {
                inv_[a] = b;
                break;
            }
        if (inv_[a] < 0) throw error("group: missing inverse");
    }
    // iota: central involution, not the identity
    if (iota_ < 0 || iota_ >= n_) throw error("group: iota out of range");
    if (iota_ == id_) throw error("group: iota must differ from the identity");
    if (mul(iota_, iota_) != id_) throw error("group: iota is not an involution");
    for (int g = 0; g < n_; ++g)
        if (mul(iota_, g) != mul(g, iota_)) throw error("group: iota is not central");
}

std::optional<int> FiniteGaloisGroup::index_of(const std::string& label) const {
    for (int i = 0; i < n_; ++i)
        if (labels_[i] == label) return i;
    return std::nullopt;
}

namespace {

struct PresetDef {
    std::vector<std::vector<int>> table;
    int iota;
    std::vector<std::string> labels;
};

PresetDef cyclic(int n) {
    PresetDef p;
    p.table.assign(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p.table[i][j] = (i + j) % n;
    p.iota = n / 2;
    p.labels.push_back("e");
    for (int i = 1; i < n; ++i)
        p.labels.push_back(i == 1 ? "t" : "t" + std::to_string(i));
    return p;
}

PresetDef product_c2(const PresetDef& base, const std::string& prefix) {
    // C2 x base with the C2 generator written `prefix`; index = c*|base| + b
    int n = static_cast<int>(base.table.size());
    PresetDef p;
    p.table.assign(2 * n, std::vector<int>(2 * n));
    for (int c1 = 0; c1 < 2; ++c1)
        for (int b1 = 0; b1 < n; ++b1)
            for (int c2 = 0; c2 < 2; ++c2)
                for (int b2 = 0; b2 < n; ++b2)
                    p.table[c1 * n + b1][c2 * n + b2] =
                        ((c1 + c2) % 2) * n + base.table[b1][b2];
    p.iota = n;  // (prefix, e)
    for (int c = 0; c < 2; ++c)
        for (int b = 0; b < n; ++b) {
            std::string l = base.labels[b];
            if (c == 1) l = (b == 0) ? prefix : prefix + l;
            p.labels.push_back(l);
        }
    return p;
}

PresetDef s3_times_c2() {
    // S3 = permutations of {0,1,2}; r = (0 1 2), s = (1 2); product means
    // (a*b)(x) = a(b(x)).
    const int perms[6][3] = {
        {0, 1, 2},  // e
        {1, 2, 0},  // r
        {2, 0, 1},  // r2
        {0, 2, 1},  // s
        {2, 1, 0},  // sr
        {1, 0, 2},  // sr2
    };
    auto compose = [&](int a, int b) {
        int img[3];
        for (int x = 0; x < 3; ++x) img[x] = perms[a][perms[b][x]];
        for (int k = 0; k < 6; ++k)
            if (perms[k][0] == img[0] && perms[k][1] == img[1] && perms[k][2] == img[2])
                return k;
        throw error("s3: compose");
    };
    PresetDef s3;
    s3.table.assign(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) s3.table[a][b] = compose(a, b);
    s3.labels = {"e", "r", "r2", "s", "sr", "sr2"};
    s3.iota = 0;  // unused; the C2 factor supplies iota
    return product_c2(s3, "i");
}

}  // namespace

FiniteGaloisGroup build_group(const std::string& preset) {
    PresetDef p;
    if (preset == "C2")
        p = cyclic(2);
    else if (preset == "C4")
        p = cyclic(4);
    else if (preset == "C6")
        p = cyclic(6);
    else if (preset == "C8")
        p = cyclic(8);
    else if (preset == "C2xC2") {
        p = product_c2(cyclic(2), "i");
        p.labels[1] = "c";
        p.labels[3] = "ic";
    }
    else if (preset == "C2xC4")
        p = product_c2(cyclic(4), "i");
    else if (preset == "S3xC2")
        p = s3_times_c2();
    else
        throw error("unknown group preset: " + preset);
    return FiniteGaloisGroup(p.table, p.iota, p.labels);
}

FiniteGaloisGroup build_group(const std::string& preset, const std::string& iotaLabel) {
    FiniteGaloisGroup g = build_group(preset);
    auto idx = g.index_of(iotaLabel);
    if (!idx) throw error("iota label not found: " + iotaLabel);
    if (*idx != g.iota())
        throw error("preset " + preset + " has iota = " + g.label(g.iota()) +
                    ", not " + iotaLabel);
    return g;
}

std::vector<std::string> known_presets() {
    return {"C2", "C4", "C6", "C8", "C2xC2", "C2xC4", "S3xC2"};
}

SubgroupHandle::SubgroupHandle(const FiniteGaloisGroup& g, std::vector<int> members)
    : g_(&g), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (members_.empty() || members_.front() < 0 || members_.back() >= g.order())
        throw error("subgroup: members out of range");
    if (!contains(g.id())) throw error("subgroup: missing identity");
    for (int a : members_) {
        if (!contains(g.inv(a))) throw error("subgroup: not closed under inverse");
        for (int b : members_)
            if (!contains(g.mul(a, b))) throw error("subgroup: not closed under product");
    }
}

SubgroupHandle SubgroupHandle::trivial(const FiniteGaloisGroup& g) {
    return SubgroupHandle(g, {g.id()});
}

SubgroupHandle SubgroupHandle::full(const FiniteGaloisGroup& g) {
    std::vector<int> all(g.order());
    for (int i = 0; i < g.order(); ++i) all[i] = i;
    return SubgroupHandle(g, std::move(all));
}

SubgroupHandle SubgroupHandle::generated_by(const FiniteGaloisGroup& g,
                                            const std::vector<int>& gens) {
    std::set<int> s{g.id()};
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> cur(s.begin(), s.end());
        for (int a : cur)
            for (int x : gens)
                for (int v : {g.mul(a, x), g.mul(x, a)})
                    if (s.insert(v).second) grew = true;
        for (int a : cur)
            for (int b : cur)
                if (s.insert(g.mul(a, b)).second) grew = true;
    }
    return SubgroupHandle(g, std::vector<int>(s.begin(), s.end()));
}

bool SubgroupHandle::contains(int x) const {
    return std::binary_search(members_.begin(), members_.end(), x);
}

bool SubgroupHandle::contains_subgroup(const SubgroupHandle& h) const {
    return std::all_of(h.members_.begin(), h.members_.end(),
                       [&](int x) { return contains(x); });
}

std::vector<SubgroupHandle> all_subgroups(const FiniteGaloisGroup& g) {
    std::set<std::vector<int>> seen;
    seen.insert({g.id()});
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<int>> cur(seen.begin(), seen.end());
        for (const auto& m : cur)
            for (int x = 0; x < g.order(); ++x) {
                std::vector<int> gens = m;
                gens.push_back(x);
                auto h = SubgroupHandle::generated_by(g, gens);
                if (seen.insert(h.members()).second) grew = true;
            }
    }
    std::vector<SubgroupHandle> out;
    for (const auto& m : seen) out.emplace_back(g, m);
    std::sort(out.begin(), out.end(), [](const SubgroupHandle& a, const SubgroupHandle& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.members() < b.members();
    });
    return out;
}

CosetSpace::CosetSpace(const FiniteGaloisGroup& g, SubgroupHandle h)
    : g_(&g), h_(std::move(h)) {
    if (&h_.parent() != &g) throw error("coset space: subgroup of a different group");
    cosetOf_.assign(g.order(), -1);
    for (int x = 0; x < g.order(); ++x) {
        if (cosetOf_[x] >= 0) continue;
        std::vector<int> coset;
        for (int s : h_.members()) coset.push_back(g.mul(x, s));
        std::sort(coset.begin(), coset.end());
        // scanning x in increasing order makes coset reps minimal already
        int idx = static_cast<int>(cosets_.size());
        for (int y : coset) cosetOf_[y] = idx;
        cosets_.push_back(std::move(coset));
    }
}

bool CosetSpace::iota_free() const {
    for (int c = 0; c < size(); ++c)
        if (iota_act(c) == c) return false;
    return true;
}

DoubleCosetResult double_coset_commute(const SubgroupHandle& h, const SubgroupHandle& d) {
    if (&h.parent() != &d.parent()) throw error("double coset: different parent groups");
    const FiniteGaloisGroup& g = h.parent();
    std::set<int> hd, dh;
    for (int a : h.members())
        for (int b : d.members()) {
            hd.insert(g.mul(a, b));
            dh.insert(g.mul(b, a));
        }
    DoubleCosetResult res;
    res.commutes = hd == dh;
    if (res.commutes)
        res.product = SubgroupHandle(g, std::vector<int>(hd.begin(), hd.end()));
    return res;
}

BlockPartition block_partition(const std::vector<std::vector<int>>& sigmas,
                               const SubgroupHandle& sigma0, const SubgroupHandle& d,
                               const CosetSpace& x) {
    auto dc = double_coset_commute(sigma0, d);
    if (!dc.commutes)
        throw error("block partition: Sigma_0*D != D*Sigma_0; the translate sets need "
                    "not partition X and the analysis is refused");
    const FiniteGaloisGroup& g = sigma0.parent();

    BlockPartition bp;
    bp.block_size = dc.product->order() / d.order();
    const int n = static_cast<int>(sigmas.size());
    bp.jmap.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        std::set<int> blk;
        for (int s : sigmas[i]) blk.insert(x.act(s, x.base()));
        std::vector<int> block(blk.begin(), blk.end());
        int j = -1;
        for (std::size_t k = 0; k < bp.blocks.size(); ++k)
            if (bp.blocks[k] == block) {
                j = static_cast<int>(k);
                break;
            }
        if (j < 0) {
            j = static_cast<int>(bp.blocks.size());
            bp.blocks.push_back(block);
        }
        bp.jmap[i] = j;
    }
    bp.m = static_cast<int>(bp.blocks.size());

    // counting identities and the partition property
    for (const auto& blk : bp.blocks)
        if (static_cast<int>(blk.size()) != bp.block_size)
            throw error("block partition: block size mismatch");
    if (n % bp.m != 0) throw error("block partition: m does not divide n");
    std::vector<int> perBlock(bp.m, 0);
    for (int j : bp.jmap) perBlock[j]++;
    for (int c : perBlock)
        if (c != n / bp.m) throw error("block partition: uneven fibres over blocks");
    std::set<int> covered;
    for (const auto& blk : bp.blocks)
        for (int c : blk) {
            if (!covered.insert(c).second) throw error("block partition: blocks overlap");
            int ic = x.iota_act(c);
            if (!covered.insert(ic).second) throw error("block partition: blocks overlap");
        }
    if (static_cast<int>(covered.size()) != x.size())
        throw error("block partition: blocks and conjugates do not cover X");
    (void)g;
    return bp;
}

std::vector<std::vector<int>> cosets_within(const SubgroupHandle& inner,
                                            const SubgroupHandle& outer) {
    if (!outer.contains_subgroup(inner))
        throw error("cosets_within: inner subgroup not contained in outer");
    const FiniteGaloisGroup& g = inner.parent();
    std::vector<std::vector<int>> out;
    std::set<int> used;
    for (int x : outer.members()) {
        if (used.count(x)) continue;
        std::vector<int> coset;
        for (int s : inner.members()) coset.push_back(g.mul(x, s));
        std::sort(coset.begin(), coset.end());
        for (int y : coset) used.insert(y);
        out.push_back(std::move(coset));
    }
    return out;
}

}  // namespace cmlat
