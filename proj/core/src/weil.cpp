#include "cmlat/weil.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cmlat {

WeilGermSymbol::WeilGermSymbol(const CosetSpace& x, std::vector<mpz_class> f,
                               mpz_class weight)
    : x_(&x), f_(std::move(f)), weight_(std::move(weight)) {
    if (static_cast<int>(f_.size()) != x.size())
        throw error("weil germ: f must assign an integer to every prime");
    const mpz_class rhs = weight_ * x.subgroup().order();
    for (int w = 0; w < x.size(); ++w)
        if (f_[w] + f_[x.iota_act(w)] != rhs)
            throw error("weil germ: f + iota.f != weight * n0");
}

mpq_class WeilGermSymbol::slope(int w) const {
    mpq_class s(f_[w], n0());
    s.canonicalize();
    return s;
}

WeilGermSymbol WeilGermSymbol::acted_by(int gElt) const {
    const FiniteGaloisGroup& g = x_->group();
    std::vector<mpz_class> out(f_.size());
    for (int w = 0; w < x_->size(); ++w)
        out[w] = f_[x_->act(g.inv(gElt), w)];
    return WeilGermSymbol(*x_, std::move(out), weight_);
}

WeilGermSymbol WeilGermSymbol::operator+(const WeilGermSymbol& o) const {
    if (x_ != o.x_) throw error("weil germ: sum over different prime spaces");
    std::vector<mpz_class> out(f_.size());
    for (std::size_t i = 0; i < f_.size(); ++i) out[i] = f_[i] + o.f_[i];
    return WeilGermSymbol(*x_, std::move(out), weight_ + o.weight_);
}

bool WeilGermSymbol::operator<(const WeilGermSymbol& o) const {
    if (weight_ != o.weight_) return weight_ < o.weight_;
    return std::lexicographical_compare(f_.begin(), f_.end(), o.f_.begin(), o.f_.end(),
                                        [](const mpz_class& a, const mpz_class& b) {
                                            return a < b;
                                        });
}

bool WeilGermSymbol::effective() const {
    return std::all_of(f_.begin(), f_.end(), [](const mpz_class& v) { return v >= 0; });
}

std::string WeilGermSymbol::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < f_.size(); ++i) {
        if (i) os << ',';
        os << f_[i].get_str();
    }
    os << ')';
    return os.str();
}

WeilLatticeResult weil_lattice(const FiniteGaloisGroup& g, const SubgroupHandle& d) {
    CosetSpace x(g, d);
    const int nx = x.size();
    const int n0 = d.order();

    // ambient Z^X x Z with the translation action on X and trivial action on
    // the weight slot
    std::vector<std::string> labels;
    for (int w = 0; w < nx; ++w) labels.push_back("w." + g.label(x.rep(w)));
    labels.push_back("#wt");
    std::vector<std::vector<int>> perm(g.order(), std::vector<int>(nx + 1));
    for (int a = 0; a < g.order(); ++a) {
        for (int w = 0; w < nx; ++w) perm[a][w] = x.act(a, w);
        perm[a][nx] = nx;
    }

    WeilLatticeResult res{
        CharacterLattice(g, Presentation::Sub, labels, perm, ZMatrix(0, nx + 1)),
        false, {}, false, false, false, false, false};

    // iota-orbits on X (the primes of the maximal real subfield)
    std::vector<char> seen(nx, 0);
    for (int w = 0; w < nx; ++w) {
        if (seen[w]) continue;
        int iw = x.iota_act(w);
        seen[w] = 1;
        seen[iw] = 1;
        if (iw == w)
            res.y_orbits.push_back({w});
        else
            res.y_orbits.push_back({w, iw});
    }
    res.degenerate = d.contains(g.iota());

    // basis of {(f, m) : f(w) + f(iota w) = m*n0}
    ZMatrix cond(nx + 1, nx);
    for (int w = 0; w < nx; ++w) {
        cond.at(w, w) += 1;
        cond.at(x.iota_act(w), w) += 1;
        cond.at(nx, w) = -n0;
    }
    ZMatrix basis = left_kernel(cond);
    res.lattice = CharacterLattice(g, Presentation::Sub, labels, perm, basis);
    ZVec wt(nx + 1);
    wt[nx] = 1;
    res.lattice.set_weight(std::move(wt));

    if (res.degenerate) return res;  // the exact-sequence certificate needs split primes

    // certificate for 0 -> W^K -> Z^X x Z -> Z^Y -> 0, where the second map is
    // (f, m) -> f|Y - n0*m*sum(v)
    const int ny = static_cast<int>(res.y_orbits.size());
    ZMatrix second(nx + 1, ny);
    for (int v = 0; v < ny; ++v) {
        for (int w : res.y_orbits[v]) second.at(w, v) += 1;
        if (res.y_orbits[v].size() == 1) second.at(res.y_orbits[v][0], v) += 1;
        second.at(nx, v) = -n0;
    }
    res.first_injective = res.lattice.defining().rows() == res.lattice.rank();
    res.composite_zero = true;
    for (std::size_t i = 0; i < res.lattice.defining().rows(); ++i)
        if (!is_zero(mul_row(res.lattice.defining().row(i), second)))
            res.composite_zero = false;
    ZMatrix ker = left_kernel(second);
    res.middle_exact = hnf_basis(ker) == res.lattice.defining();
    QuotientStructure coker = quotient_structure(ZMatrix::identity(ny), hnf_basis(second));
    res.last_surjective = coker.free_rank == 0 && coker.torsion.empty();
    res.rank_identity =
        static_cast<int>(res.lattice.rank()) == nx + 1 - ny;
    return res;
}

ZVec germ_vector(const WeilGermSymbol& s) {
    ZVec v = s.f();
    v.push_back(s.weight());
    return v;
}

namespace {

SubgroupHandle germ_stabilizer(const WeilGermSymbol& s) {
    const FiniteGaloisGroup& g = s.prime_space().group();
    std::vector<int> stab;
    for (int a = 0; a < g.order(); ++a)
        if (s.acted_by(a) == s) stab.push_back(a);
    return SubgroupHandle(g, stab);
}

}  // namespace

GermInvariants germ_invariants(const WeilGermSymbol& rep) {
    const CosetSpace& x = rep.prime_space();
    const FiniteGaloisGroup& g = x.group();
    GermInvariants inv;

    SubgroupHandle hf = germ_stabilizer(rep);
    inv.deg_center = g.order() / hf.order();

    // primes of Q[pi] over p = orbits of Stab(f) on X
    std::vector<char> seen(x.size(), 0);
    for (int w0 = 0; w0 < x.size(); ++w0) {
        if (seen[w0]) continue;
        GermPrime pr;
        std::set<int> orbit;
        for (int a : hf.members()) orbit.insert(x.act(a, w0));
        pr.orbit.assign(orbit.begin(), orbit.end());
        for (int w : pr.orbit) seen[w] = 1;
        pr.slope = rep.slope(w0);
        int stabPt = 0;
        for (int a : hf.members())
            if (x.act(a, w0) == w0) ++stabPt;
        pr.local_degree = rep.n0() / stabPt;
        mpq_class ip = pr.slope * pr.local_degree;
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), ip.get_num().get_mpz_t(), ip.get_den().get_mpz_t());
        pr.inv = ip - mpq_class(fl);
        pr.inv.canonicalize();
        std::set<int> iotaImage;
        for (int w : pr.orbit) iotaImage.insert(x.iota_act(w));
        pr.iota_fixed = iotaImage == orbit;
        inv.primes.push_back(std::move(pr));
    }

    inv.e = 1;
    for (const auto& pr : inv.primes)
        mpz_lcm(inv.e.get_mpz_t(), inv.e.get_mpz_t(), pr.inv.get_den().get_mpz_t());
    mpz_class twoDim = inv.e * inv.deg_center;
    if (twoDim % 2 != 0) throw error("germ invariants: e * [Q[pi]:Q] must be even");
    inv.dim = twoDim / 2;

    mpz_class degSum = 0;
    for (const auto& pr : inv.primes) {
        mpq_class mult(twoDim * pr.local_degree);
        mult /= inv.deg_center;
        mult.canonicalize();
        if (mult.get_den() != 1) throw error("germ invariants: non-integral multiplicity");
        inv.slope_multiplicity[pr.slope] += mult.get_num();
        degSum += pr.local_degree;
    }
    mpz_class multSum = 0;
    for (const auto& [s, m] : inv.slope_multiplicity) multSum += m;
    inv.reduced_degree_ok = degSum == inv.deg_center && multSum == twoDim;

    inv.supersingular = true;
    for (const auto& pr : inv.primes)
        if (pr.slope != mpq_class(1, 2)) inv.supersingular = false;

    inv.real_places = hf.contains(g.iota()) ? inv.deg_center : 0;
    mpq_class total(inv.real_places);
    total /= 2;
    for (const auto& pr : inv.primes) total += pr.inv;
    total.canonicalize();
    inv.brauer_sum_integral = total.get_den() == 1;
    return inv;
}

std::vector<SimpleAVClass> enumerate_simple_classes(const CosetSpace& x) {
    const FiniteGaloisGroup& g = x.group();
    const int n0 = x.subgroup().order();

    // enumerate f >= 0 with f + iota.f = n0 over the iota-orbit pairs
    std::vector<std::pair<int, int>> slots;  // (w, iota w); singleton if equal
    std::vector<char> seen(x.size(), 0);
    for (int w = 0; w < x.size(); ++w) {
        if (seen[w]) continue;
        int iw = x.iota_act(w);
        seen[w] = seen[iw] = 1;
        slots.emplace_back(w, iw);
    }
    std::vector<WeilGermSymbol> all;
    std::vector<mpz_class> f(x.size());
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == slots.size()) {
            all.emplace_back(x, f, 1);
            return;
        }
        auto [w, iw] = slots[k];
        if (w == iw) {
            if (n0 % 2 != 0) return;  // no effective weight-1 germ at this slot
            f[w] = n0 / 2;
            self(self, k + 1);
            return;
        }
        for (int v = 0; v <= n0; ++v) {
            f[w] = v;
            f[iw] = n0 - v;
            self(self, k + 1);
        }
    };
    rec(rec, 0);
    std::sort(all.begin(), all.end());

    std::vector<SimpleAVClass> classes;
    std::set<std::size_t> used;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (used.count(i)) continue;
        std::set<WeilGermSymbol> orbit;
        for (int a = 0; a < g.order(); ++a) orbit.insert(all[i].acted_by(a));
        SimpleAVClass cls{std::vector<WeilGermSymbol>(orbit.begin(), orbit.end()), {}};
        for (std::size_t j = i; j < all.size(); ++j)
            if (orbit.count(all[j])) used.insert(j);
        cls.invariants = germ_invariants(cls.orbit.front());
        classes.push_back(std::move(cls));
    }
    return classes;
}

std::vector<std::string> dieudonne_degree_check(const GermInvariants& inv) {
    std::vector<std::string> out;
    const mpq_class half(1, 2);
    auto it = inv.slope_multiplicity.find(half);
    if (it == inv.slope_multiplicity.end() || it->second != 2) return out;
    if (!inv.slope_multiplicity.count(mpq_class(0)) ||
        !inv.slope_multiplicity.count(mpq_class(1)))
        return out;
    for (std::size_t i = 0; i < inv.primes.size(); ++i)
        if (inv.primes[i].slope == half && inv.primes[i].local_degree == 1) {
            std::ostringstream os;
            os << "prime #" << i
               << " has slope 1/2 and local degree 1, but the slope-1/2 part of the "
                  "isocrystal is a simple factor of rank 2 and forces degree 2";
            out.push_back(os.str());
        }
    return out;
}

}  // namespace cmlat
