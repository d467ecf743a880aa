#include "cmlat/cm.hpp"

#include <algorithm>
#include <set>

namespace cmlat {

namespace {

void check_phi(const CosetSpace& space, const std::vector<int>& phi) {
    if (static_cast<int>(phi.size()) != space.size())
        throw error("cm type: phi must assign 0/1 to every embedding");
    for (int v : phi)
        if (v != 0 && v != 1) throw error("cm type: phi values must be 0 or 1");
    for (int c = 0; c < space.size(); ++c)
        if (phi[c] + phi[space.iota_act(c)] != 1)
            throw error("cm type: phi + iota.phi = 1 fails (factor not totally "
                        "imaginary, or phi picks both of a conjugate pair)");
}

}  // namespace

CMTypeSpec::CMTypeSpec(CosetSpace space_, std::vector<int> phi_, std::string name_)
    : space(std::move(space_)), phi(std::move(phi_)), name(std::move(name_)) {
    check_phi(space, phi);
}

ZVec CMTypeSpec::psi(int sigmaCoset) const {
    const FiniteGaloisGroup& g = space.group();
    ZVec out(g.order());
    int rep = space.rep(sigmaCoset);
    for (int tau = 0; tau < g.order(); ++tau)
        out[tau] = phi[space.coset_of(g.mul(g.inv(tau), rep))];
    return out;
}

AVCharZeroSpec::AVCharZeroSpec(std::vector<CMTypeSpec> factors_, std::vector<int> mult)
    : factors(std::move(factors_)), multiplicities(std::move(mult)) {
    if (factors.empty()) throw error("product spec: no factors");
    if (multiplicities.empty()) multiplicities.assign(factors.size(), 1);
    if (multiplicities.size() != factors.size())
        throw error("product spec: multiplicity count mismatch");
    const FiniteGaloisGroup* g = &factors.front().space.group();
    for (const auto& f : factors)
        if (&f.space.group() != g)
            throw error("product spec: factors over different groups");
    for (std::size_t i = 0; i < factors.size(); ++i)
        for (std::size_t j = i + 1; j < factors.size(); ++j)
            if (factors[i].space.subgroup().members() ==
                    factors[j].space.subgroup().members() &&
                factors[i].phi == factors[j].phi)
                throw error("product spec: factors '" + factors[i].name + "' and '" +
                            factors[j].name +
                            "' are equal; repeated factors carry no new structure and "
                            "are rejected rather than merged");
}

std::size_t AVCharZeroSpec::total_embeddings() const {
    std::size_t n = 0;
    for (const auto& f : factors) n += static_cast<std::size_t>(f.space.size());
    return n;
}

CharacterLattice serre_lattice(const FiniteGaloisGroup& g) {
    const int n = g.order();
    // unknowns (f, c); conditions f(tau) + f(iota tau) - c = 0 for all tau
    ZMatrix cond(n + 1, n);
    for (int tau = 0; tau < n; ++tau) {
        cond.at(tau, tau) += 1;
        cond.at(g.mul(g.iota(), tau), tau) += 1;
        cond.at(n, tau) = -1;
    }
    ZMatrix sol = left_kernel(cond);
    ZMatrix basis(0, n);
    for (std::size_t i = 0; i < sol.rows(); ++i) {
        ZVec f(n);
        for (int j = 0; j < n; ++j) f[j] = sol.at(i, j);
        basis.append_row(f);
    }
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(g.label(i));
    std::vector<std::vector<int>> perm(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int x = 0; x < n; ++x) perm[a][x] = g.mul(a, x);
    CharacterLattice lat(g, Presentation::Sub, std::move(labels), std::move(perm), basis);
    ZVec wt(n);
    wt[g.id()] = 1;
    wt[g.iota()] += 1;
    lat.set_weight(std::move(wt));
    return lat;
}

CMTypeTools cm_type_tools(const CosetSpace& space, const std::vector<int>& phi) {
    CMTypeTools out;
    try {
        check_phi(space, phi);
    } catch (const error&) {
        return out;
    }
    out.valid = true;
    const FiniteGaloisGroup& g = space.group();

    std::set<int> phiSet;
    for (int c = 0; c < space.size(); ++c)
        if (phi[c]) phiSet.insert(c);
    std::vector<int> stab;
    for (int tau = 0; tau < g.order(); ++tau) {
        std::set<int> img;
        for (int c : phiSet) img.insert(space.act(tau, c));
        if (img == phiSet) stab.push_back(tau);
    }
    out.reflex_subgroup = SubgroupHandle(g, stab);

    // primitivity: no intermediate H' > H with iota outside H' on whose
    // fibres phi is constant; single-generator extensions suffice
    out.primitive = true;
    const SubgroupHandle& h = space.subgroup();
    for (int x = 0; x < g.order() && out.primitive; ++x) {
        if (h.contains(x)) continue;
        std::vector<int> gens = h.members();
        gens.push_back(x);
        SubgroupHandle hp = SubgroupHandle::generated_by(g, gens);
        if (hp.contains(g.iota())) continue;  // K^{H'} not a CM-field
        CosetSpace coarse(g, hp);
        std::vector<int> value(coarse.size(), -1);
        bool constant = true;
        for (int c = 0; c < space.size() && constant; ++c) {
            int cc = coarse.coset_of(space.rep(c));
            if (value[cc] < 0)
                value[cc] = phi[c];
            else if (value[cc] != phi[c])
                constant = false;
        }
        if (constant) out.primitive = false;
    }
    return out;
}

LefschetzAmbient lefschetz_ambient(const AVCharZeroSpec& spec) {
    const FiniteGaloisGroup& g = spec.group();
    LefschetzAmbient amb;
    for (const auto& f : spec.factors) {
        std::size_t begin = amb.labels.size();
        for (int c = 0; c < f.space.size(); ++c)
            amb.labels.push_back(f.name + "." + g.label(f.space.rep(c)));
        amb.factor_ranges.emplace_back(begin, amb.labels.size());
    }
    const std::size_t s = amb.labels.size();
    amb.perm.assign(g.order(), std::vector<int>(s));
    for (int a = 0; a < g.order(); ++a) {
        std::size_t off = 0;
        for (const auto& f : spec.factors) {
            for (int c = 0; c < f.space.size(); ++c)
                amb.perm[a][off + c] = static_cast<int>(off) + f.space.act(a, c);
            off += f.space.size();
        }
    }
    amb.iota_of.assign(s, 0);
    for (std::size_t i = 0; i < s; ++i) amb.iota_of[i] = amb.perm[g.iota()][i];
    return amb;
}

CharacterLattice lefschetz_lattice_over(const FiniteGaloisGroup& g,
                                        std::vector<std::string> labels,
                                        std::vector<std::vector<int>> perm,
                                        const std::vector<int>& iotaOf, bool allowFixed) {
    const std::size_t n = labels.size();
    if (!allowFixed)
        for (std::size_t i = 0; i < n; ++i)
            if (iotaOf[i] == static_cast<int>(i))
                throw error("lefschetz lattice: iota-fixed embedding (rational factor) "
                            "not allowed in characteristic zero");
    // relations {g : g = iota.g, sum g = 0} = left kernel of [I - P_iota | 1]
    ZMatrix cond(n, n + 1);
    for (std::size_t x = 0; x < n; ++x) {
        cond.at(x, x) += 1;
        cond.at(static_cast<std::size_t>(iotaOf[x]), x) -= 1;
        cond.at(x, n) = 1;
    }
    ZMatrix rel = left_kernel(cond);
    CharacterLattice lat = quotient_lattice(g, std::move(labels), std::move(perm), rel);
    ZVec wt(n, 1);
    lat.set_weight(std::move(wt));
    ZVec t(n);
    t[0] -= 1;
    t[static_cast<std::size_t>(iotaOf[0])] -= 1;
    lat.set_tate(lat.canonical(t));
    if (lat.weight_of(*lat.tate_element()) != -2)
        throw error("lefschetz lattice: t o w != -2");
    return lat;
}

CharacterLattice lefschetz_lattice(const AVCharZeroSpec& spec) {
    LefschetzAmbient amb = lefschetz_ambient(spec);
    return lefschetz_lattice_over(spec.group(), amb.labels, amb.perm, amb.iota_of,
                                  /*allowFixed=*/false);
}

EquivariantMap rho_phi_map(const AVCharZeroSpec& spec, const CharacterLattice& lef,
                           const CharacterLattice& serre) {
    const FiniteGaloisGroup& g = spec.group();
    ZMatrix m(lef.ambient_dim(), serre.ambient_dim());
    std::size_t off = 0;
    for (const auto& f : spec.factors) {
        for (int c = 0; c < f.space.size(); ++c) {
            ZVec psi = f.psi(c);
            if (!serre.is_member(psi))
                throw error("rho_phi: psi_sigma fails the Serre membership test "
                            "(f + iota.f not constant); K is too small for this "
                            "CM-type");
            m.set_row(off + c, psi);
        }
        off += f.space.size();
    }
    (void)g;
    return EquivariantMap(lef, serre, std::move(m));
}

namespace {

ZVec generator_rep(const CharacterLattice& l, const ZVec& v) {
    ZVec a = l.canonical(v);
    ZVec b = l.canonical(negate(v));
    return std::min(a, b, [](const ZVec& x, const ZVec& y) {
        return std::lexicographical_compare(
            x.begin(), x.end(), y.begin(), y.end(),
            [](const mpz_class& p, const mpz_class& q) { return p < q; });
    });
}

}  // namespace

MTKernel mt_kernel_and_exotic(const EquivariantMap& rhoPhi) {
    MTKernel out{rhoPhi.kernel(), false, std::nullopt};
    QuotientStructure qs = out.kernel.structure();
    out.exotic_hodge_exists = qs.free_rank > 0 || !qs.torsion.empty();
    if (qs.free_rank == 1 && qs.torsion.empty())
        out.generator = generator_rep(rhoPhi.src(), qs.free_gens.row(0));
    return out;
}

bool mt_trivial_direct(const AVCharZeroSpec& spec, const CharacterLattice& lef,
                       const ZVec& classVec) {
    if (classVec.size() != lef.ambient_dim())
        throw error("mt_trivial_direct: class vector has the wrong ambient size");
    const FiniteGaloisGroup& g = spec.group();
    for (int tau = 0; tau < g.order(); ++tau) {
        mpz_class s = 0;
        std::size_t off = 0;
        for (const auto& f : spec.factors) {
            for (int c = 0; c < f.space.size(); ++c)
                if (f.phi[c]) s += classVec[off + f.space.act(tau, c)];
            off += f.space.size();
        }
        if (s != 0) return false;
    }
    return true;
}

A1Correspondence a1_correspondence_check(const AVCharZeroSpec& spec) {
    LefschetzAmbient amb = lefschetz_ambient(spec);
    return a1_correspondence_check(spec, ZVec(amb.labels.size(), 1));
}

A1Correspondence a1_correspondence_check(const AVCharZeroSpec& spec, const ZVec& parity) {
    const FiniteGaloisGroup& g = spec.group();
    LefschetzAmbient amb = lefschetz_ambient(spec);
    const std::size_t n = amb.labels.size();
    if (parity.size() != n) throw error("a1 correspondence: parity size mismatch");
    for (std::size_t i = 0; i < n; ++i)
        if ((parity[i] - parity[static_cast<std::size_t>(amb.iota_of[i])]) % 2 != 0)
            throw error("a1 correspondence: parity functional is not iota-stable");

    CharacterLattice lef = lefschetz_lattice(spec);

    // the (T0, epsilon) side: Z^S / {g = iota.g}, parity chi -> chi(epsilon)
    ZMatrix cond0(n, n);
    for (std::size_t x = 0; x < n; ++x) {
        cond0.at(x, x) += 1;
        cond0.at(static_cast<std::size_t>(amb.iota_of[x]), x) -= 1;
    }
    ZMatrix rel0 = left_kernel(cond0);

    // reconstructed X*(T) lives in Z^{S + 1} modulo rel0 (extended by 0)
    std::vector<std::string> labelsT = amb.labels;
    labelsT.push_back("#w");
    std::vector<std::vector<int>> permT(g.order(), std::vector<int>(n + 1));
    for (int a = 0; a < g.order(); ++a) {
        for (std::size_t x = 0; x < n; ++x) permT[a][x] = amb.perm[a][x];
        permT[a][n] = static_cast<int>(n);
    }
    ZMatrix relT(0, n + 1);
    for (std::size_t i = 0; i < rel0.rows(); ++i) {
        ZVec r = rel0.row(i);
        r.push_back(0);
        relT.append_row(r);
    }
    CharacterLattice latT = quotient_lattice(g, labelsT, permT, relT);

    // the parity subgroup {(chi0, m) : parity(chi0) = m mod 2}
    ZMatrix parityGens(0, n + 1);
    for (std::size_t x = 0; x < n; ++x) {
        ZVec v(n + 1);
        v[x] = 1;
        v[n] = parity[x];
        parityGens.append_row(v);
    }
    {
        ZVec v(n + 1);
        v[n] = 2;
        parityGens.append_row(v);
    }
    Sublattice paritySub(latT, parityGens);

    // comparison map [g] -> ([g]0, wt g)
    ZMatrix m(n, n + 1);
    for (std::size_t x = 0; x < n; ++x) {
        m.at(x, x) = 1;
        m.at(x, n) = 1;
    }
    EquivariantMap theta(lef, latT, m);

    A1Correspondence out;
    out.isomorphic = theta.kernel().is_zero() && theta.image() == paritySub;
    // weight on T is the extra coordinate; on L it is sum of coordinates
    out.weight_matches = true;
    for (std::size_t x = 0; x < n && out.weight_matches; ++x) {
        ZVec unit(n);
        unit[x] = 1;
        ZVec img = theta.apply(unit);
        out.weight_matches = img[n] == lef.weight_of(unit);
    }
    ZVec tL = *lef.tate_element();
    ZVec tT(n + 1);
    tT[n] = -2;
    out.tate_matches = latT.element_equal(theta.apply(tL), tT);
    out.tw_is_minus_two = tT[n] == -2 && lef.weight_of(tL) == -2;
    return out;
}

}  // namespace cmlat
