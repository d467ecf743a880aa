#include "cmlat/reduction.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cmlat {

ReductionContext::ReductionContext(const FiniteGaloisGroup& g_, SubgroupHandle d_)
    : g(&g_), d(std::move(d_)), x(g_, d) {
    if (&d.parent() != g) throw error("reduction context: D over a different group");
}

WeilGermSymbol reduce_cm_factor(const CMTypeSpec& factor, const ReductionContext& ctx) {
    const FiniteGaloisGroup& g = *ctx.g;
    const CosetSpace& se = factor.space;

    // fibres Sigma_E(v) = left D-orbits on Sigma_E
    std::vector<int> fiber_of(se.size(), -1);
    std::vector<int> fiber_size, phi_count;
    for (int c = 0; c < se.size(); ++c) {
        if (fiber_of[c] >= 0) continue;
        int id = static_cast<int>(fiber_size.size());
        std::set<int> orbit;
        std::vector<int> todo{c};
        orbit.insert(c);
        while (!todo.empty()) {
            int cur = todo.back();
            todo.pop_back();
            for (int dElt : ctx.d.members()) {
                int nxt = se.act(dElt, cur);
                if (orbit.insert(nxt).second) todo.push_back(nxt);
            }
        }
        int phic = 0;
        for (int m : orbit) {
            fiber_of[m] = id;
            if (factor.phi[m]) ++phic;
        }
        fiber_size.push_back(static_cast<int>(orbit.size()));
        phi_count.push_back(phic);
    }

    // the prime of E under w in X is the H_E-orbit of w; the fibre over it is
    // the D-orbit of the coset g H_E for any g with g^{-1} w0 = w
    std::vector<mpz_class> f(ctx.x.size());
    for (int w = 0; w < ctx.x.size(); ++w) {
        int gElt = ctx.x.rep(w);
        int sigma = se.coset_of(g.inv(gElt));
        int v = fiber_of[sigma];
        // s(v) = phi_count/fiber_size; f(w) = s(v) * n0
        mpz_class num = mpz_class(phi_count[v]) * ctx.n0();
        if (num % fiber_size[v] != 0)
            throw error("reduction: slope |Phi(v)|/|Sigma_E(v)| = " +
                        std::to_string(phi_count[v]) + "/" +
                        std::to_string(fiber_size[v]) + " is not integral against n0 = " +
                        std::to_string(ctx.n0()) +
                        "; K does not split the reduction of factor '" + factor.name +
                        "'");
        f[w] = num / fiber_size[v];
    }
    return WeilGermSymbol(ctx.x, std::move(f), 1);
}

std::vector<WeilGermSymbol> reduce_cm(const AVCharZeroSpec& spec,
                                      const ReductionContext& ctx) {
    std::vector<WeilGermSymbol> out;
    for (const auto& fac : spec.factors) out.push_back(reduce_cm_factor(fac, ctx));
    return out;
}

ZVec pushforward_function(const ZVec& f, const ReductionContext& ctx) {
    const FiniteGaloisGroup& g = *ctx.g;
    if (f.size() != static_cast<std::size_t>(g.order()))
        throw error("pushforward: function not on Sigma_K");
    ZVec fbar(ctx.x.size());
    for (int tau = 0; tau < g.order(); ++tau) fbar[ctx.x.coset_of(tau)] += f[tau];
    return fbar;
}

EquivariantMap pushforward_map(const CharacterLattice& serre,
                               const CharacterLattice& weil,
                               const ReductionContext& ctx) {
    const FiniteGaloisGroup& g = *ctx.g;
    ZMatrix m(g.order(), ctx.x.size() + 1);
    for (int tau = 0; tau < g.order(); ++tau) {
        m.at(tau, ctx.x.coset_of(tau)) = 1;
        // ambient extension of the weight functional f -> f(e) + f(iota)
        if (tau == g.id()) m.at(tau, ctx.x.size()) += 1;
        if (tau == g.iota()) m.at(tau, ctx.x.size()) += 1;
    }
    return EquivariantMap(serre, weil, std::move(m));
}

FundamentalDiagram fundamental_diagram(const ReductionContext& ctx) {
    const FiniteGaloisGroup& g = *ctx.g;
    FundamentalDiagram out;
    if (ctx.d.contains(g.iota())) {
        out.degenerate = true;
        return out;
    }
    const int n = g.order();

    CharacterLattice serre = serre_lattice(g);
    WeilLatticeResult weil = weil_lattice(g, ctx.d);

    // Sigma_F: iota-orbits on Sigma_K (always free since iota != id)
    std::vector<int> forb_of(n, -1);
    std::vector<std::pair<int, int>> forbs;
    for (int t = 0; t < n; ++t) {
        if (forb_of[t] >= 0) continue;
        int it = g.mul(g.iota(), t);
        forb_of[t] = forb_of[it] = static_cast<int>(forbs.size());
        forbs.emplace_back(t, it);
    }
    const int nf = static_cast<int>(forbs.size());

    // top second map (g, m) -> g|F - m * sum of F-embeddings
    ZMatrix topSecond(n + 1, nf);
    for (int t = 0; t < n; ++t) topSecond.at(t, forb_of[t]) += 1;
    for (int v = 0; v < nf; ++v) topSecond.at(n, v) = -1;

    // top row exactness: ker(topSecond) equals X*(S^K) embedded by g -> (g, wt g)
    ZMatrix emb(0, n + 1);
    for (std::size_t i = 0; i < serre.defining().rows(); ++i) {
        ZVec r = serre.defining().row(i);
        r.push_back(serre.weight_of(serre.defining().row(i)));
        emb.append_row(r);
    }
    ZMatrix embH = hnf_basis(emb);
    bool topInjective = embH.rows() == serre.defining().rows();
    bool topMiddle = left_kernel(topSecond) == embH;
    QuotientStructure topCoker =
        quotient_structure(ZMatrix::identity(nf), hnf_basis(topSecond));
    bool topSurjective = topCoker.free_rank == 0 && topCoker.torsion.empty();
    out.top_exact = topInjective && topMiddle && topSurjective;
    out.bottom_exact = weil.first_injective && weil.composite_zero && weil.middle_exact &&
                       weil.last_surjective && weil.rank_identity;

    // verticals
    const int nx = ctx.x.size();
    const int ny = static_cast<int>(weil.y_orbits.size());
    std::vector<int> yorb_of(nx, -1);
    for (int v = 0; v < ny; ++v)
        for (int w : weil.y_orbits[v]) yorb_of[w] = v;

    // middle vertical (tau, m) -> (tau w0, m)
    ZMatrix mid(n + 1, nx + 1);
    for (int t = 0; t < n; ++t) mid.at(t, ctx.x.coset_of(t)) = 1;
    mid.at(n, nx) = 1;
    // right vertical sigma -> sigma v0
    ZMatrix right(nf, ny);
    for (int v = 0; v < nf; ++v) right.at(v, yorb_of[ctx.x.coset_of(forbs[v].first)]) = 1;
    // bottom second map
    ZMatrix botSecond(nx + 1, ny);
    for (int w = 0; w < nx; ++w) botSecond.at(w, yorb_of[w]) += 1;
    for (int v = 0; v < ny; ++v) botSecond.at(nx, v) = -ctx.n0();

    // left square: embed-then-project vs pushforward-then-embed on the Serre basis
    EquivariantMap push = pushforward_map(serre, weil.lattice, ctx);
    out.left_square_commutes = true;
    for (std::size_t i = 0; i < serre.defining().rows(); ++i) {
        ZVec b = serre.defining().row(i);
        ZVec viaTop = emb.row(i);              // (b, wt b) in Z^{Sigma_K} x Z
        ZVec lhs = mul_row(viaTop, mid);       // down the middle
        ZVec rhs = push.apply(b);              // along the bottom inclusion
        if (lhs != rhs) out.left_square_commutes = false;
    }
    // right square on all ambient basis vectors of Z^{Sigma_K} x Z
    out.right_square_commutes = true;
    for (int r = 0; r < n + 1; ++r) {
        ZVec unit(n + 1);
        unit[r] = 1;
        ZVec lhs = mul_row(mul_row(unit, topSecond), right);
        ZVec rhs = mul_row(mul_row(unit, mid), botSecond);
        if (lhs != rhs) out.right_square_commutes = false;
    }
    return out;
}

namespace {

struct GermCollector {
    std::vector<WeilGermSymbol> germs;
    std::vector<std::string> labels;
    std::vector<std::size_t> factor_begin;

    /* Insert the full conjugate set of `rep`, scanning sigma in the given
     * order; labels <name>.pi<k> / <name>.ipi<k> pair conjugates. */
    void add_factor(const WeilGermSymbol& rep, const std::vector<int>& scanReps,
                    const std::string& name) {
        factor_begin.push_back(germs.size());
        std::size_t base = germs.size();
        std::vector<int> primary;  // indices (relative) of unpaired germs
        for (int s : scanReps) {
            WeilGermSymbol cand = rep.acted_by(s);
            bool found = false;
            for (std::size_t k = base; k < germs.size(); ++k)
                if (germs[k] == cand) found = true;
            if (!found) germs.push_back(cand);
        }
        labels.resize(germs.size());
        int next = 0;
        for (std::size_t k = base; k < germs.size(); ++k) {
            if (!labels[k].empty()) continue;
            labels[k] = name + ".pi" + std::to_string(next);
            WeilGermSymbol conj = germs[k].conjugate();
            for (std::size_t j = k + 1; j < germs.size(); ++j)
                if (germs[j] == conj) labels[j] = name + ".ipi" + std::to_string(next);
            ++next;
        }
    }
};

ReducedLefschetz finish_reduced(GermCollector col, const ReductionContext& ctx) {
    const FiniteGaloisGroup& g = *ctx.g;
    // cross-factor collision: conjugate germs across factors mean isogenous
    // reductions and are refused
    col.factor_begin.push_back(col.germs.size());
    for (std::size_t a = 0; a + 1 < col.factor_begin.size() - 1; ++a)
        for (std::size_t b = a + 1; b + 1 < col.factor_begin.size(); ++b)
            for (std::size_t i = col.factor_begin[a]; i < col.factor_begin[a + 1]; ++i)
                for (std::size_t j = col.factor_begin[b]; j < col.factor_begin[b + 1]; ++j)
                    if (col.germs[i] == col.germs[j])
                        throw error("isogeny collision: factors '" + col.labels[i] +
                                    "' and '" + col.labels[j] +
                                    "' reduce to conjugate Weil germs; the reduced "
                                    "product is not multiplicity-free");

    const std::size_t np = col.germs.size();
    std::vector<std::vector<int>> perm(g.order(), std::vector<int>(np));
    for (int a = 0; a < g.order(); ++a)
        for (std::size_t k = 0; k < np; ++k) {
            WeilGermSymbol img = col.germs[k].acted_by(a);
            int idx = -1;
            for (std::size_t j = 0; j < np; ++j)
                if (col.germs[j] == img) {
                    idx = static_cast<int>(j);
                    break;
                }
            if (idx < 0) throw error("reduced lattice: germ set not Galois stable");
            perm[a][k] = idx;
        }
    std::vector<int> iotaOf(np);
    for (std::size_t k = 0; k < np; ++k) iotaOf[k] = perm[g.iota()][k];

    auto lat = std::make_shared<CharacterLattice>(
        lefschetz_lattice_over(g, col.labels, perm, iotaOf, /*allowFixed=*/true));
    return ReducedLefschetz{std::move(col.germs), std::move(col.labels), std::move(lat), {}};
}

}  // namespace

RestrictionResult restriction_map(const AVCharZeroSpec& spec,
                                  const CharacterLattice& lefChar0,
                                  const ReductionContext& ctx) {
    GermCollector col;
    for (const auto& fac : spec.factors) {
        WeilGermSymbol rep = reduce_cm_factor(fac, ctx);
        std::vector<int> scan;
        for (int c = 0; c < fac.space.size(); ++c) scan.push_back(fac.space.rep(c));
        col.add_factor(rep, scan, fac.name);
    }
    ReducedLefschetz red = finish_reduced(col, ctx);

    // collapse matrix: embedding sigma of factor i -> conjugate germ sigma.pi_i
    ZMatrix m(lefChar0.ambient_dim(), red.lattice->ambient_dim());
    red.germ_of_embedding.assign(lefChar0.ambient_dim(), -1);
    std::size_t off = 0;
    for (const auto& fac : spec.factors) {
        WeilGermSymbol rep = reduce_cm_factor(fac, ctx);
        for (int c = 0; c < fac.space.size(); ++c) {
            WeilGermSymbol img = rep.acted_by(fac.space.rep(c));
            int idx = -1;
            for (std::size_t j = 0; j < red.germs.size(); ++j)
                if (red.germs[j] == img) {
                    idx = static_cast<int>(j);
                    break;
                }
            m.at(off + c, static_cast<std::size_t>(idx)) = 1;
            red.germ_of_embedding[off + c] = idx;
        }
        off += fac.space.size();
    }
    EquivariantMap map(lefChar0, *red.lattice, std::move(m));
    return RestrictionResult{std::move(red), std::move(map)};
}

ReducedLefschetz reduced_lefschetz_from_germs(const std::vector<WeilGermSymbol>& germs,
                                              const std::vector<std::string>& factorNames,
                                              const ReductionContext& ctx) {
    if (germs.size() != factorNames.size())
        throw error("reduced lattice: one name per germ required");
    GermCollector col;
    std::vector<int> scan;
    for (int a = 0; a < ctx.g->order(); ++a) scan.push_back(a);
    for (std::size_t i = 0; i < germs.size(); ++i)
        col.add_factor(germs[i], scan, factorNames[i]);
    return finish_reduced(col, ctx);
}

ReducedLefschetz reduced_lefschetz_explicit(
    std::vector<WeilGermSymbol> germs, std::vector<std::string> labels,
    const std::vector<std::pair<std::size_t, std::size_t>>& factorRanges,
    const ReductionContext& ctx) {
    GermCollector col;
    col.germs = std::move(germs);
    col.labels = std::move(labels);
    if (col.labels.size() != col.germs.size())
        throw error("reduced lattice: one label per germ required");
    for (const auto& r : factorRanges)
        for (std::size_t i = r.first; i < r.second; ++i)
            for (std::size_t j = i + 1; j < r.second; ++j)
                if (col.germs[i] == col.germs[j])
                    throw error("reduced lattice: duplicate germ in explicit list");
    for (const auto& r : factorRanges) col.factor_begin.push_back(r.first);
    if (!factorRanges.empty() &&
        factorRanges.back().second != col.germs.size())
        throw error("reduced lattice: factor ranges do not cover the germ list");
    return finish_reduced(std::move(col), ctx);
}

EquivariantMap germ_map(const ReducedLefschetz& red, const CharacterLattice& weil,
                        const ReductionContext& ctx) {
    (void)ctx;
    ZMatrix m(red.lattice->ambient_dim(), weil.ambient_dim());
    for (std::size_t k = 0; k < red.germs.size(); ++k)
        m.set_row(k, germ_vector(red.germs[k]));
    return EquivariantMap(*red.lattice, weil, std::move(m));
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

PKernel p_kernel(const ReducedLefschetz& red, const ReductionContext& ctx) {
    WeilLatticeResult weil = weil_lattice(*ctx.g, ctx.d);
    EquivariantMap gm = germ_map(red, weil.lattice, ctx);
    PKernel out{gm.kernel(), false, std::nullopt, false, false};

    // independent route: integer kernel of the slope-sum conditions
    // sum_sigma g(sigma) s_{sigma pi}(w) = 0 for all w (cleared by n0)
    ZMatrix slopes(red.lattice->ambient_dim(), ctx.x.size());
    for (std::size_t k = 0; k < red.germs.size(); ++k)
        for (int w = 0; w < ctx.x.size(); ++w) slopes.at(k, w) = red.germs[k].f()[w];
    Sublattice slopeKernel(*red.lattice, left_kernel(slopes));
    out.routes_agree = slopeKernel == out.kernel;

    QuotientStructure qs = out.kernel.structure();
    out.exotic_tate_exists = qs.free_rank > 0 || !qs.torsion.empty();
    if (qs.free_rank == 1 && qs.torsion.empty())
        out.generator = generator_rep(*red.lattice, qs.free_gens.row(0));
    out.saturated = out.kernel.is_saturated();
    return out;
}

LiftingResult lifting_search(const WeilGermSymbol& germ, const CosetSpace& eSpace,
                             const ReductionContext& ctx) {
    const FiniteGaloisGroup& g = *ctx.g;
    if (eSpace.subgroup().contains(g.iota()))
        throw error("lifting: K^{H_E} is totally real, not a CM-field");
    // the centre Q[pi] = K^{Stab(f)} must embed into E, i.e. H_E <= Stab(f)
    std::vector<int> stab;
    for (int a = 0; a < g.order(); ++a)
        if (germ.acted_by(a) == germ) stab.push_back(a);
    SubgroupHandle hf(g, stab);
    if (!hf.contains_subgroup(eSpace.subgroup()))
        throw error("lifting: the germ's centre does not embed into E "
                    "(H_E is not contained in the germ stabilizer)");

    // iota-orbit pairs of Sigma_E; a CM-type picks one member of each
    std::vector<std::pair<int, int>> pairs;
    std::vector<char> seen(eSpace.size(), 0);
    for (int c = 0; c < eSpace.size(); ++c) {
        if (seen[c]) continue;
        int ic = eSpace.iota_act(c);
        if (ic == c) throw error("lifting: iota-fixed embedding in Sigma_E");
        seen[c] = seen[ic] = 1;
        pairs.emplace_back(c, ic);
    }
    LiftingResult res;
    res.searched = true;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
        std::vector<int> phi(eSpace.size(), 0);
        for (std::size_t k = 0; k < pairs.size(); ++k)
            phi[(mask >> k) & 1 ? pairs[k].second : pairs[k].first] = 1;
        try {
            CMTypeSpec cand(eSpace, phi, "lift");
            if (reduce_cm_factor(cand, ctx) == germ) {
                res.phi = phi;
                return res;
            }
        } catch (const error&) {
            // non-integral slope for this Phi; keep searching
        }
    }
    return res;
}

}  // namespace cmlat
