#include "cmlat/verdict.hpp"

#include <algorithm>
#include <sstream>

namespace cmlat {

std::string to_string(Status s) {
    switch (s) {
        case Status::Holds: return "holds";
        case Status::Fails: return "fails";
        case Status::Conditional: return "conditional";
        case Status::Inconclusive: return "inconclusive";
        case Status::NotApplicable: return "not-applicable";
    }
    return "?";
}

const SubgroupHandle& Scenario::subgroup(const std::string& n) const {
    auto it = subgroups.find(n);
    if (it == subgroups.end()) throw error("scenario: unknown subgroup '" + n + "'");
    return it->second;
}

void validate_scenario(const Scenario& sc) {
    if (!sc.group) throw error("scenario: no group");
    for (const auto& f : sc.factors) {
        CosetSpace space(*sc.group, sc.subgroup(f.space));
        CMTypeSpec check(space, f.phi, f.name);  // throws on an invalid CM-type
    }
    if (sc.has_reduction()) {
        const SubgroupHandle& d = sc.subgroup(sc.d_name);
        CosetSpace x(*sc.group, d);
        for (const auto& gi : sc.germs) {
            std::vector<mpz_class> f = gi.f;
            WeilGermSymbol check(x, f, 1);  // throws unless f + iota.f = n0
        }
        if (sc.facts.p_splits_in_q && sc.subgroups.count("HQ")) {
            bool computed = sc.subgroup("HQ").contains_subgroup(d);
            if (computed != *sc.facts.p_splits_in_q)
                throw error("scenario: declared p_splits_in_q=" +
                            std::string(*sc.facts.p_splits_in_q ? "true" : "false") +
                            " contradicts the group data (D " +
                            (computed ? "lies in" : "does not lie in") + " H_Q)");
        }
    } else if (!sc.germs.empty()) {
        throw error("scenario: germ sections require a [reduction] block");
    }
    if (sc.facts.degree_e) {
        for (const auto& f : sc.factors)
            if (f.name == "A") {
                int deg = sc.group->order() / sc.subgroup(f.space).order();
                if (deg != *sc.facts.degree_e)
                    throw error("scenario: declared degree_e=" +
                                std::to_string(*sc.facts.degree_e) +
                                " but [G : H_E] = " + std::to_string(deg));
            }
    }
    for (const auto& c : sc.checks) {
        auto known = known_checks();
        if (std::find(known.begin(), known.end(), c) == known.end())
            throw error("scenario: unknown check '" + c + "'");
    }
}

Workspace::Workspace(const Scenario& sc) : sc_(&sc) { validate_scenario(sc); }

const AVCharZeroSpec& Workspace::spec() {
    if (!spec_) {
        if (!has_factors()) throw error("workspace: scenario has no CM factors");
        std::vector<CMTypeSpec> fs;
        std::vector<int> mult;
        for (const auto& f : sc_->factors) {
            fs.emplace_back(CosetSpace(*sc_->group, sc_->subgroup(f.space)), f.phi,
                            f.name);
            mult.push_back(f.multiplicity);
        }
        spec_.emplace(std::move(fs), std::move(mult));
    }
    return *spec_;
}

const CharacterLattice& Workspace::serre() {
    if (!serre_) serre_.emplace(serre_lattice(group()));
    return *serre_;
}

const CharacterLattice& Workspace::lef() {
    if (!lef_) lef_.emplace(lefschetz_lattice(spec()));
    return *lef_;
}

const EquivariantMap& Workspace::rho() {
    if (!rho_) rho_.emplace(rho_phi_map(spec(), lef(), serre()));
    return *rho_;
}

const MTKernel& Workspace::mt() {
    if (!mt_) mt_.emplace(mt_kernel_and_exotic(rho()));
    return *mt_;
}

const ReductionContext& Workspace::rctx() {
    if (!rctx_) {
        if (!sc_->has_reduction()) throw error("workspace: scenario has no [reduction]");
        rctx_.emplace(group(), sc_->subgroup(sc_->d_name));
    }
    return *rctx_;
}

const WeilLatticeResult& Workspace::weil() {
    if (!weil_) weil_.emplace(weil_lattice(group(), rctx().d));
    return *weil_;
}

const RestrictionResult& Workspace::restriction() {
    if (!restriction_) restriction_.emplace(restriction_map(spec(), lef(), rctx()));
    return *restriction_;
}

const PKernel& Workspace::pkernel_of_restriction() {
    if (!pk_) pk_.emplace(p_kernel(restriction().reduced, rctx()));
    return *pk_;
}

const std::vector<std::pair<std::string, WeilGermSymbol>>& Workspace::simple_germs() {
    if (!simpleGerms_) {
        simpleGerms_.emplace();
        if (has_factors())
            for (std::size_t i = 0; i < spec().factors.size(); ++i)
                simpleGerms_->emplace_back(spec().factors[i].name,
                                           reduce_cm_factor(spec().factors[i], rctx()));
        for (const auto& gi : sc_->germs)
            simpleGerms_->emplace_back(gi.name, WeilGermSymbol(rctx().x, gi.f, 1));
    }
    return *simpleGerms_;
}

namespace {

std::string format_class(const std::vector<std::string>& labels, const ZVec& v) {
    std::ostringstream os;
    os << '[';
    bool first = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        mpz_class a = abs(v[i]);
        if (first) {
            if (v[i] < 0) os << '-';
            first = false;
        } else {
            os << (v[i] < 0 ? " - " : " + ");
        }
        if (a != 1) os << a.get_str() << ' ';
        os << labels[i];
    }
    if (first) os << '0';
    os << ']';
    return os.str();
}

ZVec int_vec(const std::vector<int>& v) {
    ZVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
    return out;
}

Verdict not_applicable(const std::string& check, const std::string& why) {
    Verdict v;
    v.check = check;
    v.status = Status::NotApplicable;
    v.trace.push_back(why);
    return v;
}

}  // namespace

Verdict check_tate_criterion(Workspace& ws, AlgebraicCharacters mode,
                             const std::vector<ZVec>* declared) {
    Verdict v;
    v.check = "tate_criterion";
    if (!ws.has_factors() || !ws.scenario().has_reduction())
        return not_applicable(v.check, "needs CM factors and a reduction prime");

    std::vector<ZVec> gens;
    if (mode == AlgebraicCharacters::MTDerived) {
        QuotientStructure qs = ws.mt().kernel.structure();
        for (std::size_t i = 0; i < qs.free_gens.rows(); ++i)
            gens.push_back(qs.free_gens.row(i));
        v.trace.push_back(
            "algebraic characters derived from MT(A): assumes the Hodge classes they "
            "fix are algebraic (Hodge-conjecture input)");
    } else {
        if (!declared) throw error("tate_criterion: declared mode without a set");
        gens = *declared;
        v.trace.push_back("declared algebraic-character set with " +
                          std::to_string(gens.size()) + " generator(s)");
    }

    // the declared subgroup must be Galois-stable
    Sublattice span = span_sublattice(ws.lef(), gens);
    for (const auto& gvec : gens)
        for (int a = 0; a < ws.group().order(); ++a)
            if (!span.contains(ws.lef().act(a, gvec)))
                throw error("tate_criterion: the declared character set is not stable "
                            "under the Galois action");

    const RestrictionResult& rest = ws.restriction();
    std::vector<ZVec> restricted;
    for (const auto& gvec : gens) restricted.push_back(rest.map.apply(gvec));
    Sublattice r = span_sublattice(*rest.reduced.lattice, restricted);
    const PKernel& pk = ws.pkernel_of_restriction();

    if (r == pk.kernel) {
        v.status = Status::Holds;
        v.trace.push_back("intersection of the character kernels equals P(A0) exactly; "
                          "the Tate conjecture holds for all powers of A0");
    } else if (r.sum(pk.kernel) == pk.kernel) {
        v.status = Status::Inconclusive;
        v.trace.push_back("declared characters cut out a larger group than P(A0); the "
                          "hypothesis is not established (and not refuted)");
    } else {
        v.status = Status::Fails;
        v.trace.push_back("a declared character is not trivial on the Frobenius germ; "
                          "the declared set is inconsistent");
    }
    v.witnesses.emplace_back("pkernel.rank",
                             ZVec{mpz_class(pk.kernel.structure().free_rank)});
    v.witnesses.emplace_back("declared.rank", ZVec{mpz_class(r.structure().free_rank)});
    return v;
}

Verdict check_tate_from_hodge(Workspace& ws) {
    Verdict v;
    v.check = "tate_from_hodge";
    if (!ws.has_factors() || !ws.scenario().has_reduction())
        return not_applicable(v.check, "needs CM factors and a reduction prime");

    const RestrictionResult& rest = ws.restriction();
    Sublattice k1 = rest.map.kernel();
    Sublattice k2 = ws.mt().kernel;
    Sublattice sum = k1.sum(k2);

    EquivariantMap gm = germ_map(rest.reduced, ws.weil().lattice, ws.rctx());
    EquivariantMap composite(ws.lef(), ws.weil().lattice,
                             rest.map.matrix() * gm.matrix());
    Sublattice kp = composite.kernel();

    bool equal = kp == sum;
    bool hodgePremise = !ws.mt().exotic_hodge_exists ||
                        ws.scenario().facts.exotic_hodge_algebraic.value_or(false);
    v.trace.push_back("K1 = Ker(X*(L(A)) -> X*(L(A0))), rank " +
                      std::to_string(k1.rank_in_lattice()));
    v.trace.push_back("K2 = Ker(X*(L(A)) -> X*(S^K)), rank " +
                      std::to_string(k2.rank_in_lattice()));
    v.trace.push_back("K_P = Ker(X*(L(A)) -> X*(P^K)), rank " +
                      std::to_string(kp.rank_in_lattice()));
    v.trace.push_back(std::string("subgroup equality K_P = K1 + K2: ") +
                      (equal ? "verified" : "violated"));
    if (ws.mt().exotic_hodge_exists)
        v.trace.push_back(std::string("Hodge premise: ") +
                          (ws.scenario().facts.exotic_hodge_algebraic.value_or(false)
                               ? "declared exotic Hodge class algebraic"
                               : "not declared; verdict stays conditional"));
    else
        v.trace.push_back("Hodge premise: MT(A) = L(A), all Hodge classes are "
                          "Lefschetz, no conjectural input needed");
    if (!equal)
        v.status = Status::Fails;
    else
        v.status = hodgePremise ? Status::Holds : Status::Conditional;
    if (v.status == Status::Holds)
        v.trace.push_back("P(A0) = L(A0) cap MT(A); the Tate conjecture holds for all "
                          "powers of A0");
    return v;
}

Verdict check_exotic_pair(Workspace& ws, ExoticPairData* out) {
    Verdict v;
    v.check = "exotic_pair";
    const Scenario& sc = ws.scenario();

    // shape: exactly the pair A (E of degree 2n over Q, n > 2, containing the
    // quadratic field of B) and B
    if (sc.factors.size() != 2 || sc.factors[0].name != "A" || sc.factors[1].name != "B")
        return not_applicable(v.check, "needs exactly the two factors A and B");
    const SubgroupHandle& he = sc.subgroup(sc.factors[0].space);
    const SubgroupHandle& hq = sc.subgroup(sc.factors[1].space);
    if (!hq.contains_subgroup(he))
        return not_applicable(v.check, "E does not contain Q (H_E not inside H_Q)");
    const int n = hq.order() / he.order();
    if (n <= 2) return not_applicable(v.check, "needs [E:Q] = n > 2");
    if (!sc.has_reduction()) return not_applicable(v.check, "no reduction prime given");

    const AVCharZeroSpec& spec = ws.spec();
    const CMTypeSpec& fa = spec.factors[0];
    const CMTypeSpec& fb = spec.factors[1];
    if (fb.phi[fb.space.base()] != 1)
        return not_applicable(v.check, "Phi on Q is not the base embedding rho0");
    {
        if (fa.phi[fa.space.base()] != 1)
            return not_applicable(v.check, "sigma0 does not lie in Phi0");
        int onExt = 0;
        for (const auto& coset : cosets_within(he, hq))
            onExt += fa.phi[fa.space.coset_of(coset.front())];
        if (onExt != 1)
            return not_applicable(v.check,
                                  "Phi0 must contain exactly one extension of rho0");
    }

    // hypotheses
    const ReductionContext& ctx = ws.rctx();
    if (!hq.contains_subgroup(ctx.d)) {
        Verdict na = not_applicable(v.check, "p does not split in Q (D not inside H_Q)");
        return na;
    }
    auto dc = double_coset_commute(he, ctx.d);
    if (!dc.commutes)
        return not_applicable(v.check,
                              "Sigma_0 * D(w0) != D(w0) * Sigma_0; without this "
                              "condition the analysis is refused");

    ExoticPairData data;
    data.n = n;
    auto sigmas = cosets_within(he, hq);
    BlockPartition bp = block_partition(sigmas, he, ctx.d, ctx.x);
    data.m = bp.m;
    data.jmap = bp.jmap;
    v.trace.push_back("hypotheses verified: p splits in Q; Sigma_0 and D(w0) commute");
    v.trace.push_back("partition: n = " + std::to_string(n) + ", m = " +
                      std::to_string(bp.m) + ", block size " +
                      std::to_string(bp.block_size));

    bool ok = true;
    auto check = [&](bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            v.trace.push_back("FAILED: " + what);
        }
    };

    // characteristic-zero side
    const MTKernel& mt = ws.mt();
    QuotientStructure mtq = mt.kernel.structure();
    check(mtq.free_rank == 1 && mtq.torsion.empty() && mt.generator.has_value(),
          "Ker(X*(L(A x B)) -> X*(S^K)) is free of rank 1");
    if (!ok) {
        v.status = Status::Fails;
        return v;
    }
    data.chi = *mt.generator;

    // pushforwards and the f_j table
    WeilGermSymbol germA = reduce_cm_factor(fa, ctx);
    WeilGermSymbol germB = reduce_cm_factor(fb, ctx);
    const mpz_class inter = mpz_class(
        [&] {
            int c = 0;
            for (int s : he.members())
                if (ctx.d.contains(s)) ++c;
            return c;
        }());
    data.fj.assign(bp.m, ZVec());
    for (int i = 0; i < n; ++i) {
        int ci = fa.space.coset_of(sigmas[i].front());
        ZVec push = pushforward_function(fa.psi(ci), ctx);
        int j = bp.jmap[i];
        if (data.fj[j].empty())
            data.fj[j] = push;
        else
            check(data.fj[j] == push, "psi_i pushes to f_{j(i)} consistently");
    }
    for (int j = 0; j < bp.m; ++j) {
        for (int w = 0; w < ctx.x.size(); ++w) {
            bool inBlockJ = std::binary_search(bp.blocks[j].begin(), bp.blocks[j].end(), w);
            bool inSomeBlock = false;
            for (const auto& blk : bp.blocks)
                if (std::binary_search(blk.begin(), blk.end(), w)) inSomeBlock = true;
            if (inBlockJ)
                check(data.fj[j][w] == inter, "f_j = |Sigma_0 cap D| on X_j");
            else if (inSomeBlock)
                check(data.fj[j][w] == 0, "f_j = 0 on the other blocks");
            check(data.fj[j][w] + data.fj[j][ctx.x.iota_act(w)] == ctx.n0(),
                  "f_j + iota.f_j = n0");
        }
        // f_j is the symbol of the conjugate germ sigma_i pi for j(i) = j
        for (int i = 0; i < n; ++i)
            if (bp.jmap[i] == j)
                check(germA.acted_by(sigmas[i].front()).f() == std::vector<mpz_class>(
                          data.fj[j].begin(), data.fj[j].end()),
                      "f_{sigma_i pi} = f_{j(i)}");
    }
    {
        ZVec psiB(ws.group().order());
        for (int t = 0; t < ws.group().order(); ++t) psiB[t] = hq.contains(t) ? 1 : 0;
        ZVec pushB = pushforward_function(psiB, ctx);
        check(std::vector<mpz_class>(pushB.begin(), pushB.end()) == germB.f(),
              "psi pushes to the germ of B0");
    }

    // ordered reduced lattice [pi_0..pi_{m-1}, i.pi_0.., rho0, i.rho0]
    std::vector<WeilGermSymbol> germs;
    std::vector<std::string> labels;
    for (int j = 0; j < bp.m; ++j) {
        germs.emplace_back(ctx.x, std::vector<mpz_class>(data.fj[j].begin(),
                                                         data.fj[j].end()), 1);
        labels.push_back("pi" + std::to_string(j));
    }
    for (int j = 0; j < bp.m; ++j) {
        germs.push_back(germs[j].conjugate());
        labels.push_back("ipi" + std::to_string(j));
    }
    const std::size_t aCount = germs.size();
    germs.push_back(germB);
    labels.push_back("rho0");
    germs.push_back(germB.conjugate());
    labels.push_back("irho0");
    ReducedLefschetz red = reduced_lefschetz_explicit(
        germs, labels, {{0, aCount}, {aCount, aCount + 2}}, ctx);
    data.reduced_labels = red.labels;

    // collapse X*(L(A x B)) -> X*(L(A0 x B0))
    ZMatrix cm(ws.lef().ambient_dim(), red.lattice->ambient_dim());
    for (int c = 0; c < fa.space.size(); ++c) {
        WeilGermSymbol img = germA.acted_by(fa.space.rep(c));
        int idx = -1;
        for (std::size_t k = 0; k < red.germs.size(); ++k)
            if (red.germs[k] == img) idx = static_cast<int>(k);
        check(idx >= 0, "every conjugate of the A-germ appears in Pi");
        if (idx >= 0) cm.at(c, idx) = 1;
    }
    for (int c = 0; c < fb.space.size(); ++c) {
        WeilGermSymbol img = germB.acted_by(fb.space.rep(c));
        int idx = -1;
        for (std::size_t k = 0; k < red.germs.size(); ++k)
            if (red.germs[k] == img) idx = static_cast<int>(k);
        check(idx >= 0, "every conjugate of the B-germ appears in Pi");
        if (idx >= 0) cm.at(fa.space.size() + c, idx) = 1;
    }
    if (!ok) {
        v.status = Status::Fails;
        return v;
    }
    EquivariantMap collapse(ws.lef(), *red.lattice, cm);

    PKernel pk = p_kernel(red, ctx);
    QuotientStructure pkq = pk.kernel.structure();
    check(pkq.free_rank == 1 && pkq.torsion.empty() && pk.generator.has_value(),
          "Ker(X*(L(A0 x B0)) -> X*(P^K)) is free of rank 1");
    check(pk.routes_agree, "slope-sum criterion agrees with the lattice kernel");
    check(pk.saturated, "the Frobenius kernel is saturated");
    if (!ok) {
        v.status = Status::Fails;
        return v;
    }
    data.chi0 = *pk.generator;

    // structural display (n/m)(pi_0 + .. + pi_{m-1}) + (n-2) rho0 - (n-1)(rho0 + i.rho0)
    ZVec chi0s(red.lattice->ambient_dim());
    for (int j = 0; j < bp.m; ++j) chi0s[j] = n / bp.m;
    chi0s[aCount] = -1;
    chi0s[aCount + 1] = -(n - 1);
    data.chi0_structural = chi0s;
    check(red.lattice->element_equal(chi0s, data.chi0) ||
              red.lattice->element_equal(negate(chi0s), data.chi0),
          "chi0 matches the structural formula up to sign");

    // left vertical map <chi> -> <chi0> is an isomorphism
    ZVec chiDown = collapse.apply(data.chi);
    if (red.lattice->element_equal(chiDown, data.chi0))
        data.iso_sign = 1;
    else if (red.lattice->element_equal(chiDown, negate(data.chi0)))
        data.iso_sign = -1;
    check(data.iso_sign != 0, "the collapse maps <chi> isomorphically onto <chi0>");

    // the ladder commutes: rho then pushforward = collapse then germ map
    {
        EquivariantMap push = pushforward_map(ws.serre(), ws.weil().lattice, ctx);
        EquivariantMap gm = germ_map(red, ws.weil().lattice, ctx);
        bool commutes = ws.rho().matrix() * push.matrix() == cm * gm.matrix();
        check(commutes, "the square S^K / P^K square commutes on all basis vectors");
    }

    // eigenspace multiplicities on A x B^{n-2}
    {
        HodgeModel model(spec, {1, n - 2});
        const CharacterLattice& ml = model.lefschetz();
        ZVec chiPlus = ml.canonical(data.chi);
        ZVec chiMinus = ml.canonical(negate(data.chi));
        ZVec zero = ml.canonical(ZVec(ml.ambient_dim()));
        data.mult_chi.assign(2 * n - 1, 0);
        data.mult_minus_chi.assign(2 * n - 1, 0);
        bool onlyChi = true;
        for (int r = 0; r <= 2 * n - 2; ++r) {
            data.mult_chi[r] = eigenspace_dimension(model, chiPlus, r);
            data.mult_minus_chi[r] = eigenspace_dimension(model, chiMinus, r);
            for (std::uint32_t mask : model.basis(2 * r)) {
                ZVec cls = model.character_class(mask, r);
                if (cls == zero) continue;
                if (!ws.mt().kernel.contains(cls)) continue;
                if (cls != chiPlus && cls != chiMinus) onlyChi = false;
            }
        }
        check(onlyChi, "no exotic character besides +-chi occurs");
        for (int r = 0; r <= 2 * n - 2; ++r) {
            int expect = (r == n - 1) ? 1 : 0;
            check(data.mult_chi[r] == expect && data.mult_minus_chi[r] == expect,
                  "multiplicity of +-chi is 1 at r = n-1 and 0 elsewhere");
        }
        // the same counts through the collapse (the Tate side)
        ZVec chi0Plus = data.iso_sign > 0 ? data.chi0 : negate(data.chi0);
        ZVec chi0Minus = negate(chi0Plus);
        for (int r = 0; r <= 2 * n - 2; ++r) {
            int cp = eigenspace_dimension(model, red.lattice->canonical(chi0Plus), r,
                                          &collapse);
            int cmn = eigenspace_dimension(model, red.lattice->canonical(chi0Minus), r,
                                           &collapse);
            check(cp == data.mult_chi[r] && cmn == data.mult_minus_chi[r],
                  "the reduced eigenspace counts match through the collapse");
        }
    }

    // structural display of chi over sigma-labels:
    // sigma_0 + .. + sigma_{n-1} + (n-2) rho0 - (n-1)(rho0 + i.rho0)
    std::vector<std::string> sigmaLabels(ws.lef().ambient_dim());
    ZVec chiS(ws.lef().ambient_dim());
    for (int i = 0; i < n; ++i) {
        int ci = fa.space.coset_of(sigmas[i].front());
        sigmaLabels[ci] = "sigma" + std::to_string(i);
        sigmaLabels[fa.space.iota_act(ci)] = "isigma" + std::to_string(i);
        chiS[ci] = 1;
    }
    for (std::size_t c = 0; c < sigmaLabels.size(); ++c)
        if (sigmaLabels[c].empty())
            sigmaLabels[c] = ws.lef().labels()[c];
    sigmaLabels[fa.space.size() + fb.space.base()] = "rho0";
    sigmaLabels[fa.space.size() + fb.space.iota_act(fb.space.base())] = "irho0";
    chiS[fa.space.size() + fb.space.base()] = -1;
    chiS[fa.space.size() + fb.space.iota_act(fb.space.base())] = -(n - 1);
    check(ws.lef().element_equal(chiS, data.chi) ||
              ws.lef().element_equal(negate(chiS), data.chi),
          "chi matches the structural formula up to sign");

    data.machine_ok = ok;
    v.trace.push_back("chi  = " + format_class(sigmaLabels, chiS));
    v.trace.push_back("chi0 = " + format_class(red.labels, data.chi0_structural) +
                      (data.iso_sign >= 0 ? "" : " (collapse reverses the sign)"));
    for (int j = 0; j < bp.m; ++j) {
        std::ostringstream fj;
        fj << "f_" << j << " = " << WeilGermSymbol(ctx.x, data.fj[j], 1).str();
        v.trace.push_back(fj.str());
    }
    v.trace.push_back("exotic Tate characters on A0 x B0^" + std::to_string(n - 2) +
                      ": exactly {chi0, -chi0}, eigenspace multiplicity 1 at r = " +
                      std::to_string(n - 1));
    v.witnesses.emplace_back("partition.m", ZVec{mpz_class(bp.m)});
    v.witnesses.emplace_back("partition.jmap", int_vec(bp.jmap));
    for (int j = 0; j < bp.m; ++j)
        v.witnesses.emplace_back("fj." + std::to_string(j), data.fj[j]);
    v.witnesses.emplace_back("chi", data.chi);
    v.witnesses.emplace_back("chi0", data.chi0);
    v.witnesses.emplace_back("chi0.structural", data.chi0_structural);
    v.witnesses.emplace_back("eigen.chi", int_vec(data.mult_chi));
    v.witnesses.emplace_back("eigen.minus_chi", int_vec(data.mult_minus_chi));

    if (!ok) {
        v.status = Status::Fails;
        if (out) *out = data;
        return v;
    }
    bool flag = sc.facts.exotic_hodge_algebraic.value_or(false);
    v.trace.push_back("part (a): the exotic Tate classes are exactly the nonzero "
                      "elements of W(A0,B0) -- verified at character level");
    if (flag) {
        v.status = Status::Holds;
        v.trace.push_back("part (b): exotic Hodge class declared algebraic; the Tate "
                          "conjecture holds for all A0^s x B0^t");
    } else {
        v.status = Status::Conditional;
        v.trace.push_back("part (b): conditional on an exotic Hodge class of A x B^" +
                          std::to_string(n - 2) + " being algebraic");
    }
    if (out) *out = data;
    return v;
}

Verdict check_weil_type_family(Workspace& ws) {
    Verdict v;
    v.check = "weil_family";
    const Scenario& sc = ws.scenario();
    if (sc.factors.size() != 2 || sc.factors[0].name != "A" || sc.factors[1].name != "B")
        return not_applicable(v.check, "needs exactly the two factors A and B");
    int degE = ws.group().order() / sc.subgroup(sc.factors[0].space).order();
    if (degE != 6)
        return not_applicable(v.check, "hypothesis (degree of E is 6) fails: degree is " +
                                           std::to_string(degE));

    ExoticPairData data;
    Verdict pair = check_exotic_pair(ws, &data);
    if (pair.status == Status::NotApplicable) {
        pair.check = v.check;
        return pair;
    }
    if (pair.status == Status::Fails) {
        pair.check = v.check;
        return pair;
    }
    v.trace = pair.trace;
    v.witnesses = pair.witnesses;

    std::vector<std::string> missing;
    if (!sc.facts.q_cyclotomic.value_or(false)) missing.push_back("q_cyclotomic");
    if (!sc.facts.determinant_one.value_or(false)) missing.push_back("determinant_one");
    if (!sc.facts.p_splits_in_q.value_or(false)) missing.push_back("p_splits_in_q");
    if (missing.empty()) {
        v.status = Status::Holds;
        v.trace.push_back("Q cyclotomic, determinant one, degree six, split prime: the "
                          "Weil classes are algebraic, so the Hodge conjecture holds "
                          "for all A^s x B^t and the Tate conjecture for all A0^s x "
                          "B0^t");
    } else {
        v.status = Status::Conditional;
        std::string list;
        for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
        v.trace.push_back("hypotheses not declared: " + list);
    }
    return v;
}

Verdict classify_finite_families(Workspace& ws) {
    Verdict v;
    v.check = "finite_families";
    if (!ws.scenario().has_reduction())
        return not_applicable(v.check, "no reduction prime given");
    const auto& germs = ws.simple_germs();
    if (germs.empty()) return not_applicable(v.check, "no simple factors over F");

    std::vector<GermInvariants> invs;
    for (const auto& [name, g] : germs) invs.push_back(germ_invariants(g));

    std::string family;
    if (std::all_of(invs.begin(), invs.end(),
                    [](const GermInvariants& i) { return i.dim == 1; })) {
        family = "elliptic-products";
    } else if (invs.size() == 1) {
        const GermInvariants& i = invs[0];
        const mpq_class half(1, 2);
        bool k3 = false, ao = false;
        {
            // K3 pattern: a degree-1 prime pair of slopes {0,1}; all others 1/2
            bool pairFound = false, restHalf = true;
            for (const auto& p : i.primes) {
                if (p.slope == 0 && p.local_degree == 1) pairFound = true;
                if (p.slope != 0 && p.slope != 1 && p.slope != half) restHalf = false;
            }
            bool zeroOneDegOne = true;
            for (const auto& p : i.primes)
                if ((p.slope == 0 || p.slope == 1) && p.local_degree != 1)
                    zeroOneDegOne = false;
            k3 = pairFound && restHalf && zeroOneDegOne &&
                 i.slope_multiplicity.count(half);
        }
        {
            // almost-ordinary pattern: dim > 1, the 1/2-primes form one
            // iota-orbit, every other slope is 0 or 1
            std::vector<std::size_t> halfIdx;
            bool othersOrdinary = true;
            for (std::size_t k = 0; k < i.primes.size(); ++k) {
                if (i.primes[k].slope == half)
                    halfIdx.push_back(k);
                else if (i.primes[k].slope != 0 && i.primes[k].slope != 1)
                    othersOrdinary = false;
            }
            bool oneOrbit = false;
            if (halfIdx.size() == 1)
                oneOrbit = i.primes[halfIdx[0]].iota_fixed;
            else if (halfIdx.size() == 2) {
                std::set<int> a(i.primes[halfIdx[0]].orbit.begin(),
                                i.primes[halfIdx[0]].orbit.end());
                std::set<int> b;
                for (int w : i.primes[halfIdx[1]].orbit)
                    b.insert(ws.rctx().x.iota_act(w));
                oneOrbit = a == b;
            }
            ao = i.dim > 1 && !halfIdx.empty() && oneOrbit && othersOrdinary;
        }
        if (k3)
            family = "k3-type";
        else if (ao)
            family = "almost-ordinary";
    }
    if (family.empty())
        return not_applicable(v.check, "germ data matches no example family "
                                       "(elliptic products, K3-type, almost-ordinary)");
    v.trace.push_back("family: " + family);

    std::vector<WeilGermSymbol> symbols;
    std::vector<std::string> names;
    for (const auto& [name, g] : germs) {
        symbols.push_back(g);
        names.push_back(name);
    }
    ReducedLefschetz red = reduced_lefschetz_from_germs(symbols, names, ws.rctx());
    PKernel pk = p_kernel(red, ws.rctx());
    for (std::size_t k = 0; k < invs.size(); ++k)
        for (const auto& diag : dieudonne_degree_check(invs[k]))
            v.trace.push_back("dieudonne check (" + names[k] + "): " + diag);
    v.witnesses.emplace_back("pkernel.rank",
                             ZVec{mpz_class(pk.kernel.structure().free_rank)});
    if (!pk.exotic_tate_exists && pk.routes_agree) {
        v.status = Status::Holds;
        v.trace.push_back("P(A0) = L(A0); no power of A0 has an exotic Tate class and "
                          "the Tate conjecture holds for all powers");
    } else {
        v.status = Status::Fails;
        v.trace.push_back("P(A0) != L(A0): the family claim fails on this germ data");
    }
    return v;
}

Verdict check_serre_intersection(Workspace& ws) {
    Verdict v;
    v.check = "serre_intersection";
    const Scenario& sc = ws.scenario();
    if (sc.factors.empty() || !sc.has_reduction())
        return not_applicable(v.check, "needs CM factors and a reduction prime");
    bool eIsK = false;
    for (const auto& f : sc.factors)
        if (f.name == "A" && sc.subgroup(f.space).order() == 1) eIsK = true;
    if (!eIsK)
        return not_applicable(v.check, "E is not all of K (H_E != 1); the surjectivity "
                                       "remark does not apply");

    bool ok = true;
    auto check = [&](bool cond, const std::string& what) {
        v.trace.push_back(std::string(cond ? "verified: " : "FAILED: ") + what);
        if (!cond) ok = false;
    };
    QuotientStructure rhoCoker = ws.rho().cokernel();
    check(rhoCoker.free_rank == 0 && rhoCoker.torsion.empty(),
          "X*(L(A x B)) -> X*(S^K) is surjective");
    const RestrictionResult& rest = ws.restriction();
    EquivariantMap gm = germ_map(rest.reduced, ws.weil().lattice, ws.rctx());
    QuotientStructure gmCoker = gm.cokernel();
    check(gmCoker.free_rank == 0 && gmCoker.torsion.empty(),
          "X*(L(A0 x B0)) -> X*(P^K) is surjective");

    EquivariantMap push = pushforward_map(ws.serre(), ws.weil().lattice, ws.rctx());
    QuotientStructure pushCoker = push.cokernel();
    check(pushCoker.free_rank == 0 && pushCoker.torsion.empty(),
          "X*(S^K) -> X*(P^K) is surjective");

    Sublattice k1 = rest.map.kernel();
    std::vector<ZVec> k1Images;
    for (std::size_t i = 0; i < k1.rows().rows(); ++i)
        k1Images.push_back(ws.rho().apply(k1.rows().row(i)));
    Sublattice k1InSerre = span_sublattice(ws.serre(), k1Images);
    Sublattice pushKernel = push.kernel();
    check(k1InSerre == pushKernel,
          "Ker(X*(S^K) -> X*(P^K)) is the image of Ker(X*(L(A x B)) -> X*(L(A0 x "
          "B0)))");
    Sublattice inj = k1.intersect(ws.mt().kernel);
    check(inj.is_zero(), "the four-term sequence is exact on the left");
    if (ok)
        v.trace.push_back("P^K = S^K cap T^K at the level of character kernels");
    v.status = ok ? Status::Holds : Status::Fails;
    return v;
}

PrimeDensity good_prime_density(const FiniteGaloisGroup& gOmega,
                                const SubgroupHandle& dLambda) {
    PrimeDensity out;
    out.member = dLambda.contains(gOmega.iota());
    out.density = mpq_class(1, gOmega.order());
    out.density.canonicalize();
    return out;
}

Verdict check_prime_density(Workspace& ws) {
    Verdict v;
    v.check = "prime_density";
    if (!ws.scenario().has_reduction())
        return not_applicable(v.check, "no decomposition subgroup given");
    PrimeDensity pd = good_prime_density(ws.group(), ws.rctx().d);
    v.status = Status::Holds;
    v.trace.push_back(std::string("iota ") + (pd.member ? "lies" : "does not lie") +
                      " in the decomposition subgroup: ell is " +
                      (pd.member ? "" : "not ") + "in the good set S(A0)");
    v.trace.push_back("density of good primes: 1/" +
                      std::to_string(ws.group().order()));
    v.witnesses.emplace_back("member", ZVec{mpz_class(pd.member ? 1 : 0)});
    v.witnesses.emplace_back("density.denominator", ZVec{pd.density.get_den()});
    return v;
}

Verdict run_check(Workspace& ws, const std::string& name, ExoticPairData* pairData) {
    if (name == "tate_criterion") return check_tate_criterion(ws);
    if (name == "tate_from_hodge") return check_tate_from_hodge(ws);
    if (name == "exotic_pair") return check_exotic_pair(ws, pairData);
    if (name == "weil_family") return check_weil_type_family(ws);
    if (name == "finite_families") return classify_finite_families(ws);
    if (name == "serre_intersection") return check_serre_intersection(ws);
    if (name == "prime_density") return check_prime_density(ws);
    throw error("unknown check: " + name);
}

std::vector<std::string> known_checks() {
    return {"tate_criterion",  "tate_from_hodge",    "exotic_pair", "weil_family",
            "finite_families", "serre_intersection", "prime_density"};
}

}  // namespace cmlat
