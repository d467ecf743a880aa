/* Acceptance suite: the frozen desk-scale identities the engine must
 * reproduce exactly, one pass/fail line per criterion, each with a wall-time
 * budget.  Exits nonzero if any criterion fails. */

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cmlat/report.hpp"
#include "cmlat/scenario.hpp"

using namespace cmlat;

namespace {

ZVec vec(std::vector<long> v) {
    ZVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
    return out;
}

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<bool(std::string&)> run;
};

bool check_eq_class(const CharacterLattice& l, const ZVec& a, const ZVec& b) {
    return l.element_equal(a, b) || l.element_equal(a, negate(b));
}

}  // namespace

int main() {
    std::vector<Criterion> criteria;

    // 1. the psi relation space on the split fixture has rank 1 with the
    //    stated generator
    criteria.push_back({"psi relation space: rank 1, generator (1,1,1,-1,-2)", 1.0,
                        [](std::string& why) {
        ZMatrix rows(5, 6);
        rows.set_row(0, vec({1, 1, 0, 0, 0, 1}));  // psi_0
        rows.set_row(1, vec({0, 1, 1, 1, 0, 0}));  // psi_1
        rows.set_row(2, vec({0, 0, 0, 1, 1, 1}));  // psi_2
        rows.set_row(3, vec({1, 0, 1, 0, 1, 0}));  // psi
        rows.set_row(4, vec({0, 1, 0, 1, 0, 1}));  // iota.psi
        ZMatrix k = left_kernel(rows);
        if (k.rows() != 1) {
            why = "kernel rank " + std::to_string(k.rows());
            return false;
        }
        ZVec expect = vec({1, 1, 1, -1, -2});
        if (!(k.row(0) == expect || k.row(0) == negate(expect))) {
            why = "generator " + to_string(k.row(0));
            return false;
        }
        // the engine-side psi vectors agree with the frozen ones
        Scenario sc = make_fixture("g6-split");
        Workspace ws(sc);
        if (ws.rho().apply(vec({1, 0, 0, 0, 0, 0, 0, 0})) != rows.row(0)) {
            why = "engine psi_0 differs";
            return false;
        }
        return true;
    }});

    // 2. the kernel generator chi on the characteristic-zero side
    criteria.push_back({"chi generator: rank-1 kernel matching the display", 1.0,
                        [](std::string& why) {
        Scenario sc = make_fixture("g6-split");
        Workspace ws(sc);
        const MTKernel& mt = ws.mt();
        QuotientStructure qs = mt.kernel.structure();
        if (qs.free_rank != 1 || !qs.torsion.empty() || !mt.generator) {
            why = "kernel not free of rank 1";
            return false;
        }
        ZVec chi = vec({1, 0, 1, 0, 1, 0, -1, -2});
        if (!check_eq_class(ws.lef(), *mt.generator, chi)) {
            why = "generator " + to_string(*mt.generator);
            return false;
        }
        return true;
    }});

    // 3. chi0, the iso <chi> -> <chi0>, and the commuting ladder
    criteria.push_back({"chi0 generator and the commuting ladder", 1.0,
                        [](std::string& why) {
        Scenario sc = make_fixture("g6-split");
        Workspace ws(sc);
        ExoticPairData data;
        Verdict v = check_exotic_pair(ws, &data);
        if (v.status != Status::Holds || !data.machine_ok) {
            why = "pair analysis " + to_string(v.status);
            return false;
        }
        if (data.chi0_structural != vec({3, 0, -1, -2})) {
            why = "chi0 display " + to_string(data.chi0_structural);
            return false;
        }
        if (data.iso_sign == 0) {
            why = "collapse does not map <chi> onto <chi0>";
            return false;
        }
        return true;
    }});

    // 4. the partition combinatorics on both split fixtures
    criteria.push_back({"partition counts: m, block sizes, n/m fibres", 1.0,
                        [](std::string& why) {
        auto g = build_group("C6");
        auto he = SubgroupHandle::trivial(g);
        auto hq = SubgroupHandle(g, {0, 2, 4});
        auto sigmas = cosets_within(he, hq);
        {
            CosetSpace x(g, hq);
            BlockPartition bp = block_partition(sigmas, he, hq, x);
            if (bp.m != 1 || bp.blocks[0] != std::vector<int>{0}) {
                why = "split: m = " + std::to_string(bp.m);
                return false;
            }
            if (x.size() != g.order() / hq.order() ||
                bp.block_size != 1 ||
                2 * bp.m * bp.block_size != x.size()) {
                why = "split: counting identities";
                return false;
            }
        }
        {
            auto d = SubgroupHandle::trivial(g);
            CosetSpace x(g, d);
            BlockPartition bp = block_partition(sigmas, he, d, x);
            if (bp.m != 3) {
                why = "totally split: m = " + std::to_string(bp.m);
                return false;
            }
            for (int j : bp.jmap)
                if (j != bp.jmap[j]) {
                    why = "jmap not the identity pattern";
                    return false;
                }
            if (2 * bp.m * bp.block_size != x.size()) {
                why = "totally split: 2m|X_j| != |X|";
                return false;
            }
        }
        return true;
    }});

    // 5. reduction invariants of the split germ
    criteria.push_back({"reduction formula: slopes and class invariants", 1.0,
                        [](std::string& why) {
        auto g = build_group("C6");
        auto hq = SubgroupHandle(g, {0, 2, 4});
        ReductionContext ctx(g, hq);
        CosetSpace se(g, SubgroupHandle::trivial(g));
        CMTypeSpec a(se, {1, 1, 0, 0, 0, 1}, "A");
        WeilGermSymbol germ = reduce_cm_factor(a, ctx);
        if (germ.slope(0) != mpq_class(1, 3) || germ.slope(1) != mpq_class(2, 3)) {
            why = "slopes " + germ.str();
            return false;
        }
        GermInvariants inv = germ_invariants(germ);
        bool ok = inv.deg_center == 2 && inv.e == 3 && inv.dim == 3 &&
                  inv.primes.size() == 2 && inv.primes[0].inv == mpq_class(1, 3) &&
                  inv.primes[1].inv == mpq_class(2, 3) &&
                  inv.slope_multiplicity.at(mpq_class(1, 3)) == 3 &&
                  inv.slope_multiplicity.at(mpq_class(2, 3)) == 3 &&
                  2 * inv.dim == inv.e * inv.deg_center && inv.reduced_degree_ok;
        if (!ok) why = "invariants differ";
        return ok;
    }});

    // 6. the ladder certificates across every preset and subgroup
    criteria.push_back({"fundamental ladder: exactness on all presets, degenerate branch", 5.0,
                        [](std::string& why) {
        for (const auto& preset : known_presets()) {
            FiniteGaloisGroup g = build_group(preset);
            for (const auto& d : all_subgroups(g)) {
                ReductionContext ctx(g, d);
                FundamentalDiagram fd = fundamental_diagram(ctx);
                bool expectDegenerate = d.contains(g.iota());
                if (expectDegenerate != fd.degenerate) {
                    why = preset + ": degenerate flag wrong";
                    return false;
                }
                if (!expectDegenerate && !fd.all_pass()) {
                    why = preset + ": certificates fail";
                    return false;
                }
            }
        }
        auto c2 = build_group("C2");
        if (!fundamental_diagram(ReductionContext(c2, SubgroupHandle::full(c2)))
                 .degenerate) {
            why = "C2/D=C2 not reported degenerate";
            return false;
        }
        return true;
    }});

    // 7. the eigenspace statement: +-chi occur only at r = 2, once each
    criteria.push_back({"eigenspace multiplicities of +-chi over all r <= 4", 5.0,
                        [](std::string& why) {
        Scenario sc = make_fixture("g6-split");
        Workspace ws(sc);
        HodgeModel model(ws.spec(), {1, 1});
        const CharacterLattice& lef = model.lefschetz();
        ZVec chi = lef.canonical(vec({1, 0, 1, 0, 1, 0, -1, -2}));
        ZVec minus = lef.canonical(negate(vec({1, 0, 1, 0, 1, 0, -1, -2})));
        ZVec zero = lef.canonical(ZVec(lef.ambient_dim()));
        const MTKernel& mt = ws.mt();
        long scanned = 0;
        for (int r = 0; r <= 4; ++r) {
            int cp = eigenspace_dimension(model, chi, r);
            int cm = eigenspace_dimension(model, minus, r);
            int expect = (r == 2) ? 1 : 0;
            if (cp != expect || cm != expect) {
                why = "multiplicity at r = " + std::to_string(r);
                return false;
            }
            for (std::uint32_t mask : model.basis(2 * r)) {
                ++scanned;
                ZVec cls = model.character_class(mask, r);
                if (cls == zero || !mt.kernel.contains(cls)) continue;
                if (cls != chi && cls != minus) {
                    why = "an unexpected exotic character occurs";
                    return false;
                }
            }
        }
        if (scanned > 256) {  // exhaustive over <= 2^8 monomials
            why = "scan exceeded the stated bound";
            return false;
        }
        return true;
    }});

    // 8. the finite-field example families: P = L on all four fixtures
    criteria.push_back({"finite families: P(A0) = L(A0) on all four fixtures", 4.0,
                        [](std::string& why) {
        for (const char* name : {"ell-ord", "ell-prod", "g8-k3", "s3-ao"}) {
            Scenario sc = make_fixture(name);
            Workspace ws(sc);
            Verdict v = classify_finite_families(ws);
            if (v.status != Status::Holds) {
                why = std::string(name) + ": " + to_string(v.status);
                return false;
            }
            std::vector<WeilGermSymbol> symbols;
            std::vector<std::string> names;
            for (const auto& [n, s] : ws.simple_germs()) {
                symbols.push_back(s);
                names.push_back(n);
            }
            ReducedLefschetz red = reduced_lefschetz_from_germs(symbols, names, ws.rctx());
            PKernel pk = p_kernel(red, ws.rctx());
            if (pk.exotic_tate_exists) {
                why = std::string(name) + ": kernel nonzero";
                return false;
            }
        }
        return true;
    }});

    // 9. exterior-algebra combinatorics and the nondegeneracy induction
    criteria.push_back({"exterior combinatorics: factorials, disjointness, nondegeneracy", 10.0,
                        [](std::string& why) {
        auto c2 = build_group("C2");
        CosetSpace s(c2, SubgroupHandle::trivial(c2));
        AVCharZeroSpec espec({CMTypeSpec(s, {1, 0}, "E")});
        for (int gdim = 1; gdim <= 4; ++gdim) {
            HodgeModel m(espec, {gdim});
            mpz_class fact = 1;
            for (int k = 0; k <= gdim; ++k) {
                if (k > 0) fact *= k;
                for (const auto& [key, c] : lefschetz_power(m, k).terms)
                    if (c != mpq_class(fact)) {
                        why = "coefficient != k! at g = " + std::to_string(gdim);
                        return false;
                    }
            }
        }
        // disjointness: multiplying a full monomial by L kills it
        Scenario sc = make_fixture("g6-split");
        Workspace ws(sc);
        HodgeModel model(ws.spec(), {1, 1});
        std::uint32_t w1 = (1u << 0) | (1u << 2) | (1u << 4) | (1u << 6);
        std::uint32_t w2 = (1u << 1) | (1u << 3) | (1u << 5) | (1u << 7);
        if (!l_multiply(model, 1, w1).terms.empty()) {
            why = "non-disjoint subsets contribute";
            return false;
        }
        // nondegeneracy: the g = 3 polarization seed and the g = 4 seed with
        // the two Weil monomials
        auto g6 = build_group("C6");
        CosetSpace se(g6, SubgroupHandle::trivial(g6));
        AVCharZeroSpec aspec({CMTypeSpec(se, {1, 1, 0, 0, 0, 1}, "A")});
        HodgeModel m3(aspec, {1});
        if (!nondegeneracy_induction(m3, {}).pairing_nondegenerate) {
            why = "g = 3 polarization seed degenerate";
            return false;
        }
        if (!nondegeneracy_induction(model, {w1, w2}).pairing_nondegenerate) {
            why = "g = 4 Weil-augmented seed degenerate";
            return false;
        }
        return true;
    }});

    // 10. the verdict chain
    criteria.push_back({"verdict chain: family flags, inert refusal, criterion agreement", 2.0,
                        [](std::string& why) {
        {
            Scenario sc = make_fixture("g6-split");
            Workspace ws(sc);
            if (check_weil_type_family(ws).status != Status::Holds) {
                why = "family verdict with all flags";
                return false;
            }
        }
        for (int which = 0; which < 3; ++which) {
            Scenario sc = make_fixture("g6-split");
            if (which == 0) sc.facts.q_cyclotomic.reset();
            if (which == 1) sc.facts.determinant_one.reset();
            if (which == 2) sc.facts.p_splits_in_q.reset();
            Workspace ws(sc);
            if (check_weil_type_family(ws).status != Status::Conditional) {
                why = "flag removal did not degrade to conditional";
                return false;
            }
        }
        {
            Scenario sc = make_fixture("g6-inert");
            Workspace ws(sc);
            if (check_exotic_pair(ws).status != Status::NotApplicable) {
                why = "inert fixture not refused";
                return false;
            }
        }
        for (const char* name : {"g6-split", "g6-ord", "ell-ord", "ell-prod"}) {
            Scenario sc = make_fixture(name);
            sc.facts.exotic_hodge_algebraic = true;
            Workspace ws(sc);
            if (check_tate_criterion(ws).status != check_tate_from_hodge(ws).status) {
                why = std::string(name) + ": criterion and Hodge route disagree";
                return false;
            }
        }
        return true;
    }});

    // 11. the two kernel routes agree on every fixture
    criteria.push_back({"kernel routes: slope-sum criterion equals the lattice kernel", 2.0,
                        [](std::string& why) {
        for (const auto& name : fixture_names()) {
            Scenario sc = make_fixture(name);
            if (!sc.has_reduction()) continue;
            Workspace ws(sc);
            for (const auto& [gname, germ] : ws.simple_germs()) {
                ReducedLefschetz red =
                    reduced_lefschetz_from_germs({germ}, {gname}, ws.rctx());
                PKernel pk = p_kernel(red, ws.rctx());
                if (!pk.routes_agree || !pk.saturated) {
                    why = name + "/" + gname + ": routes differ";
                    return false;
                }
            }
        }
        return true;
    }});

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        std::string why;
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.run(why);
        } catch (const std::exception& e) {
            ok = false;
            why = e.what();
        }
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start).count();
        if (ok && secs > c.budget_seconds) {
            ok = false;
            why = "over the time budget";
        }
        std::printf("[%s] %02zu %s (%.3fs)%s%s\n", ok ? "PASS" : "FAIL", i + 1,
                    c.name.c_str(), secs, why.empty() ? "" : " -- ",
                    why.c_str());
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
