#include "cmlat/selftest.hpp"

#include <cstdint>

#include "cmlat/report.hpp"
#include "cmlat/scenario.hpp"

namespace cmlat {

namespace {

// small deterministic generator for the matrix corpus
struct Lcg {
    std::uint64_t s;
    int next(int lo, int hi) {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return lo + static_cast<int>((s >> 33) % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

bool snf_corpus() {
    Lcg rng{20240913};
    for (int trial = 0; trial < 60; ++trial) {
        int r = rng.next(1, 5), c = rng.next(1, 5);
        ZMatrix m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.at(i, j) = rng.next(-9, 9);
        SmithResult sm = smith_normal_form(m);
        if (abs(det(sm.u)) != 1 || abs(det(sm.v)) != 1) return false;
        if (!(sm.u * m * sm.v == sm.d)) return false;
        for (std::size_t i = 0; i + 1 < sm.rank; ++i)
            if (sm.d.at(i + 1, i + 1) % sm.d.at(i, i) != 0) return false;
        HermiteResult h = hermite_normal_form(m);
        if (!(h.u * m == h.h)) return false;
        SmithResult idem = smith_normal_form(sm.d);
        if (!(idem.d == sm.d)) return false;
    }
    return true;
}

bool group_invariants() {
    for (const auto& preset : known_presets()) {
        FiniteGaloisGroup g = build_group(preset);
        for (const auto& h : all_subgroups(g)) {
            CosetSpace x(g, h);
            // the translation action is transitive: one orbit of size |G|/|H|
            std::vector<char> hit(x.size(), 0);
            for (int a = 0; a < g.order(); ++a) hit[x.act(a, x.base())] = 1;
            for (char c : hit)
                if (!c) return false;
            // iota fixes a coset iff iota lies in the subgroup
            bool fixes = false;
            for (int c = 0; c < x.size(); ++c)
                if (x.iota_act(c) == c) fixes = true;
            if (fixes != h.contains(g.iota())) return false;
        }
    }
    return true;
}

bool weil_lattice_invariants() {
    for (const auto& preset : known_presets()) {
        FiniteGaloisGroup g = build_group(preset);
        for (const auto& d : all_subgroups(g)) {
            WeilLatticeResult wl = weil_lattice(g, d);
            if (d.contains(g.iota())) {
                if (!wl.degenerate || wl.lattice.rank() != 1) return false;
                ReductionContext ctx(g, d);
                if (!fundamental_diagram(ctx).degenerate) return false;
            } else {
                if (wl.degenerate) return false;
                if (!(wl.first_injective && wl.composite_zero && wl.middle_exact &&
                      wl.last_surjective && wl.rank_identity))
                    return false;
                ReductionContext ctx(g, d);
                if (!fundamental_diagram(ctx).all_pass()) return false;
            }
            // enumeration: classes are unions of full orbits; invariants add up
            CosetSpace x(g, d);
            for (const auto& cls : enumerate_simple_classes(x)) {
                mpz_class multSum = 0;
                for (const auto& [s, m] : cls.invariants.slope_multiplicity)
                    multSum += m;
                if (multSum != 2 * cls.invariants.dim) return false;
                if (!cls.invariants.brauer_sum_integral) return false;
                if (static_cast<int>(cls.orbit.size()) != cls.invariants.deg_center)
                    return false;
                if (!cls.invariants.reduced_degree_ok) return false;
            }
        }
    }
    return true;
}

bool germ_group_law() {
    FiniteGaloisGroup g = build_group("C2xC4");
    SubgroupHandle d = SubgroupHandle::generated_by(g, {*g.index_of("it2")});
    CosetSpace x(g, d);
    auto classes = enumerate_simple_classes(x);
    for (const auto& a : classes)
        for (const auto& b : classes) {
            WeilGermSymbol s = a.orbit.front() + b.orbit.front();
            if (s.weight() != a.orbit.front().weight() + b.orbit.front().weight())
                return false;
        }
    return true;
}

bool fixture_reports_stable() {
    for (const auto& name : fixture_names()) {
        Scenario sc = make_fixture(name);
        std::string r1 = build_check_report(sc).render();
        std::string r2 = build_check_report(sc).render();
        if (r1 != r2) return false;
        auto m1 = parse_machine_section(r1);
        if (parse_machine_section(render_machine_section(m1)) != m1) return false;
    }
    return true;
}

bool fixture_kernel_routes() {
    for (const auto& name : fixture_names()) {
        Scenario sc = make_fixture(name);
        if (!sc.has_reduction()) continue;
        Workspace ws(sc);
        if (sc.name == "g6-inert") continue;  // reductions collide by design
        if (!ws.has_factors() && sc.germs.empty()) continue;
        std::vector<WeilGermSymbol> symbols;
        std::vector<std::string> names2;
        for (const auto& [n2, s] : ws.simple_germs()) {
            symbols.push_back(s);
            names2.push_back(n2);
        }
        if (symbols.empty()) continue;
        ReducedLefschetz red = reduced_lefschetz_from_germs(symbols, names2, ws.rctx());
        PKernel pk = p_kernel(red, ws.rctx());
        if (!pk.routes_agree || !pk.saturated) return false;
    }
    return true;
}

bool serre_and_correspondence() {
    for (const auto& preset : {"C2", "C6", "C2xC4"}) {
        FiniteGaloisGroup g = build_group(preset);
        CharacterLattice s = serre_lattice(g);
        if (s.rank() != static_cast<std::size_t>(g.order() / 2 + 1)) return false;
    }
    for (const auto& name : {"ell-ord", "g6-split"}) {
        Scenario sc = make_fixture(name);
        Workspace ws(sc);
        A1Correspondence a1 = a1_correspondence_check(ws.spec());
        if (!(a1.isomorphic && a1.weight_matches && a1.tate_matches &&
              a1.tw_is_minus_two))
            return false;
    }
    return true;
}

}  // namespace

std::vector<std::pair<std::string, bool>> run_selftest() {
    std::vector<std::pair<std::string, bool>> out;
    out.emplace_back("normal forms on the seeded matrix corpus", snf_corpus());
    out.emplace_back("coset actions and iota fixed points", group_invariants());
    out.emplace_back("weil lattice exactness and class invariants",
                     weil_lattice_invariants());
    out.emplace_back("germ group law", germ_group_law());
    out.emplace_back("serre rank and the triple/pair correspondence",
                     serre_and_correspondence());
    out.emplace_back("fixture kernel routes agree and are saturated",
                     fixture_kernel_routes());
    out.emplace_back("fixture reports byte-stable", fixture_reports_stable());
    return out;
}

}  // namespace cmlat
