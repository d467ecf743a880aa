#include "cmlat/scenario.hpp"

namespace cmlat {

namespace {

Scenario base_scenario(const std::string& name, const std::string& preset) {
    Scenario sc;
    sc.name = name;
    sc.preset = preset;
    sc.group = std::make_shared<FiniteGaloisGroup>(build_group(preset));
    return sc;
}

std::vector<int> indices(const FiniteGaloisGroup& g, std::initializer_list<const char*> ls) {
    std::vector<int> out;
    for (const char* l : ls) out.push_back(*g.index_of(l));
    return out;
}

Scenario g6(const std::string& name, const std::string& dname) {
    Scenario sc = base_scenario(name, "C6");
    const FiniteGaloisGroup& g = *sc.group;
    sc.subgroups.emplace("HE", SubgroupHandle::trivial(g));
    sc.subgroups.emplace("HQ", SubgroupHandle(g, indices(g, {"e", "t2", "t4"})));
    sc.subgroups.emplace("TRIV", SubgroupHandle::trivial(g));
    sc.subgroups.emplace("DI", SubgroupHandle(g, indices(g, {"e", "t3"})));
    // A: sextic E = K with Phi0 = {sigma0, iota sigma1, iota sigma2} = {e,t,t5}
    FactorSpec a{"A", "HE", {1, 1, 0, 0, 0, 1}, 1};
    // B: elliptic factor on Q with Phi = {rho0}
    FactorSpec b{"B", "HQ", {1, 0}, 1};
    sc.factors = {a, b};
    sc.d_name = dname;
    sc.facts.degree_e = 6;
    return sc;
}

}  // namespace

std::vector<std::string> fixture_names() {
    return {"g6-split", "g6-ord", "g6-inert", "ell-ord",
            "ell-ss",   "ell-prod", "g8-k3",  "s3-ao"};
}

Scenario make_fixture(const std::string& name) {
    if (name == "g6-split") {
        Scenario sc = g6(name, "HQ");
        sc.facts.p_splits_in_q = true;
        sc.facts.q_cyclotomic = true;
        sc.facts.determinant_one = true;
        sc.facts.exotic_hodge_algebraic = true;
        sc.checks = {"exotic_pair",   "tate_from_hodge",    "tate_criterion",
                     "weil_family",   "serre_intersection", "prime_density"};
        validate_scenario(sc);
        return sc;
    }
    if (name == "g6-ord") {
        Scenario sc = g6(name, "TRIV");
        sc.facts.p_splits_in_q = true;
        sc.facts.q_cyclotomic = true;
        sc.facts.determinant_one = true;
        sc.facts.exotic_hodge_algebraic = true;
        sc.checks = {"exotic_pair", "tate_from_hodge", "tate_criterion",
                     "serre_intersection", "prime_density"};
        validate_scenario(sc);
        return sc;
    }
    if (name == "g6-inert") {
        Scenario sc = g6(name, "DI");
        sc.facts.p_splits_in_q = false;
        sc.checks = {"exotic_pair", "prime_density"};
        validate_scenario(sc);
        return sc;
    }
    if (name == "ell-ord") {
        Scenario sc = base_scenario(name, "C2");
        const FiniteGaloisGroup& g = *sc.group;
        sc.subgroups.emplace("HE", SubgroupHandle::trivial(g));
        sc.factors = {FactorSpec{"A", "HE", {1, 0}, 1}};
        sc.d_name = "HE";
        sc.checks = {"tate_criterion", "tate_from_hodge", "finite_families",
                     "prime_density"};
        validate_scenario(sc);
        return sc;
    }
    if (name == "ell-ss") {
        Scenario sc = base_scenario(name, "C2");
        const FiniteGaloisGroup& g = *sc.group;
        sc.subgroups.emplace("D", SubgroupHandle::full(g));
        sc.d_name = "D";
        sc.germs = {GermInput{"SS", {1}}};
        sc.checks = {"finite_families", "prime_density"};
        validate_scenario(sc);
        return sc;
    }
    if (name == "ell-prod") {
        // ordinary x supersingular over the biquadratic group: both germs need
        // the same K, with a split prime for the ordinary factor and an inert
        // one for the supersingular factor
        Scenario sc = base_scenario(name, "C2xC2");
        const FiniteGaloisGroup& g = *sc.group;
        sc.subgroups.emplace("HC", SubgroupHandle(g, indices(g, {"e", "c"})));
        sc.subgroups.emplace("HIC", SubgroupHandle(g, indices(g, {"e", "ic"})));
        sc.factors = {FactorSpec{"ORD", "HC", {1, 0}, 1},
                      FactorSpec{"SS", "HIC", {1, 0}, 1}};
        sc.d_name = "HC";
        sc.checks = {"tate_criterion", "tate_from_hodge", "finite_families",
                     "prime_density"};
        validate_scenario(sc);
        return sc;
    }
    if (name == "g8-k3") {
        Scenario sc = base_scenario(name, "C2xC4");
        const FiniteGaloisGroup& g = *sc.group;
        sc.subgroups.emplace("D", SubgroupHandle(g, indices(g, {"e", "it2"})));
        sc.d_name = "D";
        sc.germs = {GermInput{"K3", {0, 1, 2, 1}}};
        sc.checks = {"finite_families", "prime_density"};
        validate_scenario(sc);
        return sc;
    }
    if (name == "s3-ao") {
        Scenario sc = base_scenario(name, "S3xC2");
        const FiniteGaloisGroup& g = *sc.group;
        sc.subgroups.emplace("D", SubgroupHandle(g, indices(g, {"e", "s"})));
        sc.d_name = "D";
        sc.germs = {GermInput{"AO", {1, 0, 0, 1, 2, 2}}};
        sc.checks = {"finite_families", "prime_density"};
        validate_scenario(sc);
        return sc;
    }
    throw error("unknown fixture: " + name + " (known: g6-split g6-ord g6-inert "
                "ell-ord ell-ss ell-prod g8-k3 s3-ao)");
}

}  // namespace cmlat
