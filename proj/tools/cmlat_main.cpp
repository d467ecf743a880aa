#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cmlat/report.hpp"
#include "cmlat/scenario.hpp"
#include "cmlat/selftest.hpp"

namespace {

/* atlas subgroup argument: either a named standard subgroup of the preset or
 * a comma-separated member list like e,t2,t4 */
cmlat::SubgroupHandle resolve_subgroup(const cmlat::FiniteGaloisGroup& g,
                                       const std::string& spec) {
    using cmlat::SubgroupHandle;
    if (spec == "TRIV" || spec == "triv" || spec == "1")
        return SubgroupHandle::trivial(g);
    if (spec == "G" || spec == "full") return SubgroupHandle::full(g);
    if (spec == "HQ" || spec == "hq") {
        // index-2 subgroup not containing iota, when unique
        std::vector<SubgroupHandle> found;
        for (const auto& h : cmlat::all_subgroups(g))
            if (h.order() * 2 == g.order() && !h.contains(g.iota())) found.push_back(h);
        if (found.size() != 1)
            throw cmlat::error("HQ is not unique for this group; give the member list");
        return found.front();
    }
    std::vector<int> members;
    std::string tok;
    for (char ch : spec + ",") {
        if (ch == ',') {
            if (!tok.empty()) {
                auto idx = g.index_of(tok);
                if (!idx) throw cmlat::error("unknown group element '" + tok + "'");
                members.push_back(*idx);
                tok.clear();
            }
        } else {
            tok.push_back(ch);
        }
    }
    return SubgroupHandle(g, members);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cmlat: exact character-lattice computations for CM abelian "
                 "varieties and their reductions"};
    app.require_subcommand(1);

    std::string checkPath;
    auto* cmdCheck = app.add_subcommand("check", "run the checks requested by a scenario file");
    cmdCheck->add_option("file", checkPath, "scenario file")->required();

    std::string atlasGroup, atlasD;
    auto* cmdAtlas = app.add_subcommand("atlas", "census of simple isogeny classes over (K, D)");
    cmdAtlas->add_option("group", atlasGroup, "group preset (C2, C4, C6, C2xC2, C2xC4, S3xC2)")
        ->required();
    cmdAtlas->add_option("D", atlasD, "decomposition subgroup: TRIV, G, HQ, or members e,t2,t4")
        ->required();

    std::string exampleName;
    auto* cmdExample = app.add_subcommand("example", "run a built-in fixture end to end");
    cmdExample->add_option("name", exampleName, "fixture name (see `example list`)")->required();

    app.add_subcommand("selftest", "run the structural invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmdCheck->parsed()) {
            cmlat::Scenario sc = cmlat::parse_scenario_file(checkPath);
            cmlat::ScenarioReport rep = cmlat::build_check_report(sc);
            std::cout << rep.render();
            return cmlat::report_has_failure(rep) ? 1 : 0;
        }
        if (cmdAtlas->parsed()) {
            cmlat::FiniteGaloisGroup g = cmlat::build_group(atlasGroup);
            cmlat::SubgroupHandle d = resolve_subgroup(g, atlasD);
            std::cout << cmlat::build_atlas_report(g, d, atlasGroup, atlasD).render();
            return 0;
        }
        if (cmdExample->parsed()) {
            if (exampleName == "list") {
                for (const auto& n : cmlat::fixture_names()) std::cout << n << '\n';
                return 0;
            }
            cmlat::Scenario sc = cmlat::make_fixture(exampleName);
            cmlat::ScenarioReport rep = cmlat::build_check_report(sc);
            std::cout << rep.render();
            return cmlat::report_has_failure(rep) ? 1 : 0;
        }
        // selftest
        auto results = cmlat::run_selftest();
        bool allOk = true;
        for (const auto& [name, ok] : results) {
            std::cout << (ok ? "[ ok ] " : "[FAIL] ") << name << '\n';
            allOk = allOk && ok;
        }
        return allOk ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
