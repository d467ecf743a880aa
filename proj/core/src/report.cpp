#include "cmlat/report.hpp"

#include <sstream>

namespace cmlat {

namespace {

int status_code(Status s) {
    switch (s) {
        case Status::Holds: return 0;
        case Status::Fails: return 1;
        case Status::Conditional: return 2;
        case Status::Inconclusive: return 3;
        case Status::NotApplicable: return 4;
    }
    return -1;
}

}  // namespace

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

std::string render_machine_section(const std::vector<MachineLine>& lines) {
    std::ostringstream os;
    os << "== machine ==\n";
    for (const auto& l : lines) {
        os << l.key << " =";
        for (const auto& v : l.values) os << ' ' << v.get_str();
        os << '\n';
    }
    os << "== end ==\n";
    return os.str();
}

std::string ScenarioReport::render() const {
    std::ostringstream os;
    for (const auto& line : human) os << line << '\n';
    os << render_machine_section(machine);
    return os.str();
}

std::vector<MachineLine> parse_machine_section(const std::string& reportText) {
    std::istringstream is(reportText);
    std::string line;
    bool inside = false;
    std::vector<MachineLine> out;
    while (std::getline(is, line)) {
        if (line == "== machine ==") {
            inside = true;
            continue;
        }
        if (line == "== end ==") {
            if (!inside) throw error("machine section: end marker before start");
            return out;
        }
        if (!inside) continue;
        auto eq = line.find(" =");
        if (eq == std::string::npos) throw error("machine section: malformed line: " + line);
        MachineLine ml;
        ml.key = line.substr(0, eq);
        std::istringstream vs(line.substr(eq + 2));
        std::string tok;
        while (vs >> tok) ml.values.emplace_back(tok);
        out.push_back(std::move(ml));
    }
    throw error("machine section: missing markers");
}

bool report_has_failure(const ScenarioReport& r) {
    for (const auto& l : r.machine)
        if (l.key.size() > 7 && l.key.substr(l.key.size() - 7) == ".status" &&
            l.values.size() == 1 && l.values[0] == 1)
            return true;
    return false;
}

ScenarioReport build_check_report(const Scenario& sc) {
    ScenarioReport rep;
    Workspace ws(sc);
    rep.human.push_back("cmlat scenario report: " + sc.name);
    rep.human.push_back("group: " + sc.preset + " (order " +
                        std::to_string(sc.group->order()) + "), iota = " +
                        sc.group->label(sc.group->iota()));
    if (sc.has_reduction()) {
        std::string members;
        for (int m : sc.subgroup(sc.d_name).members())
            members += (members.empty() ? "" : " ") + sc.group->label(m);
        rep.human.push_back("reduction: D = {" + members + "}, |X| = " +
                            std::to_string(ws.rctx().x.size()) + ", n0 = " +
                            std::to_string(ws.rctx().n0()));
    }
    rep.machine.push_back({"format", {mpz_class(1)}});
    rep.machine.push_back({"group.order", {mpz_class(sc.group->order())}});
    rep.machine.push_back({"group.iota", {mpz_class(sc.group->iota())}});
    rep.machine.push_back({"checks.count", {mpz_class(sc.checks.size())}});

    for (const auto& name : sc.checks) {
        Verdict v = run_check(ws, name);
        rep.human.push_back("");
        rep.human.push_back("check " + name + ": " + to_string(v.status));
        for (const auto& t : v.trace) rep.human.push_back("  " + t);
        rep.machine.push_back(
            {"check." + name + ".status", {mpz_class(status_code(v.status))}});
        for (const auto& [k, vec] : v.witnesses)
            rep.machine.push_back({"check." + name + "." + k, vec});
    }
    return rep;
}

ScenarioReport build_atlas_report(const FiniteGaloisGroup& g, const SubgroupHandle& d,
                                  const std::string& groupName,
                                  const std::string& dName) {
    ScenarioReport rep;
    rep.human.push_back("cmlat atlas: simple isogeny classes over F split by K");
    rep.human.push_back("group: " + groupName + " (order " + std::to_string(g.order()) +
                        "), D = " + dName + " (order " + std::to_string(d.order()) + ")");
    CosetSpace x(g, d);
    WeilLatticeResult wl = weil_lattice(g, d);
    rep.human.push_back("prime set |X| = " + std::to_string(g.order() / d.order()) +
                        ", n0 = " + std::to_string(d.order()) +
                        (wl.degenerate ? ", degenerate (iota in D: only the p^{m/2} "
                                         "family; no prime of F splits)"
                                       : ""));
    rep.human.push_back("X*(P^K) rank " + std::to_string(wl.lattice.rank()));

    auto classes = enumerate_simple_classes(x);
    rep.human.push_back("classes: " + std::to_string(classes.size()));
    rep.machine.push_back({"format", {mpz_class(1)}});
    rep.machine.push_back({"group.order", {mpz_class(g.order())}});
    rep.machine.push_back({"d.order", {mpz_class(d.order())}});
    rep.machine.push_back({"weil.rank", {mpz_class(wl.lattice.rank())}});
    rep.machine.push_back({"weil.degenerate", {mpz_class(wl.degenerate ? 1 : 0)}});
    rep.machine.push_back({"classes.count", {mpz_class(classes.size())}});

    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& cls = classes[i];
        const auto& inv = cls.invariants;
        std::ostringstream os;
        os << "  class " << i << ": f = " << cls.orbit.front().str() << ", [Q[pi]:Q] = "
           << inv.deg_center << ", e = " << inv.e.get_str() << ", dim = "
           << inv.dim.get_str();
        if (inv.supersingular) os << ", supersingular";
        rep.human.push_back(os.str());
        std::ostringstream os2;
        os2 << "    inv =";
        for (const auto& p : inv.primes)
            os2 << ' ' << p.inv.get_num().get_str() << '/' << p.inv.get_den().get_str()
                << "(deg " << p.local_degree << ")";
        os2 << "; slopes";
        for (const auto& [s, m] : inv.slope_multiplicity)
            os2 << ' ' << s.get_num().get_str() << '/' << s.get_den().get_str() << ":"
                << m.get_str();
        rep.human.push_back(os2.str());
        for (const auto& diag : dieudonne_degree_check(inv))
            rep.human.push_back("    dieudonne: " + diag);

        std::string pre = "class." + std::to_string(i);
        rep.machine.push_back({pre + ".f", ZVec(cls.orbit.front().f())});
        rep.machine.push_back(
            {pre + ".orbit_size", {mpz_class(cls.orbit.size())}});
        rep.machine.push_back({pre + ".deg_center", {mpz_class(inv.deg_center)}});
        rep.machine.push_back({pre + ".e", {inv.e}});
        rep.machine.push_back({pre + ".dim", {inv.dim}});
        ZVec invFlat;
        for (const auto& p : inv.primes) {
            invFlat.push_back(p.inv.get_num());
            invFlat.push_back(p.inv.get_den());
            invFlat.push_back(p.local_degree);
        }
        rep.machine.push_back({pre + ".inv_num_den_deg", invFlat});
        ZVec mults;
        for (const auto& [s, m] : inv.slope_multiplicity) {
            mults.push_back(s.get_num());
            mults.push_back(s.get_den());
            mults.push_back(m);
        }
        rep.machine.push_back({pre + ".slope_num_den_mult", mults});
    }
    return rep;
}

}  // namespace cmlat
