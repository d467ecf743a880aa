#include "cmlat/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cmlat {

namespace {

struct Entry {
    std::string key, value;
    int line;
    bool used = false;
};

struct Section {
    std::string name;
    int line;
    std::vector<Entry> entries;
};

[[noreturn]] void fail(int line, const std::string& msg) {
    throw error("scenario parse error (line " + std::to_string(line) + "): " + msg);
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::vector<Section> tokenize(const std::string& text) {
    std::vector<Section> sections;
    std::istringstream is(text);
    std::string raw;
    int lineNo = 0;
    while (std::getline(is, raw)) {
        ++lineNo;
        std::string line = raw;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(lineNo, "unterminated section header");
            sections.push_back(Section{trim(line.substr(1, line.size() - 2)), lineNo, {}});
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineNo, "expected 'key = value'");
        if (sections.empty()) fail(lineNo, "entry before any section header");
        sections.back().entries.push_back(
            Entry{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineNo});
    }
    return sections;
}

Entry* find_entry(Section& s, const std::string& key) {
    for (auto& e : s.entries)
        if (e.key == key) {
            e.used = true;
            return &e;
        }
    return nullptr;
}

void reject_unused(const Section& s) {
    for (const auto& e : s.entries)
        if (!e.used) fail(e.line, "unknown key '" + e.key + "' in section [" + s.name + "]");
}

bool parse_bool(const Entry& e) {
    if (e.value == "true") return true;
    if (e.value == "false") return false;
    fail(e.line, "expected true/false for '" + e.key + "'");
}

int element_index(const FiniteGaloisGroup& g, const std::string& label, int line) {
    auto idx = g.index_of(label);
    if (!idx) fail(line, "unknown group element '" + label + "'");
    return *idx;
}

}  // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& name) {
    Scenario sc;
    sc.name = name;
    std::vector<Section> sections = tokenize(text);

    // [group] first
    auto groupIt = std::find_if(sections.begin(), sections.end(),
                                [](const Section& s) { return s.name == "group"; });
    if (groupIt == sections.end()) throw error("scenario: missing [group] section");
    {
        Section& s = *groupIt;
        Entry* preset = find_entry(s, "preset");
        if (preset) {
            sc.preset = preset->value;
            Entry* iota = find_entry(s, "iota");
            sc.group = std::make_shared<FiniteGaloisGroup>(
                iota ? build_group(sc.preset, iota->value) : build_group(sc.preset));
        } else {
            Entry* elements = find_entry(s, "elements");
            Entry* iota = find_entry(s, "iota");
            if (!elements || !iota)
                fail(s.line, "[group] needs either 'preset' or 'elements' + rows + 'iota'");
            std::vector<std::string> labels = split_ws(elements->value);
            const int n = static_cast<int>(labels.size());
            std::vector<std::vector<int>> table(n, std::vector<int>(n, -1));
            std::map<std::string, int> idx;
            for (int i = 0; i < n; ++i) idx[labels[i]] = i;
            for (int i = 0; i < n; ++i) {
                Entry* row = find_entry(s, "row." + labels[i]);
                if (!row) fail(s.line, "missing 'row." + labels[i] + "'");
                std::vector<std::string> toks = split_ws(row->value);
                if (static_cast<int>(toks.size()) != n)
                    fail(row->line, "row must list " + std::to_string(n) + " elements");
                for (int j = 0; j < n; ++j) {
                    auto it = idx.find(toks[j]);
                    if (it == idx.end()) fail(row->line, "unknown element '" + toks[j] + "'");
                    table[i][j] = it->second;
                }
            }
            auto ii = idx.find(iota->value);
            if (ii == idx.end()) fail(iota->line, "unknown iota '" + iota->value + "'");
            sc.preset = "custom";
            sc.group = std::make_shared<FiniteGaloisGroup>(table, ii->second, labels);
        }
        reject_unused(s);
    }
    const FiniteGaloisGroup& g = *sc.group;

    for (Section& s : sections) {
        if (s.name == "group") continue;
        if (s.name.rfind("subgroup.", 0) == 0) {
            std::string name2 = s.name.substr(9);
            Entry* members = find_entry(s, "members");
            if (!members) fail(s.line, "[subgroup.*] needs 'members'");
            std::vector<int> m;
            for (const auto& tok : split_ws(members->value))
                m.push_back(element_index(g, tok, members->line));
            try {
                sc.subgroups.emplace(name2, SubgroupHandle(g, m));
            } catch (const error& e) {
                fail(members->line, e.what());
            }
            reject_unused(s);
        } else if (s.name.rfind("factor.", 0) == 0) {
            FactorSpec f;
            f.name = s.name.substr(7);
            Entry* space = find_entry(s, "space");
            Entry* phi = find_entry(s, "phi");
            if (!space || !phi) fail(s.line, "[factor.*] needs 'space' and 'phi'");
            f.space = space->value;
            if (!sc.subgroups.count(f.space))
                fail(space->line, "unknown subgroup '" + f.space + "'");
            CosetSpace cs(g, sc.subgroups.at(f.space));
            f.phi.assign(cs.size(), 0);
            for (const auto& tok : split_ws(phi->value)) {
                int e = element_index(g, tok, phi->line);
                f.phi[cs.coset_of(e)] = 1;
            }
            if (Entry* mult = find_entry(s, "multiplicity")) {
                f.multiplicity = std::stoi(mult->value);
                if (f.multiplicity < 1) fail(mult->line, "multiplicity must be >= 1");
            }
            sc.factors.push_back(std::move(f));
            reject_unused(s);
        } else if (s.name.rfind("germ.", 0) == 0) {
            GermInput gi;
            gi.name = s.name.substr(5);
            Entry* fv = find_entry(s, "f");
            if (!fv) fail(s.line, "[germ.*] needs 'f'");
            for (const auto& tok : split_ws(fv->value)) gi.f.emplace_back(tok);
            sc.germs.push_back(std::move(gi));
            reject_unused(s);
        } else if (s.name == "reduction") {
            Entry* d = find_entry(s, "d");
            if (!d) fail(s.line, "[reduction] needs 'd'");
            if (!sc.subgroups.count(d->value))
                fail(d->line, "unknown subgroup '" + d->value + "'");
            sc.d_name = d->value;
            reject_unused(s);
        } else if (s.name == "facts") {
            if (Entry* e = find_entry(s, "p_splits_in_q")) sc.facts.p_splits_in_q = parse_bool(*e);
            if (Entry* e = find_entry(s, "q_cyclotomic")) sc.facts.q_cyclotomic = parse_bool(*e);
            if (Entry* e = find_entry(s, "determinant_one"))
                sc.facts.determinant_one = parse_bool(*e);
            if (Entry* e = find_entry(s, "exotic_hodge_algebraic"))
                sc.facts.exotic_hodge_algebraic = parse_bool(*e);
            if (Entry* e = find_entry(s, "degree_e")) sc.facts.degree_e = std::stoi(e->value);
            reject_unused(s);
        } else if (s.name == "checks") {
            Entry* run = find_entry(s, "run");
            if (!run) fail(s.line, "[checks] needs 'run'");
            sc.checks = split_ws(run->value);
            reject_unused(s);
        } else {
            fail(s.line, "unknown section [" + s.name + "]");
        }
    }
    validate_scenario(sc);
    return sc;
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string base = path;
    auto slash = base.find_last_of('/');
    if (slash != std::string::npos) base = base.substr(slash + 1);
    return parse_scenario_text(buf.str(), base);
}

}  // namespace cmlat
