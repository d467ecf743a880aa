#include "cmlat/hodge.hpp"

#include <algorithm>
#include <functional>

namespace cmlat {

int HodgeModel::popcount(std::uint32_t m) { return __builtin_popcount(m); }

HodgeModel::HodgeModel(const AVCharZeroSpec& spec, std::vector<int> replication)
    : spec_(&spec) {
    if (replication.size() != spec.factors.size())
        throw error("hodge model: one replication count per factor");
    lef_ = std::make_shared<CharacterLattice>(lefschetz_lattice(spec));
    std::size_t ambientOff = 0;
    std::vector<std::vector<int>> idxOf;  // per (factor, copy): coset -> index
    for (std::size_t fi = 0; fi < spec.factors.size(); ++fi) {
        const auto& fac = spec.factors[fi];
        if (replication[fi] < 1) throw error("hodge model: replication must be >= 1");
        for (int cp = 0; cp < replication[fi]; ++cp) {
            std::vector<int> ids(fac.space.size());
            for (int c = 0; c < fac.space.size(); ++c) {
                ids[c] = static_cast<int>(inPhi_.size());
                inPhi_.push_back(static_cast<char>(fac.phi[c]));
                baseCoord_.push_back(static_cast<int>(ambientOff) + c);
            }
            idxOf.push_back(std::move(ids));
        }
        ambientOff += fac.space.size();
    }
    if (inPhi_.size() > 32) throw error("hodge model: more than 32 one-forms");
    iotaOf_.assign(inPhi_.size(), -1);
    std::size_t block = 0;
    for (std::size_t fi = 0; fi < spec.factors.size(); ++fi) {
        const auto& fac = spec.factors[fi];
        for (int cp = 0; cp < replication[fi]; ++cp, ++block)
            for (int c = 0; c < fac.space.size(); ++c)
                iotaOf_[idxOf[block][c]] = idxOf[block][fac.space.iota_act(c)];
    }
    gDim_ = static_cast<int>(inPhi_.size()) / 2;
}

HodgeModel HodgeModel::for_spec(const AVCharZeroSpec& spec) {
    return HodgeModel(spec, std::vector<int>(spec.factors.size(), 1));
}

ZVec HodgeModel::character_class(std::uint32_t mask, int twist) const {
    ZVec v(lef_->ambient_dim());
    for (int i = 0; i < form_count(); ++i)
        if (mask & (1u << i)) v[baseCoord_[i]] += 1;
    const ZVec& t = *lef_->tate_element();
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += twist * t[j];
    return lef_->canonical(v);
}

std::pair<mpz_class, mpz_class> HodgeModel::hodge_type(std::uint32_t mask,
                                                       int twist) const {
    int p = 0, q = 0;
    for (int i = 0; i < form_count(); ++i)
        if (mask & (1u << i)) (inPhi_[i] ? p : q) += 1;
    return {mpz_class(p - twist), mpz_class(q - twist)};
}

std::vector<std::uint32_t> HodgeModel::basis(int degree) const {
    std::vector<std::uint32_t> out;
    const std::uint32_t all = form_count() == 32 ? ~0u : ((1u << form_count()) - 1);
    for (std::uint32_t m = 0;; ++m) {
        if (popcount(m & all) == degree && (m & ~all) == 0) out.push_back(m);
        if (m == all) break;
    }
    return out;
}

SymbolicClass& SymbolicClass::add(std::uint32_t mask, int twist, const mpq_class& c) {
    auto key = std::make_pair(mask, twist);
    auto it = terms.find(key);
    if (it == terms.end()) {
        if (c != 0) terms.emplace(key, c);
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
    return *this;
}

SymbolicClass multiply(const SymbolicClass& a, const SymbolicClass& b) {
    SymbolicClass out;
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) {
            if (ka.first & kb.first) continue;  // common one-form: product is zero
            out.add(ka.first | kb.first, ka.second + kb.second, ca * cb);
        }
    return out;
}

namespace {

mpz_class factorial(int k) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
    return f;
}

/* enumerate subsets M of the Phi-side indices avoiding `avoid`, |M| = k */
void phi_subsets(const HodgeModel& model, int k, std::uint32_t avoid,
                 const std::function<void(std::uint32_t)>& emit) {
    std::vector<int> phiIdx;
    for (int i = 0; i < model.form_count(); ++i)
        if (model.in_phi(i) && !(avoid & (1u << i)) && !(avoid & (1u << model.iota_of(i))))
            phiIdx.push_back(i);
    std::vector<int> pick;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (static_cast<int>(pick.size()) == k) {
            std::uint32_t m = 0;
            for (int i : pick) m |= (1u << i) | (1u << model.iota_of(i));
            emit(m);
            return;
        }
        for (std::size_t i = from; i < phiIdx.size(); ++i) {
            pick.push_back(phiIdx[i]);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
}

}  // namespace

SymbolicClass lefschetz_power(const HodgeModel& model, int k) {
    if (k < 0 || k > model.g()) throw error("lefschetz power: k outside 0..g");
    SymbolicClass out;
    mpq_class coeff(factorial(k));
    phi_subsets(model, k, 0, [&](std::uint32_t m) { out.add(m, 0, coeff); });
    return out;
}

SymbolicClass l_multiply(const HodgeModel& model, int k, std::uint32_t mask, int twist) {
    if (k < 0) throw error("l_multiply: negative power");
    SymbolicClass out;
    mpq_class coeff(factorial(k));
    phi_subsets(model, k, mask, [&](std::uint32_t m) { out.add(mask | m, twist, coeff); });
    return out;
}

int eigenspace_dimension(const HodgeModel& model, const ZVec& target, int r,
                         const EquivariantMap* collapse) {
    int count = 0;
    for (std::uint32_t mask : model.basis(2 * r)) {
        ZVec cls = model.character_class(mask, r);
        if (collapse) {
            ZVec pushed = collapse->apply(cls);
            if (collapse->dst().element_equal(pushed, target)) ++count;
        } else if (model.lefschetz().element_equal(cls, target)) {
            ++count;
        }
    }
    return count;
}

NondegeneracyResult nondegeneracy_induction(const HodgeModel& model,
                                            const std::set<std::uint32_t>& seed) {
    NondegeneracyResult res;
    auto iotaMask = [&](std::uint32_t m) {
        std::uint32_t out = 0;
        for (int i = 0; i < model.form_count(); ++i)
            if (m & (1u << i)) out |= 1u << model.iota_of(i);
        return out;
    };
    for (std::uint32_t s : seed)
        if (!seed.count(iotaMask(s)))
            throw error("nondegeneracy: seed is not iota-stable");
    res.seed_iota_stable = true;

    res.closure = seed;
    // all omega_{M, iota M} are algebraic (powers of the polarization class)
    for (int k = 0; k <= model.g(); ++k)
        phi_subsets(model, k, 0, [&](std::uint32_t m) { res.closure.insert(m); });

    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::uint32_t> cur(res.closure.begin(), res.closure.end());
        for (std::uint32_t s : cur) {
            // strip the symmetric part M = I cap iota(J)
            std::uint32_t sym = 0;
            for (int i = 0; i < model.form_count(); ++i)
                if ((s & (1u << i)) && (s & (1u << model.iota_of(i)))) sym |= 1u << i;
            if (sym && res.closure.insert(s & ~sym).second) grew = true;
            if (res.closure.insert(iotaMask(s)).second) grew = true;
        }
    }
    res.closure_stable = true;

    const std::uint32_t full =
        model.form_count() == 32 ? ~0u : ((1u << model.form_count()) - 1);
    res.pairing_nondegenerate = true;
    for (std::uint32_t s : res.closure)
        if (!res.closure.count(full & ~s)) res.pairing_nondegenerate = false;
    return res;
}

}  // namespace cmlat
