#ifndef CMLAT_TEST_ORACLES_HPP
#define CMLAT_TEST_ORACLES_HPP

/* Test-only oracles, independent of the library code paths they check:
 * brute-force normal forms, rational-rank elimination, direct set
 * enumerations.  Kept deliberately naive. */

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "cmlat/group.hpp"
#include "cmlat/zmatrix.hpp"

namespace oracle {

using cmlat::ZMatrix;
using cmlat::ZVec;

/* Smith form of a 2x2 integer matrix by exhaustive search over unimodular
 * U, V with entries in [-bound, bound]. */
inline std::optional<std::pair<mpz_class, mpz_class>> smith_2x2_bruteforce(
    const ZMatrix& m, int bound = 3) {
    auto det2 = [](long a, long b, long c, long d) { return a * d - b * c; };
    for (long a = -bound; a <= bound; ++a)
        for (long b = -bound; b <= bound; ++b)
            for (long c = -bound; c <= bound; ++c)
                for (long d = -bound; d <= bound; ++d) {
                    if (std::abs(det2(a, b, c, d)) != 1) continue;
                    for (long e = -bound; e <= bound; ++e)
                        for (long f = -bound; f <= bound; ++f)
                            for (long g = -bound; g <= bound; ++g)
                                for (long h = -bound; h <= bound; ++h) {
                                    if (std::abs(det2(e, f, g, h)) != 1) continue;
                                    // U*M*V with U = [[a,b],[c,d]], V = [[e,f],[g,h]]
                                    mpz_class p00 = a * m.at(0, 0) + b * m.at(1, 0);
                                    mpz_class p01 = a * m.at(0, 1) + b * m.at(1, 1);
                                    mpz_class p10 = c * m.at(0, 0) + d * m.at(1, 0);
                                    mpz_class p11 = c * m.at(0, 1) + d * m.at(1, 1);
                                    mpz_class q00 = p00 * e + p01 * g;
                                    mpz_class q01 = p00 * f + p01 * h;
                                    mpz_class q10 = p10 * e + p11 * g;
                                    mpz_class q11 = p10 * f + p11 * h;
                                    if (q01 != 0 || q10 != 0) continue;
                                    if (q00 < 0 || q11 < 0) continue;
                                    if (q00 == 0 && q11 != 0) continue;
                                    if (q00 != 0 && q11 % q00 != 0) continue;
                                    return std::make_pair(q00, q11);
                                }
                }
    return std::nullopt;
}

/* d1 = gcd of the entries, d2 = |det| / d1 (valid for rank-2 2x2). */
inline std::pair<mpz_class, mpz_class> smith_2x2_gcd_det(const ZMatrix& m) {
    mpz_class g = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.at(i, j).get_mpz_t());
    mpz_class d = abs(m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0));
    return {g, d / g};
}

/* Rank over Q by plain fraction elimination. */
inline std::size_t rational_rank(const ZMatrix& m) {
    std::vector<std::vector<mpq_class>> a(m.rows(), std::vector<mpq_class>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m.at(i, j);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t piv = rank;
        while (piv < m.rows() && a[piv][col] == 0) ++piv;
        if (piv == m.rows()) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == rank || a[i][col] == 0) continue;
            mpq_class f = a[i][col] / a[rank][col];
            for (std::size_t j = col; j < m.cols(); ++j) a[i][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

/* Left-kernel rank over Q (independent of the HNF-based integer kernel). */
inline std::size_t rational_left_kernel_rank(const ZMatrix& m) {
    return m.rows() - rational_rank(m);
}

/* Product sets H*D and D*H by direct enumeration. */
inline std::pair<std::set<int>, std::set<int>> product_sets(
    const cmlat::SubgroupHandle& h, const cmlat::SubgroupHandle& d) {
    const cmlat::FiniteGaloisGroup& g = h.parent();
    std::set<int> hd, dh;
    for (int a : h.members())
        for (int b : d.members()) {
            hd.insert(g.mul(a, b));
            dh.insert(g.mul(b, a));
        }
    return {hd, dh};
}

/* All effective weight-1 symbols on X by unconstrained enumeration of all
 * value tuples in [0, n0]^X filtered by f + iota.f = n0. */
inline std::set<std::vector<long>> weight_one_symbols(const cmlat::CosetSpace& x) {
    const int n0 = x.subgroup().order();
    std::set<std::vector<long>> out;
    std::vector<long> f(x.size(), 0);
    while (true) {
        bool ok = true;
        for (int w = 0; w < x.size(); ++w)
            if (f[w] + f[x.iota_act(w)] != n0) ok = false;
        if (ok) out.insert(f);
        int k = 0;
        while (k < x.size() && f[k] == n0) f[k++] = 0;
        if (k == x.size()) break;
        ++f[k];
    }
    return out;
}

/* Fibre data of the reduction formula computed from first principles: for a
 * factor space Sigma_E = G/H and a base prime with decomposition group D,
 * group the embeddings by the prime of E under sigma^{-1} w0 and count the
 * Phi members in each fibre. */
struct FibreCount {
    int phi = 0;
    int total = 0;
};
inline FibreCount reduction_fibre(const cmlat::CosetSpace& sigmaE,
                                  const std::vector<int>& phi,
                                  const cmlat::CosetSpace& x, int w) {
    // the prime of E under w is the H_E-orbit of w on X; an embedding sigma
    // lies in its fibre when sigma^{-1} w0 has the same H_E-orbit
    const cmlat::FiniteGaloisGroup& g = sigmaE.group();
    auto eOrbit = [&](int xc) {
        std::set<int> orb;
        for (int h : sigmaE.subgroup().members()) orb.insert(x.act(h, xc));
        return orb;
    };
    std::set<int> target = eOrbit(w);
    FibreCount out;
    for (int c = 0; c < sigmaE.size(); ++c) {
        int sigma = sigmaE.rep(c);
        int prime = x.coset_of(g.inv(sigma));  // sigma^{-1} w0
        if (eOrbit(prime) == target) {
            out.total += 1;
            out.phi += phi[c];
        }
    }
    return out;
}

/* Nondegeneracy of the monomial pairing on a closure set: the matrix of the
 * top-degree products over complementary-degree members, rank-checked. */
inline bool pairing_nondegenerate(int formCount, const std::set<std::uint32_t>& closure) {
    const std::uint32_t full = (formCount == 32) ? ~0u : ((1u << formCount) - 1);
    for (int deg = 0; deg <= formCount; ++deg) {
        std::vector<std::uint32_t> rows, cols;
        for (std::uint32_t s : closure) {
            int pc = __builtin_popcount(s);
            if (pc == deg) rows.push_back(s);
            if (pc == formCount - deg) cols.push_back(s);
        }
        if (rows.empty()) continue;
        ZMatrix m(rows.size(), std::max<std::size_t>(cols.size(), 1));
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j)
                m.at(i, j) = ((rows[i] & cols[j]) == 0 && (rows[i] | cols[j]) == full)
                                 ? 1
                                 : 0;
        if (rational_rank(m) != rows.size()) return false;
    }
    return true;
}

}  // namespace oracle

#endif
