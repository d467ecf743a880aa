#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cmlat/zmatrix.hpp"
#include "oracles.hpp"

using namespace cmlat;

namespace {

ZMatrix mat(std::vector<std::vector<long>> rows) {
    ZMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    return m;
}

}  // namespace

TEST_CASE("smith normal form: identity is fixed") {
    ZMatrix id = ZMatrix::identity(3);
    SmithResult sm = smith_normal_form(id);
    CHECK(sm.d == id);
    CHECK(sm.rank == 3);
}

TEST_CASE("smith normal form: diag(2,3) -> diag(1,6), against brute-force search") {
    ZMatrix m = mat({{2, 0}, {0, 3}});
    auto expected = oracle::smith_2x2_bruteforce(m);
    REQUIRE(expected.has_value());
    CHECK(expected->first == 1);
    CHECK(expected->second == 6);
    SmithResult sm = smith_normal_form(m);
    CHECK(sm.d.at(0, 0) == expected->first);
    CHECK(sm.d.at(1, 1) == expected->second);
    CHECK(sm.u * m * sm.v == sm.d);
}

TEST_CASE("smith normal form: [[2,4],[6,8]] -> diag(2,4), gcd/det oracle") {
    ZMatrix m = mat({{2, 4}, {6, 8}});
    auto [d1, d2] = oracle::smith_2x2_gcd_det(m);
    CHECK(d1 == 2);
    CHECK(d2 == 4);
    SmithResult sm = smith_normal_form(m);
    CHECK(sm.d.at(0, 0) == d1);
    CHECK(sm.d.at(1, 1) == d2);
}

TEST_CASE("smith normal form: idempotent on its own output") {
    ZMatrix m = mat({{4, 6, 2}, {2, 8, 10}});
    SmithResult sm = smith_normal_form(m);
    SmithResult again = smith_normal_form(sm.d);
    CHECK(again.d == sm.d);
}

TEST_CASE("seeded corpus: U, V unimodular, U*M*V = D, divisibility chain, HNF") {
    std::uint64_t seed = 99991;
    auto next = [&](int lo, int hi) {
        seed = seed * 6364136223846793005ull + 1442695040888963407ull;
        return lo + static_cast<int>((seed >> 33) % static_cast<std::uint64_t>(hi - lo + 1));
    };
    for (int trial = 0; trial < 120; ++trial) {
        int r = next(1, 5), c = next(1, 5);
        ZMatrix m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.at(i, j) = next(-9, 9);

        SmithResult sm = smith_normal_form(m);
        CHECK(abs(det(sm.u)) == 1);
        CHECK(abs(det(sm.v)) == 1);
        CHECK(sm.u * m * sm.v == sm.d);
        CHECK(sm.rank == oracle::rational_rank(m));
        for (std::size_t i = 0; i + 1 < sm.rank; ++i) {
            CHECK(sm.d.at(i, i) > 0);
            CHECK(sm.d.at(i + 1, i + 1) % sm.d.at(i, i) == 0);
        }

        HermiteResult h = hermite_normal_form(m);
        CHECK(h.u * m == h.h);
        CHECK(abs(det(h.u)) == 1);
        CHECK(h.rank == sm.rank);
        // convention: positive pivots, entries above reduced into [0, pivot)
        for (std::size_t i = 0; i < h.rank; ++i) {
            std::size_t p = h.pivots[i];
            CHECK(h.h.at(i, p) > 0);
            for (std::size_t k = 0; k < i; ++k) {
                CHECK(h.h.at(k, p) >= 0);
                CHECK(h.h.at(k, p) < h.h.at(i, p));
            }
        }
    }
}

TEST_CASE("left kernel: zero map has full kernel, sum map has rank-1 kernel") {
    ZMatrix zero(2, 2);
    CHECK(left_kernel(zero).rows() == 2);

    // (x, y) -> x + y on Z^2
    ZMatrix sum = mat({{1}, {1}});
    ZMatrix k = left_kernel(sum);
    REQUIRE(k.rows() == 1);
    bool gen = (k.at(0, 0) == 1 && k.at(0, 1) == -1) ||
               (k.at(0, 0) == -1 && k.at(0, 1) == 1);
    CHECK(gen);
}

TEST_CASE("saturation: <(2,0)> saturates to <(1,0)> and differs as a subgroup") {
    ZMatrix b = mat({{2, 0}});
    ZMatrix sat = row_saturation(b);
    REQUIRE(sat.rows() == 1);
    CHECK(sat.at(0, 0) == 1);
    CHECK(sat.at(0, 1) == 0);
    CHECK(!(hnf_basis(b) == sat));
    CHECK(in_row_span({mpz_class(2), mpz_class(0)}, hnf_basis(b)));
    CHECK(!in_row_span({mpz_class(1), mpz_class(0)}, hnf_basis(b)));
}

TEST_CASE("solve_left and membership") {
    ZMatrix b = mat({{2, 1, 0}, {0, 3, 1}});
    ZVec y{mpz_class(4), mpz_class(8), mpz_class(2)};  // 2*r0 + 2*r1
    auto x = solve_left(b, y);
    REQUIRE(x.has_value());
    CHECK(mul_row(*x, b) == y);
    ZVec notIn{mpz_class(1), mpz_class(0), mpz_class(0)};
    CHECK(!solve_left(b, notIn).has_value());
}

TEST_CASE("quotient structure: Z^2/<(1,1)> is free of rank 1; Z/<2> is torsion Z/2") {
    QuotientStructure a =
        quotient_structure(ZMatrix::identity(2), mat({{1, 1}}));
    CHECK(a.free_rank == 1);
    CHECK(a.torsion.empty());

    QuotientStructure b = quotient_structure(ZMatrix::identity(1), mat({{2}}));
    CHECK(b.free_rank == 0);
    REQUIRE(b.torsion.size() == 1);
    CHECK(b.torsion[0] == 2);
}

TEST_CASE("unimodular inverse") {
    ZMatrix u = mat({{1, 2}, {0, 1}});
    ZMatrix inv = unimodular_inverse(u);
    CHECK(inv * u == ZMatrix::identity(2));
    CHECK_THROWS_AS(unimodular_inverse(mat({{2, 0}, {0, 1}})), error);
}

TEST_CASE("canonical representative: floor reduction at pivot columns") {
    // relations <(1,1,-1,-1)>: the rep of (3,0,-1,-2) has first coordinate in [0,1)
    ZMatrix rel = hnf_basis(mat({{1, 1, -1, -1}}));
    ZVec v{mpz_class(3), mpz_class(0), mpz_class(-1), mpz_class(-2)};
    ZVec red = reduce_mod_rows(v, rel);
    CHECK(red == ZVec{mpz_class(0), mpz_class(-3), mpz_class(2), mpz_class(1)});
}
