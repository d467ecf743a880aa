#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cmlat/group.hpp"
#include "oracles.hpp"

using namespace cmlat;

TEST_CASE("presets validate: orders, central involution, labels") {
    auto c6 = build_group("C6", "t3");
    CHECK(c6.order() == 6);
    CHECK(c6.label(c6.iota()) == "t3");

    auto c2x4 = build_group("C2xC4");
    CHECK(c2x4.order() == 8);
    CHECK(c2x4.label(c2x4.iota()) == "i");

    auto s3 = build_group("S3xC2");
    CHECK(s3.order() == 12);
    for (int g = 0; g < s3.order(); ++g)
        CHECK(s3.mul(s3.iota(), g) == s3.mul(g, s3.iota()));

    CHECK_THROWS_AS(build_group("C6", "t2"), error);  // t2 is not the involution
    CHECK_THROWS_AS(build_group("D0"), error);
}

TEST_CASE("bad tables are rejected") {
    // non-associative "table"
    std::vector<std::vector<int>> bad{{0, 1, 2}, {1, 2, 1}, {2, 0, 1}};
    CHECK_THROWS_AS(FiniteGaloisGroup(bad, 1, {"e", "a", "b"}), error);
    // iota not an involution (order 3 element of C6)
    auto c6 = build_group("C6");
    std::vector<std::vector<int>> tab(6, std::vector<int>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) tab[i][j] = (i + j) % 6;
    CHECK_THROWS_AS(FiniteGaloisGroup(tab, 2, {}), error);
    // iota not central: S3 x C2 with iota = a transposition
    auto s3 = build_group("S3xC2");
    std::vector<std::vector<int>> stab(12, std::vector<int>(12));
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) stab[i][j] = s3.mul(i, j);
    CHECK_THROWS_AS(FiniteGaloisGroup(stab, *s3.index_of("s"), {}), error);
}

TEST_CASE("coset spaces: index-2 space of C6, full space, C2xC4/<it2>") {
    auto g = build_group("C6");
    CosetSpace half(g, SubgroupHandle(g, {0, 2, 4}));
    CHECK(half.size() == 2);
    CHECK(half.iota_act(0) == 1);
    CHECK(half.iota_act(1) == 0);

    CosetSpace full(g, SubgroupHandle::trivial(g));
    CHECK(full.size() == 6);

    auto g8 = build_group("C2xC4");
    CosetSpace x(g8, SubgroupHandle::generated_by(g8, {*g8.index_of("it2")}));
    REQUIRE(x.size() == 4);
    // hand enumeration of the cosets, ordered by minimal element
    auto idx = [&](const char* l) { return *g8.index_of(l); };
    CHECK(x.coset(0) == std::vector<int>{idx("e"), idx("it2")});
    CHECK(x.coset(1) == std::vector<int>{idx("t"), idx("it3")});
    CHECK(x.coset(2) == std::vector<int>{idx("t2"), idx("i")});
    CHECK(x.coset(3) == std::vector<int>{idx("t3"), idx("it")});
    CHECK(x.iota_free());  // iota fixes no coset
}

TEST_CASE("double cosets: abelian always commutes; S3xC2 transpositions do not") {
    auto g = build_group("C6");
    auto h = SubgroupHandle(g, {0, 2, 4});
    auto d = SubgroupHandle(g, {0, 3});
    auto r = double_coset_commute(h, d);
    CHECK(r.commutes);
    REQUIRE(r.product.has_value());
    CHECK(r.product->order() == 6);

    auto s3 = build_group("S3xC2");
    auto hs = SubgroupHandle::generated_by(s3, {*s3.index_of("s")});
    auto ds = SubgroupHandle::generated_by(s3, {*s3.index_of("sr")});
    auto [hd, dh] = oracle::product_sets(hs, ds);
    CHECK(hd != dh);  // the oracle enumerates both product sets
    CHECK(!double_coset_commute(hs, ds).commutes);

    auto triv = SubgroupHandle::trivial(s3);
    CHECK(double_coset_commute(triv, ds).commutes);
}

TEST_CASE("block partition on the split and totally split fixtures") {
    auto g = build_group("C6");
    auto he = SubgroupHandle::trivial(g);
    auto hq = SubgroupHandle(g, {0, 2, 4});
    auto sigmas = cosets_within(he, hq);
    REQUIRE(sigmas.size() == 3);

    SUBCASE("split prime: one block of size 1") {
        CosetSpace x(g, hq);
        BlockPartition bp = block_partition(sigmas, he, hq, x);
        CHECK(bp.m == 1);
        CHECK(bp.blocks[0] == std::vector<int>{0});
        CHECK(bp.jmap == std::vector<int>{0, 0, 0});
        CHECK(bp.block_size == 1);
        CHECK(x.size() == g.order() / hq.order());          // |X| = (G : D)
        CHECK(2 * bp.m * bp.block_size == x.size());        // 2m|X_j| = |X|
    }
    SUBCASE("totally split prime: m = n with identity jmap") {
        auto d = SubgroupHandle::trivial(g);
        CosetSpace x(g, d);
        BlockPartition bp = block_partition(sigmas, he, d, x);
        CHECK(bp.m == 3);
        CHECK(bp.jmap == std::vector<int>{0, 1, 2});
        CHECK(bp.block_size == 1);
        CHECK(2 * bp.m * bp.block_size == x.size());
    }
    SUBCASE("non-commuting pair is refused with a diagnostic") {
        auto s3 = build_group("S3xC2");
        auto hs = SubgroupHandle::generated_by(s3, {*s3.index_of("s")});
        auto ds = SubgroupHandle::generated_by(s3, {*s3.index_of("sr")});
        CosetSpace x(s3, ds);
        CHECK_THROWS_WITH_AS(block_partition({hs.members()}, hs, ds, x),
                             doctest::Contains("refused"), error);
    }
}

TEST_CASE("coset action is transitive and iota fixes a coset iff iota lies in D") {
    for (const auto& preset : known_presets()) {
        auto g = build_group(preset);
        for (const auto& h : all_subgroups(g)) {
            CosetSpace x(g, h);
            std::set<int> orbit;
            for (int a = 0; a < g.order(); ++a) orbit.insert(x.act(a, x.base()));
            CHECK(static_cast<int>(orbit.size()) == g.order() / h.order());
            bool fixed = false;
            for (int c = 0; c < x.size(); ++c)
                if (x.iota_act(c) == c) fixed = true;
            CHECK(fixed == h.contains(g.iota()));
        }
    }
}

TEST_CASE("subgroup handles: closure validation and generation") {
    auto g = build_group("C6");
    CHECK_THROWS_AS(SubgroupHandle(g, {0, 2}), error);   // not closed
    CHECK_THROWS_AS(SubgroupHandle(g, {2, 4}), error);   // no identity
    auto h = SubgroupHandle::generated_by(g, {2});
    CHECK(h.members() == std::vector<int>{0, 2, 4});
    CHECK(all_subgroups(g).size() == 4);  // C6: 1, C2, C3, C6
}
